#include "commitsched/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <numeric>
#include <queue>

namespace commitsched {

bool edf_feasible(const std::vector<Job>& jobs) {
    if (jobs.empty()) return true;

    std::vector<std::size_t> order(jobs.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (jobs[a].release != jobs[b].release) return jobs[a].release < jobs[b].release;
        return jobs[a].id < jobs[b].id;
    });

    // (deadline, id, index) min-heap of released unfinished jobs
    using Entry = std::tuple<Tick, JobId, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> ready;
    std::vector<Tick> remaining(jobs.size());
    for (std::size_t i = 0; i < jobs.size(); ++i) remaining[i] = jobs[i].proc;

    std::size_t next = 0;
    Tick now = jobs[order[0]].release;
    while (next < order.size() || !ready.empty()) {
        while (next < order.size() && jobs[order[next]].release <= now) {
            const std::size_t idx = order[next++];
            ready.emplace(jobs[idx].deadline, jobs[idx].id, idx);
        }
        if (ready.empty()) {
            now = jobs[order[next]].release;
            continue;
        }
        const auto [deadline, id, idx] = ready.top();
        ready.pop();
        if (now + remaining[idx] > deadline) return false; // earliest deadline already lost
        const Tick horizon =
            next < order.size() ? jobs[order[next]].release : std::numeric_limits<Tick>::max();
        const Tick stop = std::min(now + remaining[idx], horizon);
        remaining[idx] -= stop - now;
        now = stop;
        if (remaining[idx] > 0) ready.emplace(deadline, id, idx);
    }
    return true;
}

bool interval_load_feasible(const std::vector<Job>& jobs) {
    for (const Job& lo : jobs) {
        for (const Job& hi : jobs) {
            const Tick a = lo.release;
            const Tick b = hi.deadline;
            if (a >= b) continue;
            Tick demand = 0;
            for (const Job& job : jobs)
                if (job.release >= a && job.deadline <= b) demand += job.proc;
            if (demand > b - a) return false;
        }
    }
    return true;
}

namespace {

class SubsetSearch {
public:
    SubsetSearch(const std::vector<Job>& jobs, bool cross_validate)
        : jobs_(jobs), cross_validate_(cross_validate) {
        suffix_value_.assign(jobs_.size() + 1, 0);
        for (std::size_t i = jobs_.size(); i-- > 0;)
            suffix_value_[i] = suffix_value_[i + 1] + jobs_[i].proc;
    }

    OracleResult run() {
        picked_.reserve(jobs_.size());
        explore(0, 0);
        OracleResult result;
        result.value = best_value_;
        result.witness = best_witness_;
        return result;
    }

private:
    bool feasible(const std::vector<Job>& subset) const {
        const bool by_edf = edf_feasible(subset);
        if (cross_validate_) {
            const bool by_load = interval_load_feasible(subset);
            assert(by_edf == by_load && "feasibility routes disagree");
            if (by_edf != by_load)
                fail(Errc::PreconditionViolated, "feasibility oracles disagree on a subset");
        }
        return by_edf;
    }

    // Include-first depth-first search in id order: the first subset found
    // with a given value is the lexicographically smallest, so strict
    // improvement keeps the tie rule. Subsets of feasible sets are
    // feasible, hence an infeasible partial set prunes its whole branch.
    void explore(std::size_t idx, Tick value) {
        if (value + suffix_value_[idx] <= best_value_) return;
        if (idx == jobs_.size()) {
            best_value_ = value;
            best_witness_.assign(picked_.begin(), picked_.end());
            return;
        }
        picked_.push_back(jobs_[idx].id);
        scratch_.push_back(jobs_[idx]);
        if (feasible(scratch_)) explore(idx + 1, value + jobs_[idx].proc);
        picked_.pop_back();
        scratch_.pop_back();
        explore(idx + 1, value); // exclude
    }

    const std::vector<Job>& jobs_;
    const bool cross_validate_;
    std::vector<Tick> suffix_value_;
    std::vector<JobId> picked_;
    std::vector<Job> scratch_;
    Tick best_value_ = -1;
    std::vector<JobId> best_witness_;
};

} // namespace

OracleResult offline_optimal(const Instance& instance, std::size_t limit, bool cross_validate) {
    if (instance.size() > limit)
        fail(Errc::InstanceTooLarge, "instance has " + std::to_string(instance.size()) +
                                         " jobs, oracle limit is " + std::to_string(limit));

    std::vector<Job> jobs = instance.jobs();
    std::sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) { return a.id < b.id; });

    SubsetSearch search(jobs, cross_validate);
    return search.run();
}

} // namespace commitsched
