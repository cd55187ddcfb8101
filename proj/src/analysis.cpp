#include "commitsched/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "commitsched/baselines.hpp"
#include "commitsched/oracle.hpp"

namespace commitsched {

std::vector<BusyInterval> busy_intervals(const SimulationTrace& trace) {
    std::vector<BusyInterval> intervals;
    Tick prev_end = std::numeric_limits<Tick>::min();
    for (const TraceEvent& event : trace.events) {
        if (event.kind != EventKind::Execute) continue;
        if (event.start >= event.end || event.start < prev_end)
            fail(Errc::MalformedTrace, "execution events out of order or overlapping");
        if (!intervals.empty() && intervals.back().end == event.start) {
            intervals.back().end = event.end;
        } else {
            intervals.push_back(BusyInterval{event.start, event.end});
        }
        prev_end = event.end;
    }
    return intervals;
}

namespace {

struct JobTraceInfo {
    enum class Mode { None, Append, Contention, Declined };
    Mode mode = Mode::None;
    bool released = false;
    bool completed = false;
    bool failed = false;
    Tick shortage = 0;
    Tick executed = 0;
    Tick first_exec = std::numeric_limits<Tick>::max();
    Tick last_exec = std::numeric_limits<Tick>::min();
};

std::map<JobId, JobTraceInfo> digest_trace(const SimulationTrace& trace) {
    std::map<JobId, JobTraceInfo> info;
    for (const TraceEvent& event : trace.events) {
        switch (event.kind) {
        case EventKind::Release:
            if (info[event.job].released)
                fail(Errc::MalformedTrace, "job released twice");
            info[event.job].released = true;
            break;
        case EventKind::AcceptAppend:
        case EventKind::AcceptContention:
        case EventKind::Decline: {
            JobTraceInfo& j = info[event.job];
            if (j.mode != JobTraceInfo::Mode::None)
                fail(Errc::MalformedTrace, "job decided twice");
            if (event.kind == EventKind::AcceptAppend) {
                j.mode = JobTraceInfo::Mode::Append;
            } else {
                if (!event.quote.has_value())
                    fail(Errc::NotADscTrace,
                         "decision event lacks profit metadata; not a threshold-policy trace");
                j.mode = event.kind == EventKind::AcceptContention ? JobTraceInfo::Mode::Contention
                                                                   : JobTraceInfo::Mode::Declined;
            }
            break;
        }
        case EventKind::Execute: {
            JobTraceInfo& j = info[event.job];
            j.executed += event.end - event.start;
            j.first_exec = std::min(j.first_exec, event.start);
            j.last_exec = std::max(j.last_exec, event.end);
            break;
        }
        case EventKind::Complete: {
            JobTraceInfo& j = info[event.job];
            if (j.completed || j.failed) fail(Errc::MalformedTrace, "job finished twice");
            j.completed = true;
            break;
        }
        case EventKind::Fail: {
            JobTraceInfo& j = info[event.job];
            if (j.completed || j.failed) fail(Errc::MalformedTrace, "job finished twice");
            j.failed = true;
            j.shortage = event.shortage;
            break;
        }
        case EventKind::Idle:
            break;
        }
    }
    return info;
}

std::size_t interval_of(const std::vector<BusyInterval>& intervals, Tick t) {
    for (std::size_t i = 0; i < intervals.size(); ++i)
        if (intervals[i].contains(t)) return i;
    fail(Errc::MalformedTrace,
         "job released at " + std::to_string(t) + " outside every busy interval");
}

} // namespace

std::vector<IntervalProfit> interval_profits(const SimulationTrace& trace,
                                             const Instance& instance) {
    const std::vector<BusyInterval> intervals = busy_intervals(trace);
    const std::map<JobId, JobTraceInfo> info = digest_trace(trace);

    std::map<JobId, const Job*> by_id;
    for (const Job& job : instance.jobs()) by_id[job.id] = &job;

    std::vector<IntervalProfit> profits(intervals.size());
    for (std::size_t i = 0; i < intervals.size(); ++i) profits[i].interval = intervals[i];

    for (const auto& [id, j] : info) {
        auto it = by_id.find(id);
        if (it == by_id.end()) fail(Errc::MalformedTrace, "trace mentions a job not in the instance");
        const Job& job = *it->second;
        if (!j.released || j.mode == JobTraceInfo::Mode::None)
            fail(Errc::MalformedTrace, "job lacks release or decision events");

        if (j.mode == JobTraceInfo::Mode::Declined) {
            if (j.completed || j.failed || j.executed != 0)
                fail(Errc::MalformedTrace, "declined job has execution or outcome events");
            IntervalProfit& slot = profits[interval_of(intervals, job.release)];
            slot.declined.emplace_back(id, job.deadline);
            continue;
        }

        // admitted: exactly one outcome, conserving executed + shortage = proc
        if (j.completed == j.failed)
            fail(Errc::MalformedTrace, "admitted job must either complete or fail");
        if (j.completed && j.executed != job.proc)
            fail(Errc::MalformedTrace, "completed job executed the wrong amount");
        if (j.failed && j.executed + j.shortage != job.proc)
            fail(Errc::MalformedTrace, "failed job breaks executed + shortage = proc");

        const std::size_t slot_index = interval_of(intervals, job.release);
        IntervalProfit& slot = profits[slot_index];
        if (j.executed > 0 &&
            (j.first_exec < slot.interval.start || j.last_exec > slot.interval.end))
            fail(Errc::MalformedTrace, "job executed outside its release interval");

        const std::int64_t profit = j.completed ? job.value : -j.shortage;
        slot.total += profit;
        if (j.mode == JobTraceInfo::Mode::Append)
            slot.peace += profit;
        else
            slot.contention += profit;
        if (j.failed) slot.shortages[id] = j.shortage;
    }

    for (const IntervalProfit& slot : profits)
        if (slot.total != slot.peace + slot.contention)
            fail(Errc::MalformedTrace, "interval profit attribution does not add up");
    return profits;
}

LemmaReport check_lemma_capacity(const std::vector<IntervalProfit>& profits, double beta) {
    LemmaReport report{"capacity", {}};
    for (std::size_t i = 0; i < profits.size(); ++i) {
        const IntervalProfit& p = profits[i];
        const double lhs = static_cast<double>(p.interval.length());
        const double rhs = static_cast<double>(p.total) +
                           static_cast<double>(p.contention) / (beta - 1.0);
        if (lhs > rhs) report.violations.push_back({i, -1, lhs, rhs});
    }
    return report;
}

LemmaReport check_lemma_declined(const std::vector<IntervalProfit>& profits, double beta) {
    LemmaReport report{"declined", {}};
    for (std::size_t i = 0; i < profits.size(); ++i) {
        const IntervalProfit& p = profits[i];
        Tick shortage_sum = 0;
        for (const auto& [id, s] : p.shortages) shortage_sum += s;
        const double rhs = (1.0 + beta) * static_cast<double>(p.total);
        for (const auto& [id, deadline] : p.declined) {
            const double lhs = static_cast<double>(deadline - p.interval.end - shortage_sum);
            if (lhs > rhs) report.violations.push_back({i, id, lhs, rhs});
        }
    }
    return report;
}

LemmaReport check_lemma_peace(const SimulationTrace& trace,
                              const std::vector<BusyInterval>& intervals) {
    LemmaReport report{"peace", {}};

    std::map<JobId, Job> released;
    std::map<JobId, JobTraceInfo::Mode> modes;
    std::map<JobId, bool> failed;
    for (const TraceEvent& event : trace.events) {
        if (event.kind == EventKind::Release && event.job_detail)
            released[event.job] = *event.job_detail;
        if (event.kind == EventKind::AcceptAppend) modes[event.job] = JobTraceInfo::Mode::Append;
        if (event.kind == EventKind::AcceptContention)
            modes[event.job] = JobTraceInfo::Mode::Contention;
        if (event.kind == EventKind::Fail) failed[event.job] = true;
    }

    for (const auto& [id, is_failed] : failed) {
        if (!is_failed || modes[id] != JobTraceInfo::Mode::Append) continue;
        auto it = released.find(id);
        if (it == released.end()) fail(Errc::MalformedTrace, "failed job was never released");
        const Job& job = it->second;
        // [release, deadline] must lie inside one busy interval: intervals
        // are maximal and disjoint, so a connected window cannot straddle two
        bool covered = false;
        for (const BusyInterval& b : intervals)
            if (b.start <= job.release && job.deadline <= b.end) covered = true;
        if (!covered)
            report.violations.push_back(
                {0, id, static_cast<double>(job.release), static_cast<double>(job.deadline)});
    }
    return report;
}

LemmaReport check_lemma_shortage(const std::vector<IntervalProfit>& profits) {
    LemmaReport report{"shortage", {}};
    for (std::size_t i = 0; i < profits.size(); ++i) {
        const IntervalProfit& p = profits[i];
        Tick shortage_sum = 0;
        for (const auto& [id, s] : p.shortages) shortage_sum += s;
        const double lhs = static_cast<double>(shortage_sum);
        const double rhs = static_cast<double>(p.interval.length() - p.total);
        if (lhs > rhs) report.violations.push_back({i, -1, lhs, rhs});
    }
    return report;
}

std::vector<LemmaReport> check_all_lemmas(const SimulationTrace& trace, const Instance& instance,
                                          double beta) {
    const std::vector<IntervalProfit> profits = interval_profits(trace, instance);
    const std::vector<BusyInterval> intervals = busy_intervals(trace);
    return {
        check_lemma_capacity(profits, beta),
        check_lemma_declined(profits, beta),
        check_lemma_peace(trace, intervals),
        check_lemma_shortage(profits),
    };
}

CompetitiveReport competitive_report(const std::vector<std::pair<std::string, Instance>>& instances,
                                     const std::vector<std::string>& policies, double beta,
                                     std::size_t oracle_limit, unsigned threads) {
    struct PerInstance {
        Tick oracle_value = 0;
        std::vector<std::int64_t> profits;
    };
    std::vector<PerInstance> results(instances.size());

    auto work = [&](std::size_t index) {
        const Instance& instance = instances[index].second;
        PerInstance& out = results[index];
        out.oracle_value = offline_optimal(instance, oracle_limit).value;
        for (const std::string& name : policies) {
            auto policy = make_policy(name, DscConfig{beta});
            out.profits.push_back(profit_of(run_simulation(instance, *policy).ledger));
        }
    };

    if (threads <= 1) {
        for (std::size_t i = 0; i < instances.size(); ++i) work(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < instances.size();
                     i = next.fetch_add(1))
                    work(i);
            });
        }
        for (std::thread& t : pool) t.join();
    }

    CompetitiveReport report;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        for (std::size_t p = 0; p < policies.size(); ++p) {
            ReportRow row;
            row.instance = instances[i].first;
            row.policy = policies[p];
            row.profit = results[i].profits[p];
            row.oracle_value = results[i].oracle_value;
            row.ratio = row.oracle_value > 0 ? empirical_ratio(row.profit, row.oracle_value)
                                             : std::numeric_limits<double>::quiet_NaN();
            report.rows.push_back(row);
            if (row.oracle_value > 0) {
                auto [it, inserted] = report.policy_minima.try_emplace(row.policy, row.ratio);
                if (!inserted) it->second = std::min(it->second, row.ratio);
            }
        }
    }
    return report;
}

} // namespace commitsched
