#pragma once

// shared helpers for the unit and acceptance suites

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "commitsched/adversary.hpp"
#include "commitsched/dsc.hpp"
#include "commitsched/engine.hpp"
#include "commitsched/gen.hpp"

namespace commitsched::testing {

inline Job job(JobId id, Tick release, Tick proc, Tick deadline) {
    return Job::make(id, release, proc, deadline);
}

inline Instance instance_of(std::vector<Job> jobs) { return Instance::make(std::move(jobs)); }

/// Declines everything.
class DeclineAllPolicy final : public OnlinePolicy {
public:
    std::string_view name() const override { return "decline-all"; }
    PolicyDecision decide(const Job&, const TentativeSchedule&, Tick) override {
        return PolicyDecision::decline();
    }
};

/// Appends when possible, otherwise flips a seeded coin between a
/// contention accept and a decline. Exercises engine paths the named
/// policies would not reach.
class RandomPolicy final : public OnlinePolicy {
public:
    explicit RandomPolicy(std::uint64_t seed) : rng_(seed) {}

    std::string_view name() const override { return "random"; }

    PolicyDecision decide(const Job& job, const TentativeSchedule& schedule, Tick now) override {
        if (is_appendable(job, schedule, now)) return PolicyDecision::accept_append();
        if (rng_() % 2 == 0) return PolicyDecision::decline();
        auto [inserted, affected] = contention_insert(job, schedule, now);
        return PolicyDecision::accept_contention(std::move(inserted), std::move(affected));
    }

private:
    std::mt19937_64 rng_;
};

/// Wraps DSC and records structural violations instead of asserting, so
/// whole-corpus sweeps can report every breach at once:
///   - an appendable job must be accepted by appending,
///   - nothing may be declined while the schedule is empty,
///   - a contention accept must sit exactly on [deadline - proc, deadline].
class CheckingDscPolicy final : public OnlinePolicy {
public:
    explicit CheckingDscPolicy(DscConfig config = {}) : inner_(config) {}

    std::string_view name() const override { return "dsc"; }

    PolicyDecision decide(const Job& job, const TentativeSchedule& schedule, Tick now) override {
        PolicyDecision decision = inner_.decide(job, schedule, now);
        const bool appendable = is_appendable(job, schedule, now);
        if (appendable && decision.kind != PolicyDecision::Kind::AcceptAppend)
            violations.push_back("appendable job not appended");
        if (schedule.empty() && decision.kind == PolicyDecision::Kind::Decline)
            violations.push_back("declined on an empty schedule");
        if (decision.kind == PolicyDecision::Kind::AcceptContention) {
            Tick allocated = 0;
            bool exact = true;
            for (const Segment& seg : decision.schedule.segments) {
                if (seg.job != job.id) continue;
                allocated += seg.length();
                if (seg.start < job.latest_start() || seg.end > job.deadline) exact = false;
            }
            if (!exact || allocated != job.proc)
                violations.push_back("contention accept not tight on [d-p, d]");
        }
        return decision;
    }

    std::vector<std::string> violations;

private:
    DscPolicy inner_;
};

/// Deterministic mixed under/overload corpus; laxity ranges within [1, 3],
/// n <= 18. Instance names encode the generating configuration.
std::vector<std::pair<std::string, Instance>> criterion_corpus();

/// Smaller corpus for fast property tests.
std::vector<Instance> fuzz_corpus(std::size_t count, std::uint64_t seed0);

/// Adversary chains for the acceptance c-set, as 64-bit instances: the
/// full chain where it fits, the longest representable prefix for
/// c = 5.8 (whose full form needs ~90-bit ticks).
std::vector<std::pair<std::string, Instance>> adversary_corpus();

} // namespace commitsched::testing
