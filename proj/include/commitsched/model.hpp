#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "commitsched/error.hpp"

namespace commitsched {

/// One abstract time quantum. All event times and durations are integer
/// ticks; there is no fractional time anywhere downstream.
using Tick = std::int64_t;

using JobId = std::int64_t;

/// A job request: released at `release`, needs `proc` ticks of processor
/// time before `deadline`. Value equals processing time (proportional
/// value model), stored redundantly and enforced by validation.
struct Job {
    JobId id = 0;
    Tick release = 0;
    Tick proc = 0;
    Tick deadline = 0;
    Tick value = 0;

    static Job make(JobId id, Tick release, Tick proc, Tick deadline) {
        return Job{id, release, proc, deadline, proc};
    }

    /// r + p = d: the job must be worked on continuously from release or fail.
    bool tight() const { return release + proc == deadline; }

    /// latest start that still meets the deadline
    Tick latest_start() const { return deadline - proc; }

    friend bool operator==(const Job&, const Job&) = default;
};

/// Throws Error{DeadlineTooEarly | NonPositiveLength | ValueMismatch |
/// NegativeTime} naming the violated invariant.
void validate_job(const Job& job);

/// Finite ordered job sequence: non-decreasing release, ties in input order.
class Instance {
public:
    Instance() = default;

    /// Validates every job, checks id uniqueness, and normalizes ordering
    /// (stable sort by release, so same-release jobs keep input order).
    static Instance make(std::vector<Job> jobs);

    const std::vector<Job>& jobs() const { return jobs_; }
    std::size_t size() const { return jobs_.size(); }
    bool empty() const { return jobs_.empty(); }

    friend bool operator==(const Instance&, const Instance&) = default;

private:
    explicit Instance(std::vector<Job> jobs) : jobs_(std::move(jobs)) {}
    std::vector<Job> jobs_;
};

enum class OutcomeStatus { Completed, Failed, Declined };

const char* outcome_name(OutcomeStatus status);

/// Per-job result of a run. Completed => executed == proc; Failed =>
/// shortage == proc - executed in [1, proc]; Declined => executed == 0.
struct JobOutcome {
    OutcomeStatus status = OutcomeStatus::Declined;
    Tick executed = 0;
    Tick shortage = 0;

    friend bool operator==(const JobOutcome&, const JobOutcome&) = default;
};

/// Outcome map plus profit arithmetic. Profit = sum of completed values
/// minus sum of shortage penalties; declined jobs contribute nothing.
struct ProfitLedger {
    std::map<JobId, JobOutcome> outcomes;

    void record_completed(const Job& job);
    void record_failed(const Job& job, Tick executed);
    void record_declined(const Job& job);

    friend bool operator==(const ProfitLedger&, const ProfitLedger&) = default;
};

/// The signed profit sum over a ledger. Pure.
std::int64_t profit_of(const ProfitLedger& ledger);

/// online_profit / offline_value as a real number.
/// Throws Error{ZeroOfflineValue} when offline_value == 0 (the instance is
/// vacuous and the ratio undefined; callers must skip such instances).
double empirical_ratio(std::int64_t online_profit, Tick offline_value);

} // namespace commitsched
