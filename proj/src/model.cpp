#include "commitsched/model.hpp"

#include <algorithm>
#include <unordered_set>

namespace commitsched {

const char* errc_name(Errc code) {
    switch (code) {
    case Errc::DeadlineTooEarly: return "DeadlineTooEarly";
    case Errc::NonPositiveLength: return "NonPositiveLength";
    case Errc::ValueMismatch: return "ValueMismatch";
    case Errc::NegativeTime: return "NegativeTime";
    case Errc::DuplicateId: return "DuplicateId";
    case Errc::NotAppendable: return "NotAppendable";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::PolicyContractViolation: return "PolicyContractViolation";
    case Errc::Appendable: return "Appendable";
    case Errc::ZeroOfflineValue: return "ZeroOfflineValue";
    case Errc::InstanceTooLarge: return "InstanceTooLarge";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::NonTerminating: return "NonTerminating";
    case Errc::ScaleTooSmall: return "ScaleTooSmall";
    case Errc::TickOverflow: return "TickOverflow";
    case Errc::BoundViolated: return "BoundViolated";
    case Errc::MalformedTrace: return "MalformedTrace";
    case Errc::NotADscTrace: return "NotADscTrace";
    case Errc::UnknownPolicy: return "UnknownPolicy";
    case Errc::IoError: return "IoError";
    case Errc::ConfigError: return "ConfigError";
    }
    return "UnknownError";
}

const char* outcome_name(OutcomeStatus status) {
    switch (status) {
    case OutcomeStatus::Completed: return "completed";
    case OutcomeStatus::Failed: return "failed";
    case OutcomeStatus::Declined: return "declined";
    }
    return "unknown";
}

void validate_job(const Job& job) {
    if (job.release < 0 || job.deadline < 0)
        fail(Errc::NegativeTime, "job " + std::to_string(job.id) + " has a negative time field");
    if (job.proc < 1)
        fail(Errc::NonPositiveLength, "job " + std::to_string(job.id) + " has proc " + std::to_string(job.proc));
    if (job.deadline < job.release + job.proc)
        fail(Errc::DeadlineTooEarly,
             "job " + std::to_string(job.id) + " cannot finish: deadline " + std::to_string(job.deadline) +
                 " < release " + std::to_string(job.release) + " + proc " + std::to_string(job.proc));
    if (job.value != job.proc)
        fail(Errc::ValueMismatch,
             "job " + std::to_string(job.id) + " value " + std::to_string(job.value) +
                 " != proc " + std::to_string(job.proc));
}

Instance Instance::make(std::vector<Job> jobs) {
    std::unordered_set<JobId> seen;
    for (const Job& job : jobs) {
        validate_job(job);
        if (!seen.insert(job.id).second)
            fail(Errc::DuplicateId, "job id " + std::to_string(job.id) + " appears twice");
    }
    std::stable_sort(jobs.begin(), jobs.end(),
                     [](const Job& a, const Job& b) { return a.release < b.release; });
    return Instance(std::move(jobs));
}

void ProfitLedger::record_completed(const Job& job) {
    outcomes[job.id] = JobOutcome{OutcomeStatus::Completed, job.proc, 0};
}

void ProfitLedger::record_failed(const Job& job, Tick executed) {
    outcomes[job.id] = JobOutcome{OutcomeStatus::Failed, executed, job.proc - executed};
}

void ProfitLedger::record_declined(const Job& job) {
    outcomes[job.id] = JobOutcome{OutcomeStatus::Declined, 0, 0};
}

std::int64_t profit_of(const ProfitLedger& ledger) {
    std::int64_t profit = 0;
    for (const auto& [id, outcome] : ledger.outcomes) {
        switch (outcome.status) {
        case OutcomeStatus::Completed: profit += outcome.executed; break;
        case OutcomeStatus::Failed: profit -= outcome.shortage; break;
        case OutcomeStatus::Declined: break;
        }
    }
    return profit;
}

double empirical_ratio(std::int64_t online_profit, Tick offline_value) {
    if (offline_value == 0)
        fail(Errc::ZeroOfflineValue, "competitive ratio undefined for zero offline value");
    return static_cast<double>(online_profit) / static_cast<double>(offline_value);
}

} // namespace commitsched
