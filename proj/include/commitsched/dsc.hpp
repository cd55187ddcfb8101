#pragma once

#include "commitsched/engine.hpp"

namespace commitsched {

/// Threshold parameter for the admission rule: accept a contended job iff
/// profit_accept > (1 + beta) * profit_decline.
struct DscConfig {
    double beta = kDefaultBeta;

    // 1 + sqrt(2); the optimum of the ratio as a function of beta
    static const double kDefaultBeta;

    /// beta must lie in (1, 3]; below 1 the capacity bound degenerates,
    /// above 3 the analysis no longer holds. Throws Error{ConfigError}.
    void validate() const;
};

/// Evaluates the accept/decline profits for a job that cannot be appended.
///
/// The decline side credits each affected job's value if it is slated to
/// complete under the current schedule and debits its anticipated
/// shortage. The accept side is the new job's value minus the shortage
/// increase the insertion inflicts on the affected jobs. The virtually
/// inserted schedule is not returned; callers wanting it use
/// contention_insert directly.
///
/// Throws Error{Appendable} when the job could simply be appended.
ProfitQuote quote(const Job& job, const TentativeSchedule& schedule, Tick now);

/// One admission decision: append when appendable (unconditional), else
/// accept via contention insertion iff the quoted accept profit strictly
/// beats (1 + beta) times the decline profit, evaluated in real
/// arithmetic over the exact integer profits.
PolicyDecision dsc_decide(const Job& job, const TentativeSchedule& schedule, Tick now,
                          const DscConfig& config);

class DscPolicy final : public OnlinePolicy {
public:
    explicit DscPolicy(DscConfig config = {}) : config_(config) { config_.validate(); }

    std::string_view name() const override { return "dsc"; }
    const DscConfig& config() const { return config_; }

    PolicyDecision decide(const Job& job, const TentativeSchedule& schedule, Tick now) override {
        return dsc_decide(job, schedule, now, config_);
    }

private:
    DscConfig config_;
};

} // namespace commitsched
