#pragma once

#include <memory>
#include <string>

#include "commitsched/dsc.hpp"
#include "commitsched/engine.hpp"

namespace commitsched {

/// Accepts every job and rebuilds its tentative schedule at each release
/// by preemptive earliest-deadline-first over the remaining work of all
/// admitted, unexpired jobs. Completes everything when underloaded; pays
/// heavy penalties under overload.
class AdmitAllEdfPolicy final : public OnlinePolicy {
public:
    std::string_view name() const override { return "admit-all-edf"; }
    PolicyDecision decide(const Job& job, const TentativeSchedule& schedule, Tick now) override;
};

/// Accepts a job only when the remaining work of every admitted job plus
/// the new job is preemptively feasible from now; schedules by EDF.
/// By construction it never pays a penalty.
class FeasibilityGuardPolicy final : public OnlinePolicy {
public:
    std::string_view name() const override { return "feasibility-guard"; }
    PolicyDecision decide(const Job& job, const TentativeSchedule& schedule, Tick now) override;
};

/// Rebuilds an EDF schedule from `now` over the remaining work of
/// `admitted` (ties by smaller job id; expired jobs get nothing). Shared
/// by the baseline policies; exposed for tests.
TentativeSchedule edf_rebuild(const std::map<JobId, AdmittedJob>& admitted, Tick now);

inline std::unique_ptr<OnlinePolicy> admit_all_edf_policy() {
    return std::make_unique<AdmitAllEdfPolicy>();
}

inline std::unique_ptr<OnlinePolicy> feasibility_guard_policy() {
    return std::make_unique<FeasibilityGuardPolicy>();
}

/// Policy selector: "dsc", "admit-all-edf" or "feasibility-guard".
/// Throws Error{UnknownPolicy}.
std::unique_ptr<OnlinePolicy> make_policy(const std::string& name, const DscConfig& config = {});

} // namespace commitsched
