#include "commitsched/baselines.hpp"

#include <algorithm>

namespace commitsched {

namespace {

AffectedList allocation_losses(const TentativeSchedule& before, const TentativeSchedule& after) {
    AffectedList affected;
    for (const auto& [id, entry] : before.admitted) {
        const Tick lost = before.future_allocation(id) - after.future_allocation(id);
        if (lost > 0) affected.emplace_back(id, lost);
    }
    return affected;
}

} // namespace

TentativeSchedule edf_rebuild(const std::map<JobId, AdmittedJob>& admitted, Tick now) {
    struct Pending {
        JobId id;
        Tick deadline;
        Tick remaining;
    };
    std::vector<Pending> pending;
    for (const auto& [id, entry] : admitted) {
        const Tick remaining = entry.job.proc - entry.executed;
        if (remaining > 0) pending.push_back({id, entry.job.deadline, remaining});
    }
    std::sort(pending.begin(), pending.end(), [](const Pending& a, const Pending& b) {
        if (a.deadline != b.deadline) return a.deadline < b.deadline;
        return a.id < b.id;
    });

    TentativeSchedule out;
    out.admitted = admitted;
    // no further releases exist inside a rebuild, so EDF never preempts:
    // each job gets one run, cut at its own deadline
    Tick t = now;
    for (const Pending& p : pending) {
        if (p.deadline <= t) continue; // expired: fails at its deadline with no allocation
        const Tick end = std::min(t + p.remaining, p.deadline);
        out.segments.push_back(Segment{p.id, t, end});
        t = end;
    }
    return out;
}

PolicyDecision AdmitAllEdfPolicy::decide(const Job& job, const TentativeSchedule& schedule,
                                         Tick now) {
    std::map<JobId, AdmittedJob> admitted = schedule.admitted;
    admitted.emplace(job.id, AdmittedJob{job, 0});
    TentativeSchedule rebuilt = edf_rebuild(admitted, now);
    AffectedList affected = allocation_losses(schedule, rebuilt);
    return PolicyDecision::accept_contention(std::move(rebuilt), std::move(affected));
}

PolicyDecision FeasibilityGuardPolicy::decide(const Job& job, const TentativeSchedule& schedule,
                                              Tick now) {
    std::map<JobId, AdmittedJob> admitted = schedule.admitted;
    admitted.emplace(job.id, AdmittedJob{job, 0});
    TentativeSchedule rebuilt = edf_rebuild(admitted, now);
    for (const auto& [id, entry] : admitted) {
        if (entry.executed + rebuilt.future_allocation(id) < entry.job.proc)
            return PolicyDecision::decline();
    }
    AffectedList affected = allocation_losses(schedule, rebuilt);
    return PolicyDecision::accept_contention(std::move(rebuilt), std::move(affected));
}

std::unique_ptr<OnlinePolicy> make_policy(const std::string& name, const DscConfig& config) {
    if (name == "dsc") return std::make_unique<DscPolicy>(config);
    if (name == "admit-all-edf") return admit_all_edf_policy();
    if (name == "feasibility-guard") return feasibility_guard_policy();
    fail(Errc::UnknownPolicy, "no policy named '" + name + "'");
}

} // namespace commitsched
