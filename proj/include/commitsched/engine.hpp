#pragma once

#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "commitsched/model.hpp"

namespace commitsched {

/// A planned future allocation of processor time to one job.
struct Segment {
    JobId job = 0;
    Tick start = 0;
    Tick end = 0;

    Tick length() const { return end - start; }
    friend bool operator==(const Segment&, const Segment&) = default;
};

/// Live bookkeeping for a job that has been admitted and neither
/// completed nor failed yet.
struct AdmittedJob {
    Job job;
    Tick executed = 0;

    friend bool operator==(const AdmittedJob&, const AdmittedJob&) = default;
};

/// The scheduler's current planned allocation of future processor time.
///
/// Segments are sorted, pairwise disjoint, start at or after the current
/// time, and never extend past their job's deadline. Work lost to
/// truncation is gone: there is no side pool of unscheduled work, so a
/// job's only future is what its segments say.
struct TentativeSchedule {
    std::deque<Segment> segments;
    std::map<JobId, AdmittedJob> admitted;

    bool empty() const { return segments.empty(); }

    /// Total future allocation of one job.
    Tick future_allocation(JobId id) const;

    /// executed + future allocation reaches proc.
    bool slated_to_complete(JobId id) const;

    /// proc - executed - future allocation (0 when slated to complete).
    Tick anticipated_shortage(JobId id) const;

    /// Throws Error{PolicyContractViolation} when any schedule invariant
    /// is broken at time `now`.
    void validate(Tick now) const;
};

/// Last segment end, or `now` for an empty schedule.
Tick end_of_schedule(const TentativeSchedule& schedule, Tick now);

/// True iff the job fits between the end of the schedule and its deadline.
bool is_appendable(const Job& job, const TentativeSchedule& schedule, Tick now);

/// In-place append at the end of the schedule; O(1) amortized.
/// Throws Error{NotAppendable} when the appendable test fails.
void append_in_place(TentativeSchedule& schedule, const Job& job, Tick now);

/// Pure variant of append_in_place.
TentativeSchedule append(const Job& job, const TentativeSchedule& schedule, Tick now);

/// (job id, amount of future allocation lost), sorted by id.
using AffectedList = std::vector<std::pair<JobId, Tick>>;

/// Tight-schedules `job` on [deadline - proc, deadline], re-lays the
/// displaced suffix contiguously from the deadline onward (each moved
/// piece truncated at its own job's deadline, emptied pieces dropped,
/// later pieces compacted forward), and reports every job whose total
/// future allocation strictly decreased. Cost linear in schedule size.
///
/// Precondition: NOT is_appendable (throws Error{PreconditionViolated}).
std::pair<TentativeSchedule, AffectedList>
contention_insert(const Job& job, const TentativeSchedule& schedule, Tick now);

/// Accept/decline profits quoted by a threshold policy for one decision.
struct ProfitQuote {
    std::int64_t profit_accept = 0;
    std::int64_t profit_decline = 0;
    AffectedList affected;

    friend bool operator==(const ProfitQuote&, const ProfitQuote&) = default;
};

/// What a policy tells the engine to do with a released job.
struct PolicyDecision {
    enum class Kind { AcceptAppend, AcceptContention, Decline };

    Kind kind = Kind::Decline;
    TentativeSchedule schedule;        // AcceptContention: the adopted schedule
    AffectedList affected;             // AcceptContention: allocation losses
    std::optional<ProfitQuote> quote;  // threshold policies attach their quote

    static PolicyDecision accept_append() {
        return PolicyDecision{Kind::AcceptAppend, {}, {}, std::nullopt};
    }
    static PolicyDecision accept_contention(TentativeSchedule schedule, AffectedList affected,
                                            std::optional<ProfitQuote> quote = std::nullopt) {
        return PolicyDecision{Kind::AcceptContention, std::move(schedule), std::move(affected),
                              std::move(quote)};
    }
    static PolicyDecision decline(std::optional<ProfitQuote> quote = std::nullopt) {
        return PolicyDecision{Kind::Decline, {}, {}, std::move(quote)};
    }
};

/// Online admission policy. The engine feeds one release at a time, so a
/// policy can only ever see jobs released so far.
class OnlinePolicy {
public:
    virtual ~OnlinePolicy() = default;
    virtual std::string_view name() const = 0;
    virtual PolicyDecision decide(const Job& job, const TentativeSchedule& schedule, Tick now) = 0;
};

enum class EventKind {
    Release,
    AcceptAppend,
    AcceptContention,
    Decline,
    Execute,
    Complete,
    Fail,
    Idle,
};

const char* event_kind_name(EventKind kind);

/// One timestamped simulation event. Field usage depends on kind:
///   Release          job_detail
///   AcceptAppend     job
///   AcceptContention job, affected, quote (quote present for threshold policies)
///   Decline          job, quote (when the policy produced one)
///   Execute          job, start, end
///   Complete         job
///   Fail             job, shortage
///   Idle             start, end
struct TraceEvent {
    Tick time = 0;
    EventKind kind = EventKind::Release;
    JobId job = -1;
    std::optional<Job> job_detail;
    Tick start = 0;
    Tick end = 0;
    Tick shortage = 0;
    AffectedList affected;
    std::optional<ProfitQuote> quote;

    friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

struct SimulationTrace {
    std::vector<TraceEvent> events;

    friend bool operator==(const SimulationTrace&, const SimulationTrace&) = default;
};

struct SimulationResult {
    ProfitLedger ledger;
    SimulationTrace trace;
};

/// Streaming hook: receives each TraceEvent as it is emitted.
using TraceSink = std::function<void(const TraceEvent&)>;

/// Drives `policy` over `instance` deterministically and returns the
/// outcome ledger plus the full event trace.
///
/// Between releases the engine executes the schedule head, emitting
/// Execute segments, Complete when a job's executed count reaches proc,
/// and Fail (with the shortage) at the deadline of any admitted job that
/// can no longer finish. At a release tick, execution bookkeeping up to
/// that tick happens first, then deadline failures at the tick, then the
/// release itself; execution resumes afterwards. Idle events cover gaps
/// where the schedule is empty while jobs remain unreleased.
///
/// Throws Error{PolicyContractViolation} if a decision breaks the
/// schedule invariants.
SimulationResult run_simulation(const Instance& instance, OnlinePolicy& policy,
                                const TraceSink& sink = {});

} // namespace commitsched
