#include "commitsched/engine.hpp"

#include <algorithm>
#include <cassert>
#include <limits>

namespace commitsched {

namespace {

constexpr Tick kNever = std::numeric_limits<Tick>::max();

std::string job_str(JobId id) { return "job " + std::to_string(id); }

} // namespace

const char* event_kind_name(EventKind kind) {
    switch (kind) {
    case EventKind::Release: return "release";
    case EventKind::AcceptAppend: return "accept_append";
    case EventKind::AcceptContention: return "accept_contention";
    case EventKind::Decline: return "decline";
    case EventKind::Execute: return "execute";
    case EventKind::Complete: return "complete";
    case EventKind::Fail: return "fail";
    case EventKind::Idle: return "idle";
    }
    return "unknown";
}

Tick TentativeSchedule::future_allocation(JobId id) const {
    Tick total = 0;
    for (const Segment& seg : segments)
        if (seg.job == id) total += seg.length();
    return total;
}

bool TentativeSchedule::slated_to_complete(JobId id) const {
    return anticipated_shortage(id) == 0;
}

Tick TentativeSchedule::anticipated_shortage(JobId id) const {
    const AdmittedJob& entry = admitted.at(id);
    return entry.job.proc - entry.executed - future_allocation(id);
}

void TentativeSchedule::validate(Tick now) const {
    Tick prev_end = now;
    std::map<JobId, Tick> future;
    for (const Segment& seg : segments) {
        if (seg.start >= seg.end)
            fail(Errc::PolicyContractViolation, "empty or inverted segment for " + job_str(seg.job));
        if (seg.start < prev_end)
            fail(Errc::PolicyContractViolation,
                 "segment for " + job_str(seg.job) + " overlaps its predecessor or the past");
        auto it = admitted.find(seg.job);
        if (it == admitted.end())
            fail(Errc::PolicyContractViolation, "segment for unadmitted " + job_str(seg.job));
        if (seg.end > it->second.job.deadline)
            fail(Errc::PolicyContractViolation,
                 "segment for " + job_str(seg.job) + " extends past its deadline");
        future[seg.job] += seg.length();
        prev_end = seg.end;
    }
    for (const auto& [id, entry] : admitted) {
        if (entry.executed < 0 || entry.executed > entry.job.proc)
            fail(Errc::PolicyContractViolation, "executed out of range for " + job_str(id));
        if (entry.executed + future[id] > entry.job.proc)
            fail(Errc::PolicyContractViolation, "overallocated " + job_str(id));
    }
}

Tick end_of_schedule(const TentativeSchedule& schedule, Tick now) {
    return schedule.segments.empty() ? now : schedule.segments.back().end;
}

bool is_appendable(const Job& job, const TentativeSchedule& schedule, Tick now) {
    return end_of_schedule(schedule, now) + job.proc <= job.deadline;
}

void append_in_place(TentativeSchedule& schedule, const Job& job, Tick now) {
    if (!is_appendable(job, schedule, now))
        fail(Errc::NotAppendable, job_str(job.id) + " does not fit at the end of the schedule");
    Tick start = end_of_schedule(schedule, now);
    schedule.segments.push_back(Segment{job.id, start, start + job.proc});
    schedule.admitted.emplace(job.id, AdmittedJob{job, 0});
}

TentativeSchedule append(const Job& job, const TentativeSchedule& schedule, Tick now) {
    TentativeSchedule out = schedule;
    append_in_place(out, job, now);
    return out;
}

std::pair<TentativeSchedule, AffectedList>
contention_insert(const Job& job, const TentativeSchedule& schedule, Tick now) {
    if (is_appendable(job, schedule, now))
        fail(Errc::PreconditionViolated, job_str(job.id) + " is appendable; use append");
    const Tick split = job.latest_start();
    if (split < now)
        fail(Errc::PreconditionViolated, job_str(job.id) + " can no longer start by its deadline");

    TentativeSchedule out;
    out.admitted = schedule.admitted;
    out.admitted.emplace(job.id, AdmittedJob{job, 0});

    // prefix keeps everything strictly before split; a straddling segment
    // is cut there and its tail joins the moved suffix
    std::vector<Segment> suffix;
    for (const Segment& seg : schedule.segments) {
        if (seg.end <= split) {
            out.segments.push_back(seg);
        } else if (seg.start >= split) {
            suffix.push_back(seg);
        } else {
            out.segments.push_back(Segment{seg.job, seg.start, split});
            suffix.push_back(Segment{seg.job, split, seg.end});
        }
    }

    out.segments.push_back(Segment{job.id, split, job.deadline});
    // "start at the deadline, or the end of the current schedule, whichever
    // comes later" — the prefix ends at split < deadline, so this is the
    // deadline; keep the max for literal fidelity
    Tick pointer = std::max(job.deadline, out.segments.back().end);

    for (const Segment& piece : suffix) {
        const Tick piece_deadline = out.admitted.at(piece.job).job.deadline;
        const Tick end = std::min(pointer + piece.length(), piece_deadline);
        if (end <= pointer) continue; // fully expired; later pieces fill the gap
        if (!out.segments.empty() && out.segments.back().job == piece.job &&
            out.segments.back().end == pointer) {
            out.segments.back().end = end;
        } else {
            out.segments.push_back(Segment{piece.job, pointer, end});
        }
        pointer = end;
    }

    AffectedList affected;
    for (const auto& [id, entry] : schedule.admitted) {
        const Tick lost = schedule.future_allocation(id) - out.future_allocation(id);
        assert(lost >= 0 && "a contention insert never grows an existing allocation");
        if (lost > 0) affected.emplace_back(id, lost);
    }

#ifndef NDEBUG
    out.validate(now);
#endif
    return {std::move(out), std::move(affected)};
}

namespace {

class Simulator {
public:
    Simulator(const Instance& instance, OnlinePolicy& policy, const TraceSink& sink)
        : instance_(instance), policy_(policy), sink_(sink) {}

    SimulationResult run() {
        for (const Job& job : instance_.jobs()) {
            advance_to(job.release, /*releases_remain=*/true);
            settle_deadlines();
            handle_release(job);
        }
        advance_to(kNever, /*releases_remain=*/false);
        assert(result_.ledger.outcomes.size() == instance_.size());
        return std::move(result_);
    }

private:
    void emit(TraceEvent event) {
        if (sink_) sink_(event);
        result_.trace.events.push_back(std::move(event));
    }

    Tick next_live_deadline() const {
        Tick next = kNever;
        for (const auto& [id, entry] : sched_.admitted)
            next = std::min(next, entry.job.deadline);
        return next;
    }

    // Fail every admitted job whose deadline has arrived unfinished.
    void settle_deadlines() {
        for (auto it = sched_.admitted.begin(); it != sched_.admitted.end();) {
            const AdmittedJob& entry = it->second;
            assert(entry.job.deadline >= now_ && "deadline slipped past unprocessed");
            if (entry.job.deadline == now_) {
                assert(entry.executed < entry.job.proc);
                TraceEvent ev;
                ev.time = now_;
                ev.kind = EventKind::Fail;
                ev.job = it->first;
                ev.shortage = entry.job.proc - entry.executed;
                emit(std::move(ev));
                result_.ledger.record_failed(entry.job, entry.executed);
                it = sched_.admitted.erase(it);
            } else {
                ++it;
            }
        }
    }

    void complete_job(JobId id) {
        const AdmittedJob& entry = sched_.admitted.at(id);
        assert(entry.executed == entry.job.proc);
        TraceEvent ev;
        ev.time = now_;
        ev.kind = EventKind::Complete;
        ev.job = id;
        emit(std::move(ev));
        result_.ledger.record_completed(entry.job);
        sched_.admitted.erase(id);
    }

    void advance_to(Tick target, bool releases_remain) {
        while (true) {
            settle_deadlines();
            if (now_ >= target) return;
            if (!releases_remain && sched_.segments.empty() && sched_.admitted.empty()) return;

            const Tick deadline_bound = next_live_deadline();
            if (!sched_.segments.empty()) {
                Segment& head = sched_.segments.front();
                if (head.start > now_) {
                    // gap before the head; does not occur under the bundled
                    // policies but the engine stays well defined
                    const Tick stop = std::min({head.start, target, deadline_bound});
                    emit_idle(now_, stop, releases_remain);
                    now_ = stop;
                    continue;
                }
                const Tick stop = std::min({head.end, target, deadline_bound});
                if (stop > now_) {
                    TraceEvent ev;
                    ev.time = now_;
                    ev.kind = EventKind::Execute;
                    ev.job = head.job;
                    ev.start = now_;
                    ev.end = stop;
                    emit(std::move(ev));
                    sched_.admitted.at(head.job).executed += stop - now_;
                    head.start = stop;
                    now_ = stop;
                }
                const JobId job = head.job;
                if (head.start == head.end) sched_.segments.pop_front();
                if (sched_.admitted.at(job).executed == sched_.admitted.at(job).job.proc)
                    complete_job(job);
            } else {
                const Tick stop = std::min(target, deadline_bound);
                if (stop == kNever) return; // nothing will ever happen again
                emit_idle(now_, stop, releases_remain);
                now_ = stop;
            }
        }
    }

    void emit_idle(Tick from, Tick to, bool releases_remain) {
        if (to <= from || !releases_remain) return;
        TraceEvent ev;
        ev.time = from;
        ev.kind = EventKind::Idle;
        ev.start = from;
        ev.end = to;
        emit(std::move(ev));
    }

    void handle_release(const Job& job) {
        assert(now_ == job.release);
        {
            TraceEvent ev;
            ev.time = now_;
            ev.kind = EventKind::Release;
            ev.job = job.id;
            ev.job_detail = job;
            emit(std::move(ev));
        }

        PolicyDecision decision = policy_.decide(job, sched_, now_);
        switch (decision.kind) {
        case PolicyDecision::Kind::AcceptAppend: {
            if (!is_appendable(job, sched_, now_))
                fail(Errc::PolicyContractViolation,
                     "policy appended non-appendable " + job_str(job.id));
            append_in_place(sched_, job, now_);
#ifndef NDEBUG
            sched_.validate(now_);
#endif
            TraceEvent ev;
            ev.time = now_;
            ev.kind = EventKind::AcceptAppend;
            ev.job = job.id;
            emit(std::move(ev));
            break;
        }
        case PolicyDecision::Kind::AcceptContention: {
            adopt_schedule(job, decision.schedule);
            TraceEvent ev;
            ev.time = now_;
            ev.kind = EventKind::AcceptContention;
            ev.job = job.id;
            ev.affected = decision.affected;
            ev.quote = decision.quote;
            emit(std::move(ev));
            break;
        }
        case PolicyDecision::Kind::Decline: {
            result_.ledger.record_declined(job);
            TraceEvent ev;
            ev.time = now_;
            ev.kind = EventKind::Decline;
            ev.job = job.id;
            ev.quote = decision.quote;
            emit(std::move(ev));
            break;
        }
        }
    }

    // A policy-provided schedule must keep every live job's bookkeeping
    // intact and add exactly the newly accepted job.
    void adopt_schedule(const Job& job, TentativeSchedule& proposed) {
        proposed.validate(now_);
        if (proposed.admitted.size() != sched_.admitted.size() + 1)
            fail(Errc::PolicyContractViolation, "admitted set changed beyond the new job");
        for (const auto& [id, entry] : sched_.admitted) {
            auto it = proposed.admitted.find(id);
            if (it == proposed.admitted.end() || it->second != entry)
                fail(Errc::PolicyContractViolation,
                     "bookkeeping for " + job_str(id) + " altered by policy");
        }
        auto it = proposed.admitted.find(job.id);
        if (it == proposed.admitted.end() || it->second.job != job || it->second.executed != 0)
            fail(Errc::PolicyContractViolation, "accepted job missing from proposed schedule");
        sched_ = std::move(proposed);
    }

    const Instance& instance_;
    OnlinePolicy& policy_;
    const TraceSink& sink_;

    Tick now_ = 0;
    TentativeSchedule sched_;
    SimulationResult result_;
};

} // namespace

SimulationResult run_simulation(const Instance& instance, OnlinePolicy& policy,
                                const TraceSink& sink) {
    return Simulator(instance, policy, sink).run();
}

} // namespace commitsched
