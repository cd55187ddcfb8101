#pragma once

#include <vector>

#include "commitsched/model.hpp"

namespace commitsched {

/// Optimal offline value and one optimal completable subset.
struct OracleResult {
    Tick value = 0;
    std::vector<JobId> witness; // sorted ascending

    friend bool operator==(const OracleResult&, const OracleResult&) = default;
};

/// True iff preemptive earliest-deadline-first from the earliest release
/// completes every job by its deadline. Event-driven; never ticks.
bool edf_feasible(const std::vector<Job>& jobs);

/// Independent feasibility route: for every interval [a, b] with a a
/// release and b a deadline, the work wholly inside it fits:
///   sum{ p_i : a <= r_i, d_i <= b } <= b - a.
bool interval_load_feasible(const std::vector<Job>& jobs);

/// Exact optimal offline profit: the maximum total processing time over
/// feasible subsets (an offline scheduler never gains by admitting a job
/// it cannot finish, since value is paid only on completion and the
/// shortage penalty is nonnegative). Ties prefer the lexicographically
/// smallest witness. Branch and bound over subsets in id order.
///
/// When `cross_validate` is set, every feasibility query is answered by
/// both routes and a disagreement aborts. Throws Error{InstanceTooLarge}
/// when the instance exceeds `limit` jobs.
OracleResult offline_optimal(const Instance& instance, std::size_t limit = 20,
#ifndef NDEBUG
                             bool cross_validate = true
#else
                             bool cross_validate = false
#endif
);

} // namespace commitsched
