#pragma once

#include <map>
#include <string>
#include <vector>

#include "commitsched/engine.hpp"

namespace commitsched {

/// Maximal contiguous period of processor execution.
struct BusyInterval {
    Tick start = 0;
    Tick end = 0;

    Tick length() const { return end - start; }
    bool contains(Tick t) const { return start <= t && t < end; }
    friend bool operator==(const BusyInterval&, const BusyInterval&) = default;
};

/// Extracts the maximal, disjoint, sorted busy intervals covering exactly
/// the Execute events of a trace. Throws Error{MalformedTrace} on
/// unordered or overlapping execution.
std::vector<BusyInterval> busy_intervals(const SimulationTrace& trace);

/// Profit attribution for one busy interval. Every job belongs to the
/// interval containing its release; admitted jobs contribute their value
/// if completed and minus their shortage if failed, split into peace
/// (appended) and contention (tight-scheduled) classes.
struct IntervalProfit {
    BusyInterval interval;
    std::int64_t total = 0;
    std::int64_t peace = 0;
    std::int64_t contention = 0;
    std::map<JobId, Tick> shortages;              // failed jobs admitted here
    std::vector<std::pair<JobId, Tick>> declined; // (id, deadline)
};

/// Attributes every job of a threshold-policy trace to its release
/// interval. Requires decision metadata on every contention accept and
/// decline (Error{NotADscTrace} otherwise); inconsistent attribution,
/// double counting, or execution escaping the release interval raise
/// Error{MalformedTrace}.
std::vector<IntervalProfit> interval_profits(const SimulationTrace& trace,
                                             const Instance& instance);

struct LemmaViolation {
    std::size_t interval_index = 0;
    JobId job = -1; // -1 when the violation is interval-wide
    double lhs = 0.0;
    double rhs = 0.0;
};

struct LemmaReport {
    std::string lemma;
    std::vector<LemmaViolation> violations;

    bool pass() const { return violations.empty(); }
};

/// Busy-interval capacity: |B| <= T_B + C_B / (beta - 1).
LemmaReport check_lemma_capacity(const std::vector<IntervalProfit>& profits, double beta);

/// Declined-deadline bound: for every job declined in B,
/// d_i - end(B) - sum of shortages in B <= (1 + beta) * T_B.
LemmaReport check_lemma_declined(const std::vector<IntervalProfit>& profits, double beta);

/// Every peace-scheduled job that failed has [release, deadline] inside
/// the union of busy intervals.
LemmaReport check_lemma_peace(const SimulationTrace& trace,
                              const std::vector<BusyInterval>& intervals);

/// Shortage bound: per interval, sum of shortages <= |B| - T_B.
LemmaReport check_lemma_shortage(const std::vector<IntervalProfit>& profits);

/// All four lemma checks over a trace, in a fixed order.
std::vector<LemmaReport> check_all_lemmas(const SimulationTrace& trace, const Instance& instance,
                                          double beta);

struct ReportRow {
    std::string instance;
    std::string policy;
    std::int64_t profit = 0;
    Tick oracle_value = 0;
    double ratio = 0.0;
};

struct CompetitiveReport {
    std::vector<ReportRow> rows;
    std::map<std::string, double> policy_minima; // over rows with oracle > 0
};

/// Runs every policy on every instance, computes the offline optimum
/// once per instance, and tabulates profit/oracle ratios plus per-policy
/// corpus minima. Instances whose oracle value is zero (only the empty
/// instance qualifies) are reported with ratio NaN and skipped in the
/// minima. Instances run in parallel across `threads` workers without
/// affecting results.
CompetitiveReport competitive_report(const std::vector<std::pair<std::string, Instance>>& instances,
                                     const std::vector<std::string>& policies, double beta,
                                     std::size_t oracle_limit = 20, unsigned threads = 1);

} // namespace commitsched
