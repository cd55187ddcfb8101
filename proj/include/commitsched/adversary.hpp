#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "commitsched/model.hpp"

namespace commitsched {

/// Parse a decimal string such as "5.8" or "29/5" into an exact rational.
/// Throws Error{ConfigError} on malformed input.
mpq_class parse_rational(const std::string& text);

/// Parameters of the escalating tight-job construction.
struct AdversaryParams {
    mpq_class c;              // growth parameter, 1 < c < 3 + 2*sqrt(2)
    Tick scale = 1'000'000;   // ticks per unit length
    Tick epsilon_ticks = 1;   // release spacing
    int m_max = 10'000;       // safety cap on sequence length

    /// The admissible range is exactly where the recursion's
    /// characteristic roots are complex: c^2 - 6c + 1 < 0 together with
    /// c > 1. Checked exactly in rational arithmetic.
    /// Throws Error{InvalidParams}.
    void validate() const;
};

/// The job-length sequence x_0 .. x_{m+1} together with the ratio terms
/// each online strategy attains: sigma_1 .. sigma_{m+1} (all equal 1/c by
/// construction) plus the accept-everything final term.
struct AdversarySequence {
    std::vector<mpq_class> lengths;     // x_0 = 1, x_1 = c, recursion onward
    std::vector<mpq_class> ratio_terms; // m+1 sigmas, then the final term

    int m() const { return static_cast<int>(lengths.size()) - 2; }
};

/// Runs the recursion x_{n+2} = x_{n+1} + c(x_{n+1} - 2 x_n) until the
/// first index with x_{m+1} <= 2 x_m, in exact rational arithmetic.
/// Throws Error{NonTerminating} if m_max is exceeded.
AdversarySequence gen_sequence(const AdversaryParams& params);

/// Integer tick lengths round(x_i * scale) for the whole sequence, exact.
std::vector<mpz_class> scaled_procs(const AdversarySequence& sequence, Tick scale);

/// The tight-job instance: job i released at i * epsilon_ticks with
/// proc = round(x_i * scale) and deadline = release + proc.
/// Throws Error{ScaleTooSmall} if any length rounds to zero and
/// Error{TickOverflow} if any tick quantity leaves the 64-bit range
/// (near the upper end of the c range the lengths grow beyond it; see
/// gen_instance_prefix for那 case).
Instance gen_instance(const AdversaryParams& params);

/// Longest prefix of the construction whose procs, deadlines, and total
/// work all stay within `budget` ticks. Lets desk-scale simulations run
/// against chains whose full form exceeds 64-bit ticks.
Instance gen_instance_prefix(const AdversaryParams& params,
                             Tick budget = Tick{1} << 62);

/// Outcome of enumerating every meaningful online strategy on the chain.
struct UpperBoundReport {
    double best_ratio = 0.0;
    int best_strategy = -1;            // decline index, or m+2 for accept-all
    std::vector<double> strategy_ratios;
    double tolerance = 0.0;            // (m+2)(epsilon+1)/min proc
    double target = 0.0;               // 1/c
    int m = 0;
    int oracle_checked_prefixes = 0;   // cross-checked against the general oracle
    int engine_checked_strategies = 0; // cross-checked against scripted engine runs
};

/// Enumerates the online scheduler's strategies on the generated chain —
/// decline at step k after accepting jobs 0..k-1, for each k, plus
/// accept-everything — on exact scaled ticks, and checks that the best
/// achievable ratio does not exceed 1/c plus the rounding tolerance.
///
/// The offline side of each strategy is cross-checked against the
/// general subset oracle, and the online side against a scripted engine
/// run, on every prefix that fits 64-bit ticks.
/// Throws Error{BoundViolated} naming the offending strategy.
UpperBoundReport verify_upper_bound(const AdversaryParams& params);

/// Exhaustively simulates all 2^(m+2) accept/decline patterns through the
/// engine (only sensible for m+2 <= 12) and checks each pattern's ratio
/// equals the decline-point enumeration for its first declined index.
/// Returns the number of patterns checked.
/// Throws Error{BoundViolated} on any disagreement.
int exhaustive_strategy_check(const AdversaryParams& params);

} // namespace commitsched
