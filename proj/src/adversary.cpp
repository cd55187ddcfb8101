#include "commitsched/adversary.hpp"

#include <algorithm>
#include <cassert>

#include "commitsched/engine.hpp"
#include "commitsched/oracle.hpp"

namespace commitsched {

namespace {

mpz_class round_to_integer(const mpq_class& value) {
    // round half away from zero; sequence values are positive
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
    if (2 * r >= value.get_den()) ++q;
    return q;
}

bool fits_tick(const mpz_class& value) { return value.fits_slong_p(); }

Tick to_tick(const mpz_class& value) {
    if (!fits_tick(value)) fail(Errc::TickOverflow, "tick quantity exceeds the 64-bit range");
    return static_cast<Tick>(value.get_si());
}

/// Follows a fixed accept prefix and declines from `decline_at` onward.
/// Accepting means appending when possible, tight-scheduling otherwise.
class ScriptedChainPolicy final : public OnlinePolicy {
public:
    explicit ScriptedChainPolicy(std::size_t decline_at) : decline_at_(decline_at) {}

    std::string_view name() const override { return "scripted-chain"; }

    PolicyDecision decide(const Job& job, const TentativeSchedule& schedule, Tick now) override {
        const std::size_t index = next_index_++;
        if (index >= decline_at_) return PolicyDecision::decline();
        if (is_appendable(job, schedule, now)) return PolicyDecision::accept_append();
        auto [inserted, affected] = contention_insert(job, schedule, now);
        return PolicyDecision::accept_contention(std::move(inserted), std::move(affected));
    }

private:
    std::size_t decline_at_;
    std::size_t next_index_ = 0;
};

struct StrategyValues {
    mpz_class online;
    mpz_class offline;
};

// Strategy k in 0..m+1: accept jobs 0..k-1, decline job k (the chain then
// stops). Strategy m+2: accept everything. The accepted job T_j runs only
// epsilon ticks before the next tight job takes over, except the last
// accepted one, which completes.
StrategyValues strategy_values(const std::vector<mpz_class>& procs, Tick epsilon,
                               std::size_t strategy) {
    const std::size_t n = procs.size();
    const std::size_t last_accepted = std::min(strategy, n) - (strategy == 0 ? 0 : 1);
    StrategyValues values;
    if (strategy == 0) {
        values.online = 0;
        values.offline = procs[0];
        return values;
    }
    values.online = procs[last_accepted];
    for (std::size_t j = 0; j < last_accepted; ++j)
        values.online -= procs[j] - epsilon;
    values.offline = procs[std::min(strategy, n - 1)];
    return values;
}

} // namespace

mpq_class parse_rational(const std::string& text) {
    auto malformed = [&] { fail(Errc::ConfigError, "cannot parse '" + text + "' as a rational"); };
    if (text.empty()) malformed();

    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        mpq_class q;
        if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0) malformed();
        q.canonicalize();
        return q;
    }

    std::string digits;
    std::size_t frac_digits = 0;
    bool seen_dot = false;
    std::size_t i = 0;
    if (text[i] == '+' || text[i] == '-') {
        if (text[i] == '-') digits += '-';
        ++i;
    }
    bool any = false;
    for (; i < text.size(); ++i) {
        if (text[i] == '.') {
            if (seen_dot) malformed();
            seen_dot = true;
        } else if (text[i] >= '0' && text[i] <= '9') {
            digits += text[i];
            if (seen_dot) ++frac_digits;
            any = true;
        } else {
            malformed();
        }
    }
    if (!any) malformed();

    mpz_class num(digits, 10); // explicit base: never octal-from-leading-zero
    mpz_class den = 1;
    for (std::size_t k = 0; k < frac_digits; ++k) den *= 10;
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

void AdversaryParams::validate() const {
    if (scale < 1) fail(Errc::InvalidParams, "scale must be a positive tick count");
    if (epsilon_ticks < 1) fail(Errc::InvalidParams, "epsilon must be a positive tick count");
    if (m_max < 1) fail(Errc::InvalidParams, "m_max must be positive");
    if (!(c > 1)) fail(Errc::InvalidParams, "c must exceed 1");
    // complex characteristic roots: c^2 - 6c + 1 < 0, exact in rationals
    if (!(c * c - 6 * c + 1 < 0))
        fail(Errc::InvalidParams, "c must be below 3 + 2*sqrt(2) ~ 5.8284");
}

AdversarySequence gen_sequence(const AdversaryParams& params) {
    params.validate();
    AdversarySequence seq;
    seq.lengths.push_back(1);
    seq.lengths.push_back(params.c);
    while (seq.lengths.back() > 2 * seq.lengths[seq.lengths.size() - 2]) {
        if (static_cast<int>(seq.lengths.size()) > params.m_max + 2)
            fail(Errc::NonTerminating, "recursion exceeded m_max; c out of range or drifting");
        const mpq_class& x1 = seq.lengths[seq.lengths.size() - 1];
        const mpq_class& x0 = seq.lengths[seq.lengths.size() - 2];
        seq.lengths.push_back(x1 + params.c * (x1 - 2 * x0));
    }

    mpq_class prefix_sum = 0; // sum of x_j for j < i
    for (std::size_t i = 0; i + 1 < seq.lengths.size(); ++i) {
        seq.ratio_terms.push_back((seq.lengths[i] - prefix_sum) / seq.lengths[i + 1]);
        prefix_sum += seq.lengths[i];
    }
    seq.ratio_terms.push_back((seq.lengths.back() - prefix_sum) / seq.lengths.back());
    return seq;
}

std::vector<mpz_class> scaled_procs(const AdversarySequence& sequence, Tick scale) {
    std::vector<mpz_class> procs;
    procs.reserve(sequence.lengths.size());
    for (const mpq_class& x : sequence.lengths) procs.push_back(round_to_integer(x * scale));
    return procs;
}

namespace {

Instance instance_from_procs(const std::vector<mpz_class>& procs, std::size_t count,
                             Tick epsilon) {
    std::vector<Job> jobs;
    jobs.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const Tick release = static_cast<Tick>(i) * epsilon;
        const Tick proc = to_tick(procs[i]);
        jobs.push_back(Job::make(static_cast<JobId>(i), release, proc, release + proc));
    }
    return Instance::make(std::move(jobs));
}

} // namespace

Instance gen_instance(const AdversaryParams& params) {
    const AdversarySequence seq = gen_sequence(params);
    const std::vector<mpz_class> procs = scaled_procs(seq, params.scale);
    for (std::size_t i = 0; i < procs.size(); ++i) {
        if (procs[i] == 0)
            fail(Errc::ScaleTooSmall, "x_" + std::to_string(i) + " rounds to zero ticks");
        const mpz_class deadline = mpz_class(static_cast<long>(i) * params.epsilon_ticks) + procs[i];
        if (!fits_tick(deadline))
            fail(Errc::TickOverflow,
                 "job " + std::to_string(i) + " does not fit 64-bit ticks at this scale; "
                 "use gen_instance_prefix or verify_upper_bound for this c");
    }
    return instance_from_procs(procs, procs.size(), params.epsilon_ticks);
}

Instance gen_instance_prefix(const AdversaryParams& params, Tick budget) {
    const AdversarySequence seq = gen_sequence(params);
    const std::vector<mpz_class> procs = scaled_procs(seq, params.scale);
    const mpz_class cap = budget;
    mpz_class total = 0;
    std::size_t count = 0;
    while (count < procs.size()) {
        if (procs[count] == 0)
            fail(Errc::ScaleTooSmall, "x_" + std::to_string(count) + " rounds to zero ticks");
        total += procs[count] + params.epsilon_ticks;
        if (total > cap) break;
        ++count;
    }
    if (count == 0) fail(Errc::TickOverflow, "not even the first job fits the tick budget");
    return instance_from_procs(procs, count, params.epsilon_ticks);
}

UpperBoundReport verify_upper_bound(const AdversaryParams& params) {
    params.validate();
    const AdversarySequence seq = gen_sequence(params);
    const std::vector<mpz_class> procs = scaled_procs(seq, params.scale);
    const std::size_t n = procs.size();
    if (params.scale <= params.epsilon_ticks * static_cast<Tick>(n))
        fail(Errc::InvalidParams,
             "epsilon too large relative to scale; the chain jobs must pairwise overlap");

    UpperBoundReport report;
    report.m = seq.m();
    report.target = mpq_class(1 / params.c).get_d();
    report.tolerance = static_cast<double>((seq.m() + 2) * (params.epsilon_ticks + 1)) /
                       mpq_class(procs[0]).get_d();

    // every prefix that fits the engine's tick range gets double-checked:
    // the offline value against the subset oracle, the online value
    // against a scripted run
    mpz_class representable_total = 0;
    std::size_t representable = 0;
    const mpz_class engine_cap = mpz_class(1) << 62;
    while (representable < n) {
        representable_total += procs[representable] + params.epsilon_ticks;
        if (representable_total > engine_cap) break;
        ++representable;
    }

    for (std::size_t strategy = 0; strategy <= n; ++strategy) {
        const StrategyValues values = strategy_values(procs, params.epsilon_ticks, strategy);
        const std::size_t prefix_len = std::min(strategy + 1, n);

        assert(values.offline > 0);
        const double ratio = mpq_class(mpq_class(values.online) / values.offline).get_d();
        report.strategy_ratios.push_back(ratio);
        if (report.best_strategy < 0 || ratio > report.best_ratio) {
            report.best_ratio = ratio;
            report.best_strategy = static_cast<int>(strategy);
        }

        if (prefix_len <= representable) {
            const Instance prefix = instance_from_procs(procs, prefix_len, params.epsilon_ticks);
            const OracleResult offline = offline_optimal(prefix, prefix_len);
            if (mpz_class(offline.value) != values.offline)
                fail(Errc::BoundViolated,
                     "offline oracle disagrees with the chain value at strategy " +
                         std::to_string(strategy));
            ++report.oracle_checked_prefixes;

            ScriptedChainPolicy policy(strategy);
            const SimulationResult run = run_simulation(prefix, policy);
            if (mpz_class(profit_of(run.ledger)) != values.online)
                fail(Errc::BoundViolated,
                     "engine profit disagrees with the chain value at strategy " +
                         std::to_string(strategy));
            ++report.engine_checked_strategies;
        }
    }

    if (report.best_ratio > report.target + report.tolerance)
        fail(Errc::BoundViolated, "strategy " + std::to_string(report.best_strategy) +
                                      " achieves ratio " + std::to_string(report.best_ratio) +
                                      " above 1/c + tol");
    return report;
}

int exhaustive_strategy_check(const AdversaryParams& params) {
    const AdversarySequence seq = gen_sequence(params);
    const std::vector<mpz_class> procs = scaled_procs(seq, params.scale);
    const std::size_t n = procs.size();
    if (n > 12)
        fail(Errc::InstanceTooLarge, "exhaustive pattern check is limited to m+2 <= 12 jobs");

    // cache per first-decline index: (online, offline) pair on ticks
    std::vector<StrategyValues> by_decline_point;
    for (std::size_t k = 0; k <= n; ++k)
        by_decline_point.push_back(strategy_values(procs, params.epsilon_ticks, k));

    int checked = 0;
    for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << n); ++pattern) {
        std::size_t first_decline = n; // no decline: accept-all
        for (std::size_t i = 0; i < n; ++i) {
            if (!(pattern & (std::uint64_t{1} << i))) {
                first_decline = i;
                break;
            }
        }
        // the adversary stops releasing after the first decline, so
        // the effective instance is the prefix up to that job
        const std::size_t prefix_len = std::min(first_decline + 1, n);
        const Instance prefix = instance_from_procs(procs, prefix_len, params.epsilon_ticks);
        ScriptedChainPolicy policy(first_decline);
        const SimulationResult run = run_simulation(prefix, policy);
        const OracleResult offline = offline_optimal(prefix, prefix_len);

        const StrategyValues& expected = by_decline_point[first_decline];
        if (mpz_class(profit_of(run.ledger)) != expected.online ||
            mpz_class(offline.value) != expected.offline)
            fail(Errc::BoundViolated,
                 "pattern " + std::to_string(pattern) +
                     " disagrees with decline-point " + std::to_string(first_decline));
        ++checked;
    }
    return checked;
}

} // namespace commitsched
