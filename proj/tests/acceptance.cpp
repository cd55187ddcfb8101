// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Shares the corpus builders with the unit tests.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "commitsched/adversary.hpp"
#include "commitsched/analysis.hpp"
#include "commitsched/baselines.hpp"
#include "commitsched/dsc.hpp"
#include "commitsched/io.hpp"
#include "commitsched/oracle.hpp"
#include "partial_oracle.hpp"
#include "support.hpp"

using namespace commitsched;
namespace ct = commitsched::testing;

namespace {

constexpr double kRatioBound = 3.0 - 2.0 * 1.4142135623730951; // 3 - 2*sqrt(2)

struct Context {
    std::vector<std::pair<std::string, Instance>> corpus; // random + adversary chains
    std::size_t random_count = 0;
    std::vector<Tick> oracle_values;
    std::vector<SimulationResult> dsc_runs;
    double corpus_seconds = 0.0;
};

struct Harness {
    bool all_pass = true;

    void criterion(int number, const std::string& title, const std::function<std::string()>& body) {
        std::string detail;
        bool pass = true;
        try {
            detail = body();
        } catch (const std::exception& e) {
            pass = false;
            detail = std::string("exception: ") + e.what();
        }
        if (!detail.empty() && detail[0] == '!') {
            pass = false;
            detail = detail.substr(1);
        }
        std::printf("[%s] criterion %d: %s — %s\n", pass ? "PASS" : "FAIL", number, title.c_str(),
                    detail.c_str());
        std::fflush(stdout);
        all_pass = all_pass && pass;
    }
};

std::string format(const char* fmt, ...) {
    char buffer[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buffer, sizeof(buffer), fmt, args);
    va_end(args);
    return buffer;
}

Context build_context() {
    Context ctx;
    ctx.corpus = ct::criterion_corpus();
    ctx.random_count = ctx.corpus.size();
    for (auto& named : ct::adversary_corpus()) ctx.corpus.push_back(std::move(named));

    const auto start = std::chrono::steady_clock::now();
    ctx.oracle_values.reserve(ctx.corpus.size());
    ctx.dsc_runs.reserve(ctx.corpus.size());
    for (const auto& [name, instance] : ctx.corpus) {
        ctx.oracle_values.push_back(offline_optimal(instance, instance.size()).value);
        DscPolicy dsc;
        ctx.dsc_runs.push_back(run_simulation(instance, dsc));
    }
    ctx.corpus_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return ctx;
}

} // namespace

int main() {
    Harness harness;
    Context ctx = build_context();

    harness.criterion(1, "lower-bound achievability: DSC ratio >= 3 - 2*sqrt(2) corpus-wide", [&] {
        if (ctx.random_count < 500 + 6)
            return format("!corpus too small: %zu random instances", ctx.random_count);
        double min_ratio = 1.0;
        std::string argmin = "-";
        std::size_t rated = 0;
        for (std::size_t i = 0; i < ctx.corpus.size(); ++i) {
            if (ctx.oracle_values[i] == 0) continue;
            const double ratio =
                empirical_ratio(profit_of(ctx.dsc_runs[i].ledger), ctx.oracle_values[i]);
            ++rated;
            if (ratio < min_ratio) {
                min_ratio = ratio;
                argmin = ctx.corpus[i].first;
            }
            if (ratio < kRatioBound - 1e-9)
                return format("!%s has ratio %.9f < %.9f", ctx.corpus[i].first.c_str(), ratio,
                              kRatioBound);
        }
        if (ctx.corpus_seconds >= 60.0)
            return format("!corpus run took %.1f s (budget 60 s)", ctx.corpus_seconds);
        return format("%zu instances rated, min ratio %.9f (%s) >= %.9f, corpus in %.1f s", rated,
                      min_ratio, argmin.c_str(), kRatioBound, ctx.corpus_seconds);
    });

    harness.criterion(2, "upper-bound construction: best ratio <= 1/c + tol for the c family", [&] {
        const char* cs[] = {"1.5", "2", "3", "4", "5", "5.8"};
        std::string summary;
        for (const char* c : cs) {
            AdversaryParams params;
            params.c = parse_rational(c);
            const UpperBoundReport report = verify_upper_bound(params); // throws on violation
            if (report.best_ratio > report.target + report.tolerance)
                return format("!c=%s best %.9f above 1/c + tol", c, report.best_ratio);
            summary += format("c=%s:%.6f ", c, report.best_ratio);
            if (std::string(c) == "5.8") {
                if (std::abs(report.target - kRatioBound) > 8.5e-4)
                    return format("!1/5.8 sits %.2e from the bound, expected <= 8.5e-4",
                                  std::abs(report.target - kRatioBound));
            }
        }
        // exhaustive pattern cross-check wherever 2^(m+2) is tractable
        int patterns = 0;
        for (const char* c : {"1.5", "2", "3", "4", "5"}) {
            AdversaryParams params;
            params.c = parse_rational(c);
            patterns += exhaustive_strategy_check(params); // throws on disagreement
        }
        return format("%s| %d exhaustive patterns agree", summary.c_str(), patterns);
    });

    harness.criterion(3, "worked adversary sequence for c=4, exact rational mode", [&] {
        AdversaryParams params;
        params.c = parse_rational("4");
        const AdversarySequence seq = gen_sequence(params);
        const std::vector<mpq_class> expected = {1, 4, 12, 28, 44};
        if (seq.lengths != expected) return std::string("!lengths differ from [1,4,12,28,44]");
        for (int i = 0; i < 4; ++i)
            if (seq.ratio_terms[i] != mpq_class(1, 4))
                return format("!sigma_%d != 1/4 exactly", i + 1);
        if (!(seq.ratio_terms[4] < 0)) return std::string("!final term should be negative");
        for (std::size_t i = 2; i < seq.lengths.size(); ++i) {
            const mpq_class residual = (seq.lengths[i] - seq.lengths[i - 1]) -
                                       params.c * (seq.lengths[i - 1] - 2 * seq.lengths[i - 2]);
            if (residual != 0) return std::string("!nonzero recursion residual");
        }
        return std::string("lengths [1,4,12,28,44], sigma = 1/4 exactly, final term -1/44 < 0");
    });

    harness.criterion(4, "lemma suite: zero violations corpus-wide, checkers stay sensitive", [&] {
        const double beta = DscConfig::kDefaultBeta;
        std::size_t intervals_checked = 0;
        for (std::size_t i = 0; i < ctx.corpus.size(); ++i) {
            const auto reports =
                check_all_lemmas(ctx.dsc_runs[i].trace, ctx.corpus[i].second, beta);
            for (const LemmaReport& report : reports)
                if (!report.pass())
                    return format("!lemma %s violated on %s", report.lemma.c_str(),
                                  ctx.corpus[i].first.c_str());
            intervals_checked += busy_intervals(ctx.dsc_runs[i].trace).size();
        }

        // sensitivity: each checker must flag its doctored counter-input
        IntervalProfit base;
        base.interval = {0, 10};
        base.total = 10;
        base.peace = 10;

        IntervalProfit bad_capacity = base;
        bad_capacity.peace = 30;
        bad_capacity.contention = -20;
        if (check_lemma_capacity({bad_capacity}, beta).pass())
            return std::string("!capacity checker missed its counter-input");

        IntervalProfit bad_declined = base;
        bad_declined.declined.emplace_back(7, 1000);
        if (check_lemma_declined({bad_declined}, beta).pass())
            return std::string("!declined checker missed its counter-input");

        SimulationTrace gap_trace;
        {
            TraceEvent release{0, EventKind::Release, 0, Job::make(0, 0, 5, 8), 0, 0, 0, {}, {}};
            TraceEvent accept{0, EventKind::AcceptAppend, 0, {}, 0, 0, 0, {}, {}};
            TraceEvent exec{0, EventKind::Execute, 0, {}, 0, 3, 0, {}, {}};
            TraceEvent failed{8, EventKind::Fail, 0, {}, 0, 0, 2, {}, {}};
            gap_trace.events = {release, accept, exec, failed};
        }
        if (check_lemma_peace(gap_trace, busy_intervals(gap_trace)).pass())
            return std::string("!peace checker missed its counter-input");

        IntervalProfit bad_shortage = base;
        bad_shortage.total = 6;
        bad_shortage.peace = 6;
        bad_shortage.shortages[3] = 5;
        if (check_lemma_shortage({bad_shortage}).pass())
            return std::string("!shortage checker missed its counter-input");

        return format("4 lemmas x %zu traces (%zu busy intervals), all sensitive",
                      ctx.corpus.size(), intervals_checked);
    });

    harness.criterion(5, "oracle soundness: route agreement, partial-completion, dominance", [&] {
        // (a) both feasibility routes agree on 10^4 random subsets, n <= 12
        std::mt19937_64 rng(5050);
        for (int i = 0; i < 10'000; ++i) {
            const std::size_t n = 1 + rng() % 12;
            std::vector<Job> subset;
            for (std::size_t j = 0; j < n; ++j) {
                if (rng() % 2 == 0) continue;
                const Tick release = static_cast<Tick>(rng() % 30);
                const Tick proc = 1 + static_cast<Tick>(rng() % 12);
                const Tick slack = static_cast<Tick>(rng() % 15);
                subset.push_back(
                    Job::make(static_cast<JobId>(j), release, proc, release + proc + slack));
            }
            if (edf_feasible(subset) != interval_load_feasible(subset))
                return std::string("!feasibility routes disagree");
        }

        // (b) subset formulation == partial-completion optimum, 200 instances
        std::uint64_t seed = 1;
        int agreed = 0;
        std::mt19937_64 meta(606);
        while (agreed < 200) {
            RandomGenConfig config;
            config.seed = seed++;
            config.n = 1 + meta() % 6;
            config.proc_min = 1;
            config.proc_max = 6;
            config.laxity_min = 1.0;
            config.laxity_max = 2.5;
            config.arrival_mean = 3.0;
            const Instance instance = generate_random_instance(config);
            Tick horizon = 0;
            for (const Job& j : instance.jobs()) horizon = std::max(horizon, j.deadline);
            if (horizon > 24) continue;
            if (offline_optimal(instance).value != ct::partial_completion_optimum(instance))
                return format("!partial-completion optimum differs at seed %llu",
                              static_cast<unsigned long long>(config.seed));
            ++agreed;
        }

        // (c) oracle dominance over every policy, corpus-wide
        for (std::size_t i = 0; i < ctx.corpus.size(); ++i) {
            if (profit_of(ctx.dsc_runs[i].ledger) > ctx.oracle_values[i])
                return format("!dsc beats the oracle on %s", ctx.corpus[i].first.c_str());
            for (const char* name : {"admit-all-edf", "feasibility-guard"}) {
                auto policy = make_policy(name);
                if (profit_of(run_simulation(ctx.corpus[i].second, *policy).ledger) >
                    ctx.oracle_values[i])
                    return format("!%s beats the oracle on %s", name, ctx.corpus[i].first.c_str());
            }
        }
        return format("10^4 subsets agree, 200 partial-completion matches, dominance over %zu "
                      "instances x 3 policies",
                      ctx.corpus.size());
    });

    harness.criterion(6, "structural DSC properties and exact profit attribution", [&] {
        std::size_t contention_accepts = 0;
        for (std::size_t i = 0; i < ctx.corpus.size(); ++i) {
            ct::CheckingDscPolicy checking;
            const SimulationResult result = run_simulation(ctx.corpus[i].second, checking);
            if (!checking.violations.empty())
                return format("!%s on %s", checking.violations.front().c_str(),
                              ctx.corpus[i].first.c_str());

            std::int64_t total = 0;
            for (const IntervalProfit& p : interval_profits(result.trace, ctx.corpus[i].second)) {
                if (p.total != p.peace + p.contention)
                    return format("!interval profit sum broken on %s", ctx.corpus[i].first.c_str());
                total += p.total;
            }
            if (total != profit_of(result.ledger))
                return format("!attribution misses ledger profit on %s",
                              ctx.corpus[i].first.c_str());
            for (const TraceEvent& e : result.trace.events)
                contention_accepts += e.kind == EventKind::AcceptContention;
        }
        return format("appendable=>accept, no empty-schedule declines, tight contention "
                      "placement; %zu contention accepts audited",
                      contention_accepts);
    });

    harness.criterion(7, "determinism: byte-identical replay and thread-invariant batches", [&] {
        std::size_t hashed = 0;
        for (std::size_t i = 0; i < ctx.corpus.size(); ++i) {
            DscPolicy dsc;
            const SimulationResult replay = run_simulation(ctx.corpus[i].second, dsc);
            if (fnv1a(trace_to_jsonl(replay.trace)) != fnv1a(trace_to_jsonl(ctx.dsc_runs[i].trace)))
                return format("!trace hash mismatch on %s", ctx.corpus[i].first.c_str());
            ++hashed;
        }

        std::vector<std::pair<std::string, Instance>> sample;
        for (std::size_t i = 0; i < ctx.corpus.size(); i += 9) sample.push_back(ctx.corpus[i]);
        const std::vector<std::string> policies = {"dsc", "admit-all-edf", "feasibility-guard"};
        const CompetitiveReport serial =
            competitive_report(sample, policies, DscConfig::kDefaultBeta, 24, 1);
        const CompetitiveReport threaded =
            competitive_report(sample, policies, DscConfig::kDefaultBeta, 24, 4);
        if (serial.rows.size() != threaded.rows.size())
            return std::string("!batch runner row counts differ across thread settings");
        for (std::size_t i = 0; i < serial.rows.size(); ++i) {
            const ReportRow& a = serial.rows[i];
            const ReportRow& b = threaded.rows[i];
            const bool ratio_same = (a.ratio == b.ratio) || (std::isnan(a.ratio) && std::isnan(b.ratio));
            if (a.instance != b.instance || a.profit != b.profit ||
                a.oracle_value != b.oracle_value || !ratio_same)
                return std::string("!batch runner rows differ across thread settings");
        }
        return format("%zu traces replay hash-identically; %zu-instance batch matches across "
                      "1 and 4 threads",
                      hashed, sample.size());
    });

    return harness.all_pass ? 0 : 1;
}
