#include <doctest.h>

#include "commitsched/analysis.hpp"
#include "commitsched/baselines.hpp"
#include "commitsched/dsc.hpp"
#include "commitsched/oracle.hpp"
#include "support.hpp"

#include <cmath>

using namespace commitsched;
using testing::job;

namespace {

SimulationResult run_dsc(const Instance& instance) {
    DscPolicy dsc;
    return run_simulation(instance, dsc);
}

TraceEvent event(Tick t, EventKind kind) {
    TraceEvent e;
    e.time = t;
    e.kind = kind;
    return e;
}

} // namespace

TEST_CASE("busy_intervals merges contiguous execution and keeps gaps apart") {
    const SimulationResult single = run_dsc(testing::instance_of({job(0, 0, 5, 5)}));
    CHECK(busy_intervals(single.trace) == std::vector<BusyInterval>{{0, 5}});

    const SimulationResult gapped =
        run_dsc(testing::instance_of({job(0, 0, 5, 5), job(1, 9, 2, 11)}));
    CHECK(busy_intervals(gapped.trace) == std::vector<BusyInterval>{{0, 5}, {9, 11}});
}

TEST_CASE("busy_intervals: the c=4 chain is one interval from zero") {
    AdversaryParams params;
    params.c = parse_rational("4");
    const SimulationResult result = run_dsc(gen_instance(params));
    const std::vector<BusyInterval> intervals = busy_intervals(result.trace);
    REQUIRE(intervals.size() == 1);
    CHECK(intervals[0].start == 0);
    CHECK(intervals[0].end == 12'000'002);
}

TEST_CASE("busy_intervals rejects overlapping execution") {
    SimulationTrace trace;
    TraceEvent a = event(0, EventKind::Execute);
    a.job = 0;
    a.start = 0;
    a.end = 5;
    TraceEvent b = event(3, EventKind::Execute);
    b.job = 1;
    b.start = 3;
    b.end = 6;
    trace.events = {a, b};
    CHECK_THROWS_WITH_AS(busy_intervals(trace), doctest::Contains("MalformedTrace"), Error);
}

TEST_CASE("interval_profits: all-appendable traces have zero contention profit") {
    const Instance instance = testing::instance_of(
        {job(0, 0, 3, 10), job(1, 1, 2, 20), job(2, 8, 4, 30), job(3, 40, 5, 50)});
    const SimulationResult result = run_dsc(instance);
    for (const IntervalProfit& p : interval_profits(result.trace, instance)) {
        CHECK(p.contention == 0);
        CHECK(p.total == p.peace);
    }
}

TEST_CASE("interval_profits splits peace and contention profit per interval") {
    // T0 appends on [0,4]; tight T1 displaces it (no loss) and both finish
    const Instance instance = testing::instance_of({job(0, 0, 4, 20), job(1, 0, 10, 10)});
    const SimulationResult result = run_dsc(instance);
    CHECK(profit_of(result.ledger) == 14);

    const std::vector<IntervalProfit> profits = interval_profits(result.trace, instance);
    REQUIRE(profits.size() == 1);
    CHECK(profits[0].interval == BusyInterval{0, 14});
    CHECK(profits[0].peace == 4);
    CHECK(profits[0].contention == 10);
    CHECK(profits[0].total == 14);
    CHECK(profits[0].shortages.empty());
    CHECK(profits[0].declined.empty());
}

TEST_CASE("interval_profits rejects jobs counted twice") {
    const Instance instance = testing::instance_of({job(0, 0, 5, 5)});
    SimulationResult result = run_dsc(instance);
    // duplicate the completion event
    for (const TraceEvent& e : std::vector<TraceEvent>(result.trace.events))
        if (e.kind == EventKind::Complete) result.trace.events.push_back(e);
    CHECK_THROWS_WITH_AS(interval_profits(result.trace, instance),
                         doctest::Contains("MalformedTrace"), Error);
}

TEST_CASE("interval_profits wants threshold-policy metadata") {
    const Instance instance = testing::instance_of({job(0, 0, 5, 5), job(1, 0, 5, 5)});
    auto edf = admit_all_edf_policy();
    const SimulationResult result = run_simulation(instance, *edf);
    CHECK_THROWS_WITH_AS(interval_profits(result.trace, instance),
                         doctest::Contains("NotADscTrace"), Error);
}

TEST_CASE("attribution is complete: interval totals sum to the ledger profit") {
    for (const Instance& instance : testing::fuzz_corpus(80, 2718)) {
        const SimulationResult result = run_dsc(instance);
        std::int64_t total = 0;
        for (const IntervalProfit& p : interval_profits(result.trace, instance)) {
            CHECK(p.total == p.peace + p.contention);
            total += p.total;
        }
        CHECK(total == profit_of(result.ledger));
    }
}

TEST_CASE("every declined release sits inside a busy interval") {
    for (const Instance& instance : testing::fuzz_corpus(60, 1618)) {
        const SimulationResult result = run_dsc(instance);
        const std::vector<BusyInterval> intervals = busy_intervals(result.trace);
        std::map<JobId, Tick> releases;
        for (const Job& j : instance.jobs()) releases[j.id] = j.release;
        for (const TraceEvent& e : result.trace.events) {
            if (e.kind != EventKind::Decline) continue;
            bool inside = false;
            for (const BusyInterval& b : intervals) inside = inside || b.contains(releases[e.job]);
            CHECK(inside);
        }
    }
}

TEST_CASE("lemma suite passes over the fuzz corpus") {
    const double beta = DscConfig::kDefaultBeta;
    for (const Instance& instance : testing::fuzz_corpus(150, 31415)) {
        const SimulationResult result = run_dsc(instance);
        for (const LemmaReport& report : check_all_lemmas(result.trace, instance, beta)) {
            CHECK(report.pass());
            if (!report.pass()) {
                CAPTURE(report.lemma);
                CAPTURE(instance.size());
            }
        }
    }
}

TEST_CASE("capacity checker: equality case and doctored sensitivity") {
    const double beta = DscConfig::kDefaultBeta;
    IntervalProfit clean;
    clean.interval = {0, 10};
    clean.total = 10;
    clean.peace = 10;
    clean.contention = 0;
    CHECK(check_lemma_capacity({clean}, beta).pass()); // |B| == T_B exactly

    IntervalProfit doctored = clean;
    doctored.contention = -20; // flips the slack term negative
    doctored.peace = 30;
    const LemmaReport report = check_lemma_capacity({doctored}, beta);
    REQUIRE_FALSE(report.pass());
    CHECK(report.violations[0].lhs > report.violations[0].rhs);
}

TEST_CASE("declined checker: vacuous pass and doctored sensitivity") {
    const double beta = DscConfig::kDefaultBeta;
    IntervalProfit no_declines;
    no_declines.interval = {0, 10};
    no_declines.total = 10;
    no_declines.peace = 10;
    CHECK(check_lemma_declined({no_declines}, beta).pass());

    IntervalProfit doctored = no_declines;
    doctored.declined.emplace_back(7, 1000); // a deadline no DSC decline could carry
    const LemmaReport report = check_lemma_declined({doctored}, beta);
    REQUIRE_FALSE(report.pass());
    CHECK(report.violations[0].job == 7);
}

TEST_CASE("peace checker: idle gap inside a failed peace job's window") {
    // hand-built trace: peace job fails but the machine went idle inside
    // its window, which the real scheduler would never allow
    SimulationTrace trace;
    TraceEvent release = event(0, EventKind::Release);
    release.job = 0;
    release.job_detail = job(0, 0, 5, 8);
    TraceEvent accept = event(0, EventKind::AcceptAppend);
    accept.job = 0;
    TraceEvent exec = event(0, EventKind::Execute);
    exec.job = 0;
    exec.start = 0;
    exec.end = 3;
    TraceEvent failed = event(8, EventKind::Fail);
    failed.job = 0;
    failed.shortage = 2;
    trace.events = {release, accept, exec, failed};

    const LemmaReport report = check_lemma_peace(trace, busy_intervals(trace));
    REQUIRE_FALSE(report.pass());
    CHECK(report.violations[0].job == 0);

    // contention-scheduled failures are out of this lemma's scope
    SimulationTrace contention_trace = trace;
    contention_trace.events[1] = event(0, EventKind::AcceptContention);
    contention_trace.events[1].job = 0;
    contention_trace.events[1].quote = ProfitQuote{};
    CHECK(check_lemma_peace(contention_trace, busy_intervals(contention_trace)).pass());
}

TEST_CASE("shortage checker: clean pass and doctored sensitivity") {
    IntervalProfit clean;
    clean.interval = {0, 10};
    clean.total = 6;
    clean.peace = 6;
    clean.shortages[3] = 4; // 4 <= 10 - 6
    CHECK(check_lemma_shortage({clean}).pass());

    IntervalProfit doctored = clean;
    doctored.shortages[3] = 5; // 5 > 10 - 6
    CHECK_FALSE(check_lemma_shortage({doctored}).pass());
}

TEST_CASE("competitive_report tabulates ratios and per-policy minima") {
    std::vector<std::pair<std::string, Instance>> instances;
    instances.emplace_back("underloaded", testing::instance_of({job(0, 0, 2, 10), job(1, 0, 3, 10)}));
    AdversaryParams params;
    params.c = parse_rational("4");
    instances.emplace_back("chain4", gen_instance(params));

    const std::vector<std::string> policies = {"dsc", "admit-all-edf", "feasibility-guard"};
    const CompetitiveReport report =
        competitive_report(instances, policies, DscConfig::kDefaultBeta, 20, 1);

    REQUIRE(report.rows.size() == 6);
    const double bound = 3.0 - 2.0 * std::sqrt(2.0);
    for (const ReportRow& row : report.rows) {
        CHECK(row.ratio <= 1.0 + 1e-12); // oracle dominance
        if (row.policy == "dsc") CHECK(row.ratio >= bound - 1e-9);
    }
    REQUIRE(report.policy_minima.size() == 3);
    CHECK(report.policy_minima.at("dsc") >= bound - 1e-9);
    CHECK(report.policy_minima.at("admit-all-edf") < report.policy_minima.at("dsc"));

    // thread count does not change anything
    const CompetitiveReport threaded =
        competitive_report(instances, policies, DscConfig::kDefaultBeta, 20, 3);
    REQUIRE(threaded.rows.size() == report.rows.size());
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        CHECK(threaded.rows[i].profit == report.rows[i].profit);
        CHECK(threaded.rows[i].ratio == report.rows[i].ratio);
    }
}
