// commitsched: simulate and verify online deadline scheduling with
// admission commitment. Subcommands generate instances, run policies,
// compute the exact offline optimum, check structural lemmas on traces,
// and tabulate competitive ratios.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "commitsched/adversary.hpp"
#include "commitsched/analysis.hpp"
#include "commitsched/baselines.hpp"
#include "commitsched/gen.hpp"
#include "commitsched/io.hpp"
#include "commitsched/oracle.hpp"

namespace cs = commitsched;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitMalformedInput = 2;
constexpr int kExitConfigError = 3;

int exit_code_for(const cs::Error& error) {
    switch (error.code()) {
    case cs::Errc::ConfigError:
    case cs::Errc::UnknownPolicy:
    case cs::Errc::InvalidParams:
    case cs::Errc::NonTerminating:
    case cs::Errc::ScaleTooSmall:
    case cs::Errc::TickOverflow:
        return kExitConfigError;
    default:
        return kExitMalformedInput;
    }
}

struct GenRandomArgs {
    cs::RandomGenConfig config;
    double load_factor = 0.0;
    bool has_load_factor = false;
    std::string output;
};

int cmd_gen_random(GenRandomArgs& args) {
    if (const char* env_seed = std::getenv("COMMITSCHED_SEED"))
        args.config.seed = std::strtoull(env_seed, nullptr, 10);
    if (args.has_load_factor) args.config.load_factor = args.load_factor;

    const cs::Instance instance = cs::generate_random_instance(args.config);
    cs::save_instance(instance, args.output);

    ordered_json info;
    info["file"] = args.output;
    info["n"] = instance.size();
    info["seed"] = args.config.seed;
    info["loadFactor"] = cs::realized_load_factor(instance);
    std::cout << info.dump(2) << "\n";
    return kExitOk;
}

struct GenAdversaryArgs {
    std::string c;
    cs::Tick scale = 1'000'000;
    cs::Tick epsilon = 1;
    cs::Tick tick_budget = 0; // 0: full instance
    std::string output;
};

int cmd_gen_adversary(const GenAdversaryArgs& args) {
    cs::AdversaryParams params;
    params.c = cs::parse_rational(args.c);
    params.scale = args.scale;
    params.epsilon_ticks = args.epsilon;
    const cs::Instance instance = args.tick_budget > 0
                                      ? cs::gen_instance_prefix(params, args.tick_budget)
                                      : cs::gen_instance(params);
    cs::save_instance(instance, args.output);

    ordered_json info;
    info["file"] = args.output;
    info["n"] = instance.size();
    info["m"] = cs::gen_sequence(params).m();
    std::cout << info.dump(2) << "\n";
    return kExitOk;
}

struct RunArgs {
    std::string instance_path;
    std::string policy = "dsc";
    std::string beta = "2.41421356237309515";
    std::string trace_path;
    std::string summary_path;
};

double parse_beta(const std::string& text) {
    try {
        std::size_t used = 0;
        const double beta = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return beta;
    } catch (const std::exception&) {
        cs::fail(cs::Errc::ConfigError, "cannot parse beta '" + text + "'");
    }
}

int cmd_run(const RunArgs& args) {
    const cs::Instance instance = cs::load_instance(args.instance_path);
    cs::DscConfig config{parse_beta(args.beta)};
    auto policy = cs::make_policy(args.policy, config);

    cs::SimulationResult result;
    if (!args.trace_path.empty()) {
        const std::filesystem::path tmp = args.trace_path + ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) cs::fail(cs::Errc::IoError, "cannot write " + tmp.string());
            cs::TraceSink sink = [&out](const cs::TraceEvent& event) {
                out << cs::trace_event_to_json(event) << '\n';
            };
            result = cs::run_simulation(instance, *policy, sink);
            if (!out.flush()) cs::fail(cs::Errc::IoError, "write failed for " + tmp.string());
        }
        std::filesystem::rename(tmp, args.trace_path);
    } else {
        result = cs::run_simulation(instance, *policy);
    }

    const std::string summary = cs::summary_to_json(cs::summarize(result.ledger));
    if (!args.summary_path.empty()) cs::write_file_atomic(args.summary_path, summary);
    std::cout << summary;
    return kExitOk;
}

struct OracleArgs {
    std::string instance_path;
    std::size_t limit = 20;
};

int cmd_oracle(const OracleArgs& args) {
    const cs::Instance instance = cs::load_instance(args.instance_path);
    std::cout << cs::oracle_result_to_json(cs::offline_optimal(instance, args.limit));
    return kExitOk;
}

struct CheckArgs {
    std::string instance_path;
    std::string trace_path;
    std::string beta = "2.41421356237309515";
};

int cmd_check(const CheckArgs& args) {
    const cs::Instance instance = cs::load_instance(args.instance_path);
    const cs::SimulationTrace trace = cs::load_trace(args.trace_path);
    const double beta = parse_beta(args.beta);

    const std::vector<cs::LemmaReport> reports = cs::check_all_lemmas(trace, instance, beta);

    ordered_json out;
    out["intervals"] = cs::busy_intervals(trace).size();
    out["lemmas"] = ordered_json::array();
    bool all_pass = true;
    for (const cs::LemmaReport& report : reports) {
        ordered_json lemma;
        lemma["lemma"] = report.lemma;
        lemma["pass"] = report.pass();
        lemma["violations"] = ordered_json::array();
        for (const cs::LemmaViolation& v : report.violations) {
            lemma["violations"].push_back(ordered_json{
                {"interval", v.interval_index}, {"job", v.job}, {"lhs", v.lhs}, {"rhs", v.rhs}});
        }
        out["lemmas"].push_back(std::move(lemma));
        all_pass = all_pass && report.pass();
    }
    out["allPass"] = all_pass;
    std::cout << out.dump(2) << "\n";
    return all_pass ? kExitOk : kExitViolation;
}

struct ReportArgs {
    std::string directory;
    std::vector<std::string> policies = {"dsc", "admit-all-edf", "feasibility-guard"};
    std::string beta = "2.41421356237309515";
    std::size_t oracle_limit = 20;
    unsigned threads = 1;
    std::string output;
};

std::string csv_double(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.9f", value);
    return buffer;
}

int cmd_report(const ReportArgs& args) {
    std::vector<std::pair<std::string, cs::Instance>> instances;
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(args.directory))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& path : files)
        instances.emplace_back(path.filename().string(), cs::load_instance(path));

    const cs::CompetitiveReport report = cs::competitive_report(
        instances, args.policies, parse_beta(args.beta), args.oracle_limit, args.threads);

    std::string csv = "instance,policy,profit,oracle,ratio\n";
    for (const cs::ReportRow& row : report.rows) {
        csv += row.instance + "," + row.policy + "," + std::to_string(row.profit) + "," +
               std::to_string(row.oracle_value) + "," + csv_double(row.ratio) + "\n";
    }
    for (const auto& [policy, minimum] : report.policy_minima)
        csv += "minimum," + policy + ",,," + csv_double(minimum) + "\n";

    if (!args.output.empty())
        cs::write_file_atomic(args.output, csv);
    else
        std::cout << csv;
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"online deadline scheduling with commitment: simulator and verifier"};
    app.require_subcommand(1);

    GenRandomArgs gen_random;
    CLI::App* sub_gen_random = app.add_subcommand("gen-random", "generate a random instance file");
    sub_gen_random->add_option("--seed", gen_random.config.seed, "RNG seed (env COMMITSCHED_SEED overrides)");
    sub_gen_random->add_option("--n", gen_random.config.n, "number of jobs");
    sub_gen_random->add_option("--arrival-mean", gen_random.config.arrival_mean,
                               "geometric inter-arrival mean in ticks");
    sub_gen_random->add_option("--proc-min", gen_random.config.proc_min, "minimum processing time");
    sub_gen_random->add_option("--proc-max", gen_random.config.proc_max, "maximum processing time");
    sub_gen_random->add_option("--laxity-min", gen_random.config.laxity_min,
                               "minimum deadline/proc multiplier (>= 1)");
    sub_gen_random->add_option("--laxity-max", gen_random.config.laxity_max,
                               "maximum deadline/proc multiplier");
    sub_gen_random->add_option("--load-factor", gen_random.load_factor,
                               "target sum(proc)/horizon; overrides --arrival-mean")
        ->check(CLI::PositiveNumber);
    sub_gen_random->add_option("-o,--output", gen_random.output, "instance file to write")
        ->required();

    GenAdversaryArgs gen_adversary;
    CLI::App* sub_gen_adversary =
        app.add_subcommand("gen-adversary", "generate the escalating tight-job chain");
    sub_gen_adversary->add_option("--c", gen_adversary.c, "growth parameter, 1 < c < 3+2*sqrt(2)")
        ->required();
    sub_gen_adversary->add_option("--scale", gen_adversary.scale, "ticks per unit length");
    sub_gen_adversary->add_option("--epsilon", gen_adversary.epsilon, "release spacing in ticks");
    sub_gen_adversary->add_option("--tick-budget", gen_adversary.tick_budget,
                                  "truncate to the longest prefix within this tick budget");
    sub_gen_adversary->add_option("-o,--output", gen_adversary.output, "instance file to write")
        ->required();

    RunArgs run;
    CLI::App* sub_run = app.add_subcommand("run", "simulate a policy over an instance");
    sub_run->add_option("-i,--instance", run.instance_path, "instance file")->required();
    sub_run->add_option("--policy", run.policy, "dsc | admit-all-edf | feasibility-guard");
    sub_run->add_option("--beta", run.beta, "admission threshold parameter (decimal string)");
    sub_run->add_option("--trace", run.trace_path, "write the event trace (JSON lines)");
    sub_run->add_option("--summary", run.summary_path, "write the summary record");

    OracleArgs oracle;
    CLI::App* sub_oracle = app.add_subcommand("oracle", "exact offline-optimal value and witness");
    sub_oracle->add_option("-i,--instance", oracle.instance_path, "instance file")->required();
    sub_oracle->add_option("--limit", oracle.limit, "maximum instance size to enumerate");

    CheckArgs check;
    CLI::App* sub_check = app.add_subcommand("check", "verify the structural lemmas on a trace");
    sub_check->add_option("-i,--instance", check.instance_path, "instance file")->required();
    sub_check->add_option("-t,--trace", check.trace_path, "trace file from 'run'")->required();
    sub_check->add_option("--beta", check.beta, "threshold parameter used for the run");

    ReportArgs report;
    CLI::App* sub_report =
        app.add_subcommand("report", "competitive-ratio table over a directory of instances");
    sub_report->add_option("--dir", report.directory, "directory of instance .json files")
        ->required();
    sub_report->add_option("--policies", report.policies, "policies to compare")->delimiter(',');
    sub_report->add_option("--beta", report.beta, "threshold parameter for dsc");
    sub_report->add_option("--limit", report.oracle_limit, "oracle size limit");
    sub_report->add_option("--threads", report.threads, "parallel instance runs");
    sub_report->add_option("-o,--output", report.output, "CSV file (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfigError;
    }

    try {
        if (sub_gen_random->parsed()) {
            gen_random.has_load_factor = sub_gen_random->count("--load-factor") > 0;
            return cmd_gen_random(gen_random);
        }
        if (sub_gen_adversary->parsed()) return cmd_gen_adversary(gen_adversary);
        if (sub_run->parsed()) return cmd_run(run);
        if (sub_oracle->parsed()) return cmd_oracle(oracle);
        if (sub_check->parsed()) return cmd_check(check);
        if (sub_report->parsed()) return cmd_report(report);
    } catch (const cs::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMalformedInput;
    }
    return kExitConfigError;
}
