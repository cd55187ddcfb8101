#include "commitsched/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace commitsched {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json job_to_json(const Job& job) {
    return ordered_json{{"id", job.id}, {"r", job.release}, {"p", job.proc}, {"d", job.deadline}};
}

Job job_from_json(const ordered_json& j) {
    Job job;
    job.id = j.at("id").get<JobId>();
    job.release = j.at("r").get<Tick>();
    job.proc = j.at("p").get<Tick>();
    job.deadline = j.at("d").get<Tick>();
    job.value = j.contains("v") ? j.at("v").get<Tick>() : job.proc;
    validate_job(job);
    return job;
}

} // namespace

std::string instance_to_json(const Instance& instance) {
    ordered_json root;
    root["version"] = 1;
    root["jobs"] = ordered_json::array();
    for (const Job& job : instance.jobs()) root["jobs"].push_back(job_to_json(job));
    return root.dump(2) + "\n";
}

Instance instance_from_json(const std::string& text) {
    ordered_json root;
    try {
        root = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::IoError, std::string("instance file is not valid JSON: ") + e.what());
    }
    try {
        if (root.at("version").get<int>() != 1)
            fail(Errc::IoError, "unsupported instance file version");
        std::vector<Job> jobs;
        for (const ordered_json& j : root.at("jobs")) jobs.push_back(job_from_json(j));
        return Instance::make(std::move(jobs));
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::IoError, std::string("instance file has a malformed field: ") + e.what());
    }
}

void save_instance(const Instance& instance, const std::filesystem::path& path) {
    write_file_atomic(path, instance_to_json(instance));
}

Instance load_instance(const std::filesystem::path& path) {
    return instance_from_json(read_file(path));
}

std::string trace_event_to_json(const TraceEvent& event) {
    ordered_json j;
    j["t"] = event.time;
    j["kind"] = event_kind_name(event.kind);
    switch (event.kind) {
    case EventKind::Release:
        j["job"] = job_to_json(event.job_detail.value());
        break;
    case EventKind::AcceptAppend:
    case EventKind::Complete:
        j["job"] = event.job;
        break;
    case EventKind::AcceptContention: {
        j["job"] = event.job;
        ordered_json affected = ordered_json::array();
        for (const auto& [id, lost] : event.affected)
            affected.push_back(ordered_json{{"job", id}, {"lost", lost}});
        j["affected"] = std::move(affected);
        if (event.quote) {
            j["profitAccept"] = event.quote->profit_accept;
            j["profitDecline"] = event.quote->profit_decline;
        }
        break;
    }
    case EventKind::Decline:
        j["job"] = event.job;
        if (event.quote) {
            j["profitAccept"] = event.quote->profit_accept;
            j["profitDecline"] = event.quote->profit_decline;
        }
        break;
    case EventKind::Execute:
        j["job"] = event.job;
        j["start"] = event.start;
        j["end"] = event.end;
        break;
    case EventKind::Fail:
        j["job"] = event.job;
        j["shortage"] = event.shortage;
        break;
    case EventKind::Idle:
        j["start"] = event.start;
        j["end"] = event.end;
        break;
    }
    return j.dump();
}

std::string trace_to_jsonl(const SimulationTrace& trace) {
    std::string out;
    for (const TraceEvent& event : trace.events) {
        out += trace_event_to_json(event);
        out += '\n';
    }
    return out;
}

namespace {

TraceEvent trace_event_from_json(const ordered_json& j) {
    TraceEvent event;
    event.time = j.at("t").get<Tick>();
    const std::string kind = j.at("kind").get<std::string>();

    auto parse_quote = [&] {
        if (j.contains("profitAccept") != j.contains("profitDecline"))
            fail(Errc::MalformedTrace, "decision event carries half a profit quote");
        if (j.contains("profitAccept")) {
            ProfitQuote quote;
            quote.profit_accept = j.at("profitAccept").get<std::int64_t>();
            quote.profit_decline = j.at("profitDecline").get<std::int64_t>();
            event.quote = std::move(quote);
        }
    };

    if (kind == "release") {
        event.kind = EventKind::Release;
        event.job_detail = job_from_json(j.at("job"));
        event.job = event.job_detail->id;
    } else if (kind == "accept_append") {
        event.kind = EventKind::AcceptAppend;
        event.job = j.at("job").get<JobId>();
    } else if (kind == "accept_contention") {
        event.kind = EventKind::AcceptContention;
        event.job = j.at("job").get<JobId>();
        for (const ordered_json& a : j.at("affected"))
            event.affected.emplace_back(a.at("job").get<JobId>(), a.at("lost").get<Tick>());
        parse_quote();
    } else if (kind == "decline") {
        event.kind = EventKind::Decline;
        event.job = j.at("job").get<JobId>();
        parse_quote();
    } else if (kind == "execute") {
        event.kind = EventKind::Execute;
        event.job = j.at("job").get<JobId>();
        event.start = j.at("start").get<Tick>();
        event.end = j.at("end").get<Tick>();
    } else if (kind == "complete") {
        event.kind = EventKind::Complete;
        event.job = j.at("job").get<JobId>();
    } else if (kind == "fail") {
        event.kind = EventKind::Fail;
        event.job = j.at("job").get<JobId>();
        event.shortage = j.at("shortage").get<Tick>();
    } else if (kind == "idle") {
        event.kind = EventKind::Idle;
        event.start = j.at("start").get<Tick>();
        event.end = j.at("end").get<Tick>();
    } else {
        fail(Errc::MalformedTrace, "unknown trace event kind '" + kind + "'");
    }
    return event;
}

} // namespace

SimulationTrace trace_from_jsonl(const std::string& text) {
    SimulationTrace trace;
    std::istringstream lines(text);
    std::string line;
    Tick prev_time = std::numeric_limits<Tick>::min();
    std::size_t line_no = 0;
    while (std::getline(lines, line)) {
        ++line_no;
        if (line.empty()) continue;
        ordered_json j;
        try {
            j = ordered_json::parse(line);
            trace.events.push_back(trace_event_from_json(j));
        } catch (const nlohmann::json::exception& e) {
            fail(Errc::MalformedTrace,
                 "trace line " + std::to_string(line_no) + " is malformed: " + e.what());
        }
        if (trace.events.back().time < prev_time)
            fail(Errc::MalformedTrace, "trace events out of time order at line " +
                                           std::to_string(line_no));
        prev_time = trace.events.back().time;
    }
    return trace;
}

void save_trace(const SimulationTrace& trace, const std::filesystem::path& path) {
    write_file_atomic(path, trace_to_jsonl(trace));
}

SimulationTrace load_trace(const std::filesystem::path& path) {
    return trace_from_jsonl(read_file(path));
}

RunSummary summarize(const ProfitLedger& ledger) {
    RunSummary summary;
    summary.profit = profit_of(ledger);
    for (const auto& [id, outcome] : ledger.outcomes) {
        switch (outcome.status) {
        case OutcomeStatus::Completed: ++summary.completed; break;
        case OutcomeStatus::Failed:
            ++summary.failed;
            summary.total_shortage += outcome.shortage;
            break;
        case OutcomeStatus::Declined: ++summary.declined; break;
        }
    }
    return summary;
}

std::string summary_to_json(const RunSummary& summary) {
    ordered_json j;
    j["profit"] = summary.profit;
    j["completed"] = summary.completed;
    j["failed"] = summary.failed;
    j["declined"] = summary.declined;
    j["totalShortage"] = summary.total_shortage;
    return j.dump(2) + "\n";
}

std::string oracle_result_to_json(const OracleResult& result) {
    ordered_json j;
    j["value"] = result.value;
    j["witness"] = result.witness;
    return j.dump(2) + "\n";
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::IoError, "cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(Errc::IoError, "cannot write " + tmp.string());
        out << content;
        if (!out.flush()) fail(Errc::IoError, "write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (const char c : text) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 0x100000001b3ull;
    }
    return hash;
}

} // namespace commitsched
