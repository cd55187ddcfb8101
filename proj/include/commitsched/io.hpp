#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "commitsched/engine.hpp"
#include "commitsched/model.hpp"
#include "commitsched/oracle.hpp"

namespace commitsched {

/// Instance files: {"version":1,"jobs":[{"id":0,"r":0,"p":5,"d":9}, ...]}.
/// The value field is implied equal to p and omitted; a file carrying an
/// explicit "v" must agree with "p".
std::string instance_to_json(const Instance& instance);
Instance instance_from_json(const std::string& text);

void save_instance(const Instance& instance, const std::filesystem::path& path);
Instance load_instance(const std::filesystem::path& path);

/// Trace files: JSON lines, one event per line, "t" first for sortability.
std::string trace_to_jsonl(const SimulationTrace& trace);
SimulationTrace trace_from_jsonl(const std::string& text);

void save_trace(const SimulationTrace& trace, const std::filesystem::path& path);
SimulationTrace load_trace(const std::filesystem::path& path);

/// One line of a trace file.
std::string trace_event_to_json(const TraceEvent& event);

/// Run summary record {profit, completed, failed, declined, totalShortage}.
struct RunSummary {
    std::int64_t profit = 0;
    std::size_t completed = 0;
    std::size_t failed = 0;
    std::size_t declined = 0;
    Tick total_shortage = 0;

    friend bool operator==(const RunSummary&, const RunSummary&) = default;
};

RunSummary summarize(const ProfitLedger& ledger);
std::string summary_to_json(const RunSummary& summary);

std::string oracle_result_to_json(const OracleResult& result);

/// Whole-file helpers; writes go through a temp file plus rename so a
/// crash never leaves a half-written artifact.
std::string read_file(const std::filesystem::path& path);
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// FNV-1a 64-bit hash; used for byte-identical replay checks.
std::uint64_t fnv1a(std::string_view text);

} // namespace commitsched
