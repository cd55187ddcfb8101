#include "commitsched/dsc.hpp"

#include <cmath>
#include <string>

namespace commitsched {

// the library default is bit-identical to the documented CLI flag default,
// the nearest double to the decimal below (one ulp above 1.0 + sqrt(2.0))
const double DscConfig::kDefaultBeta = std::stod("2.41421356237309515");

void DscConfig::validate() const {
    if (!(beta > 1.0) || !(beta <= 3.0))
        fail(Errc::ConfigError, "beta must be in (1, 3], got " + std::to_string(beta));
}

ProfitQuote quote(const Job& job, const TentativeSchedule& schedule, Tick now) {
    if (is_appendable(job, schedule, now))
        fail(Errc::Appendable, "job " + std::to_string(job.id) + " is appendable; nothing to quote");

    auto [inserted, affected] = contention_insert(job, schedule, now);

    ProfitQuote result;
    result.affected = affected;
    for (const auto& [id, lost] : affected) {
        const Tick shortage_before = schedule.anticipated_shortage(id);
        const Tick shortage_after = inserted.anticipated_shortage(id);
        if (schedule.slated_to_complete(id))
            result.profit_decline += schedule.admitted.at(id).job.value;
        result.profit_decline -= shortage_before;
        result.profit_accept -= shortage_after - shortage_before;
    }
    result.profit_accept += job.value;
    return result;
}

PolicyDecision dsc_decide(const Job& job, const TentativeSchedule& schedule, Tick now,
                          const DscConfig& config) {
    if (is_appendable(job, schedule, now)) return PolicyDecision::accept_append();

    ProfitQuote quoted = quote(job, schedule, now);
    // strict comparison in real arithmetic; with an irrational threshold an
    // exact tie cannot arise from integer profits
    const bool accept = static_cast<double>(quoted.profit_accept) >
                        (1.0 + config.beta) * static_cast<double>(quoted.profit_decline);
    if (!accept) return PolicyDecision::decline(quoted);

    auto [inserted, affected] = contention_insert(job, schedule, now);
    return PolicyDecision::accept_contention(std::move(inserted), std::move(affected),
                                             std::move(quoted));
}

} // namespace commitsched
