#pragma once

#include <cstdint>
#include <optional>

#include "commitsched/model.hpp"

namespace commitsched {

/// Seeded random-instance generator configuration. Laxity multiplies the
/// processing time to place the deadline, so laxity_min >= 1 guarantees
/// every generated job validates; laxity exactly 1 yields tight jobs.
struct RandomGenConfig {
    std::uint64_t seed = 1;
    std::size_t n = 10;
    double arrival_mean = 4.0; // geometric inter-arrival mean, ticks
    Tick proc_min = 1;
    Tick proc_max = 10;
    double laxity_min = 1.0;
    double laxity_max = 3.0;
    // target sum(proc) / horizon; when set it overrides arrival_mean with
    // mean proc / load_factor
    std::optional<double> load_factor;

    void validate() const; // throws Error{ConfigError}
};

/// Deterministic for a fixed config: same seed, byte-identical instance.
Instance generate_random_instance(const RandomGenConfig& config);

/// sum(proc) / (max deadline - min release); 0 for instances under 1 job.
double realized_load_factor(const Instance& instance);

} // namespace commitsched
