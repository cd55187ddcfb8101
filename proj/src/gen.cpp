#include "commitsched/gen.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace commitsched {

namespace {

// fixed-algorithm helpers over mt19937_64 so generated instances do not
// depend on library distribution internals
double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Tick uniform_tick(std::mt19937_64& rng, Tick lo, Tick hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<Tick>(rng() % span);
}

Tick geometric_ticks(std::mt19937_64& rng, double mean) {
    if (mean <= 0.0) return 0;
    const double p = 1.0 / (1.0 + mean);
    const double u = uniform_unit(rng);
    // inverse CDF of the geometric distribution on {0, 1, 2, ...}
    const double k = std::floor(std::log1p(-u) / std::log1p(-p));
    return k < 0 ? 0 : static_cast<Tick>(k);
}

} // namespace

void RandomGenConfig::validate() const {
    if (proc_min < 1 || proc_max < proc_min)
        fail(Errc::ConfigError, "proc range must satisfy 1 <= min <= max");
    if (laxity_min < 1.0 || laxity_max < laxity_min)
        fail(Errc::ConfigError, "laxity range must satisfy 1 <= min <= max");
    if (arrival_mean < 0.0) fail(Errc::ConfigError, "arrival mean must be nonnegative");
    if (load_factor && *load_factor <= 0.0)
        fail(Errc::ConfigError, "load factor must be positive");
}

Instance generate_random_instance(const RandomGenConfig& config) {
    config.validate();
    std::mt19937_64 rng(config.seed);

    double mean = config.arrival_mean;
    if (config.load_factor) {
        const double mean_proc =
            (static_cast<double>(config.proc_min) + static_cast<double>(config.proc_max)) / 2.0;
        mean = mean_proc / *config.load_factor;
    }

    std::vector<Job> jobs;
    jobs.reserve(config.n);
    Tick t = 0;
    for (std::size_t i = 0; i < config.n; ++i) {
        t += geometric_ticks(rng, mean);
        const Tick proc = uniform_tick(rng, config.proc_min, config.proc_max);
        const double laxity =
            config.laxity_min + uniform_unit(rng) * (config.laxity_max - config.laxity_min);
        const Tick deadline =
            t + static_cast<Tick>(std::ceil(laxity * static_cast<double>(proc)));
        jobs.push_back(Job::make(static_cast<JobId>(i), t, proc, deadline));
    }
    return Instance::make(std::move(jobs));
}

double realized_load_factor(const Instance& instance) {
    if (instance.empty()) return 0.0;
    Tick total = 0;
    Tick first = instance.jobs().front().release;
    Tick last = first;
    for (const Job& job : instance.jobs()) {
        total += job.proc;
        first = std::min(first, job.release);
        last = std::max(last, job.deadline);
    }
    return last > first ? static_cast<double>(total) / static_cast<double>(last - first) : 0.0;
}

} // namespace commitsched
