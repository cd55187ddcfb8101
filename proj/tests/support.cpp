#include "support.hpp"

namespace commitsched::testing {

std::vector<std::pair<std::string, Instance>> criterion_corpus() {
    std::vector<std::pair<std::string, Instance>> corpus;
    const double loads[] = {0.4, 0.8, 1.2, 2.0, 3.0};
    const std::pair<double, double> laxities[] = {{1.0, 1.05}, {1.0, 2.0}, {1.0, 3.0}};
    const std::pair<Tick, Tick> procs[] = {{1, 10}, {1, 60}};

    std::uint64_t seed = 20110928;
    for (std::size_t n = 1; n <= 18; ++n) {
        for (const double load : loads) {
            for (const auto& [lax_lo, lax_hi] : laxities) {
                for (const auto& [p_lo, p_hi] : procs) {
                    RandomGenConfig config;
                    config.seed = seed++;
                    config.n = n;
                    config.proc_min = p_lo;
                    config.proc_max = p_hi;
                    config.laxity_min = lax_lo;
                    config.laxity_max = lax_hi;
                    config.load_factor = load;
                    std::string name = "rand-n" + std::to_string(n) + "-load" +
                                       std::to_string(load) + "-lax" + std::to_string(lax_hi) +
                                       "-s" + std::to_string(config.seed);
                    corpus.emplace_back(std::move(name), generate_random_instance(config));
                }
            }
        }
    }
    // two extra batches of fully tight instances; the hardest commitment cases
    for (std::size_t n = 2; n <= 16; n += 2) {
        for (const double load : {1.5, 2.5}) {
            RandomGenConfig config;
            config.seed = seed++;
            config.n = n;
            config.proc_min = 1;
            config.proc_max = 30;
            config.laxity_min = 1.0;
            config.laxity_max = 1.0;
            config.load_factor = load;
            corpus.emplace_back("tight-n" + std::to_string(n) + "-s" + std::to_string(config.seed),
                                generate_random_instance(config));
        }
    }
    return corpus;
}

std::vector<Instance> fuzz_corpus(std::size_t count, std::uint64_t seed0) {
    std::vector<Instance> corpus;
    std::mt19937_64 meta(seed0);
    for (std::size_t i = 0; i < count; ++i) {
        RandomGenConfig config;
        config.seed = meta();
        config.n = 1 + meta() % 14;
        config.proc_min = 1;
        config.proc_max = 1 + static_cast<Tick>(meta() % 20);
        config.laxity_min = 1.0;
        config.laxity_max = 1.0 + static_cast<double>(meta() % 20) / 10.0;
        config.load_factor = 0.3 + static_cast<double>(meta() % 30) / 10.0;
        corpus.push_back(generate_random_instance(config));
    }
    return corpus;
}

std::vector<std::pair<std::string, Instance>> adversary_corpus() {
    std::vector<std::pair<std::string, Instance>> corpus;
    for (const char* c : {"1.5", "2", "3", "4", "5"}) {
        AdversaryParams params;
        params.c = parse_rational(c);
        corpus.emplace_back(std::string("adversary-c") + c, gen_instance(params));
    }
    AdversaryParams near_limit;
    near_limit.c = parse_rational("5.8");
    corpus.emplace_back("adversary-c5.8-prefix", gen_instance_prefix(near_limit));
    return corpus;
}

} // namespace commitsched::testing
