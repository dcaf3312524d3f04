#include "cwmmg/generators.hpp"

#include "cwmmg/gamefile.hpp"

#include <cstdlib>

#ifndef CWMMG_FIXTURE_DIR
#define CWMMG_FIXTURE_DIR "data/fixtures"
#endif

namespace cwmmg {

Game generate(const GeneratorSpec& spec) {
    switch (spec.family) {
        case GeneratorSpec::Family::tight: return gen_tight(spec.t);
        case GeneratorSpec::Family::random:
            return gen_random(spec.n, spec.k, spec.max_coord, spec.seed);
        case GeneratorSpec::Family::fixture: return load_fixture(spec.fixture);
    }
    throw Error(Error::Code::Parameter, "unknown generator family");
}

Game gen_tight(long long t) {
    if (t < 2) throw Error(Error::Code::Parameter, "tight family requires t >= 2");
    const long long n = 2 * t + 3;
    const Weight huge = n * n;
    std::vector<std::vector<Weight>> w;
    std::vector<std::string> names;
    w.push_back({huge, 0}), names.push_back("p1");
    w.push_back({huge, 0}), names.push_back("p2");
    w.push_back({0, huge}), names.push_back("p3");
    w.push_back({0, huge}), names.push_back("p4");
    for (long long j = t; j >= 2; --j) w.push_back({j, 0}), names.push_back("x" + std::to_string(j));
    for (long long j = t; j >= 2; --j) w.push_back({0, j}), names.push_back("y" + std::to_string(j));
    w.push_back({1, 1}), names.push_back("z");
    return Game(2, std::move(w), std::move(names));
}

Game gen_random(std::size_t n, std::size_t k, std::uint32_t max_coord, std::uint64_t seed) {
    if (n < 1 || k < 1 || max_coord < 1)
        throw Error(Error::Code::Parameter, "gen_random requires n >= 1, k >= 1, max_coord >= 1");
    SplitMix64 rng(seed);
    while (true) {
        std::vector<std::vector<Weight>> w(n, std::vector<Weight>(k));
        bool any = false;
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < k; ++i) {
                w[j][i] = static_cast<Weight>(rng.below(max_coord));
                any = any || w[j][i] > 0;
            }
        if (!any) continue;  // the all-zero draw would violate q(N) > 0
        return Game(k, std::move(w));
    }
}

std::string fixture_dir() {
    if (const char* env = std::getenv("CWMMG_FIXTURES")) return env;
    return CWMMG_FIXTURE_DIR;
}

Game load_fixture(const std::string& name) {
    return load_game(fixture_dir() + "/" + name + ".game");
}

std::vector<std::string> fixture_names() {
    return {"g1", "g2", "g3", "g4", "g5", "g6", "two_player_w2", "two_player_w10",
            "two_player_w1000000"};
}

Game gen_two_player(std::uint32_t w) {
    if (w < 2) throw Error(Error::Code::Parameter, "two-player family requires w >= 2");
    return Game(2, {{static_cast<Weight>(w), 0}, {0, static_cast<Weight>(w) - 1}}, {"p1", "p2"});
}

}  // namespace cwmmg
