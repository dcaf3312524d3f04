#pragma once

#include "cwmmg/model.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cwmmg {

// splitmix64: tiny, fully specified, identical on every platform. Golden
// files depend on this exact sequence, so it never changes.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    // uniform-ish in [0, bound]; the modulo bias is irrelevant for test
    // instance generation and keeps the mapping trivially portable
    std::uint64_t below(std::uint64_t bound_inclusive) { return next() % (bound_inclusive + 1); }

private:
    std::uint64_t state_;
};

// One request against the instance factories; `family` selects which of the
// parameter groups applies.
struct GeneratorSpec {
    enum class Family { tight, random, fixture };
    Family family = Family::random;
    long long t = 2;                // tight
    std::size_t n = 8, k = 2;       // random
    std::uint32_t max_coord = 8;
    std::uint64_t seed = 1;
    std::string fixture = "g1";
};

Game generate(const GeneratorSpec& spec);

// The tight family: 4 huge players, t-1 left, t-1 right, 1 versatile;
// n = 2t+3 players and exactly n+1 minimal winning coalitions.
Game gen_tight(long long t);

// Seeded i.i.d. uniform coordinates in [0, max_coord]; the all-zero draw is
// rejected and redrawn so q(N) > 0 always holds.
Game gen_random(std::size_t n, std::size_t k, std::uint32_t max_coord, std::uint64_t seed);

// Named fixtures checked in under data/fixtures (g1..g6, two_player_w*).
// The directory can be overridden with the CWMMG_FIXTURES environment
// variable; the built-in default points into the source tree.
Game load_fixture(const std::string& name);
std::string fixture_dir();
std::vector<std::string> fixture_names();

// The two-player ratio family: (w, 0) versus (0, w-1).
Game gen_two_player(std::uint32_t w);

}  // namespace cwmmg
