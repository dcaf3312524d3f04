#pragma once

#include "cwmmg/mwc2d.hpp"
#include "cwmmg/oracle.hpp"
#include "cwmmg/rational.hpp"

#include <optional>
#include <vector>

namespace cwmmg {

// One family of winning coalitions on the A_1 (or A_2) side, at a fixed
// cross-coordinate level: busy set + required idle prefix + any choice of
// optional members, possibly constrained to include a level attainer.
struct LevelFamily {
    Weight level = 0;
    std::size_t required = 0;        // idle prefix length forced in by the winning test
    std::size_t base_size = 0;       // busy set + required members
    std::size_t optional = 0;        // free idle members with cross coordinate <= level
    std::size_t attainers = 0;       // free members sitting exactly at the level
    bool need_attainer = false;      // no required member attains the level
    BigInt family_size = 0;
    // Swing counts of a sole optional attainer, indexed by coalition size;
    // empty when optional attainers are never swing in this family.
    std::vector<BigInt> sole_swing_by_size;
};

struct WcSide {
    std::vector<LevelFamily> families;  // level descending, empty families dropped
    // cum_by_size[i][s]: coalitions of size s across families[i..end). Base
    // members (busy set + required prefix) are swing in every one of them.
    std::vector<std::vector<BigInt>> cum_by_size;
    BigInt total = 0;
};

// The winning-coalition structure of a 2-dim game with disjoint busy sets:
// per-side level families plus the closed-form family of coalitions meeting
// both busy sets, with the losing-complement counts that drive the busy
// players' swing numbers there.
struct WcStructure {
    std::size_t n = 0;
    std::vector<PlayerId> a1, a2;
    std::vector<PlayerId> idle_by_dim1, idle_by_dim2;
    std::vector<std::size_t> pos1, pos2;
    Weight q1N = 0, q2N = 0, q1A2 = 0, q2A1 = 0;

    WcSide side1, side2;
    BigInt wc3_count = 0;
    // #{T subset of idle : A_1 (resp. A_2) plus T loses}, by |T|
    std::vector<BigInt> a1_team_loses_by_size, a2_team_loses_by_size;
    BigInt total_wc = 0;
};

// Subsets T of `items` (level coordinate a, trigger coordinate b) whose team
// loses: max(beta, b over excluded items) >= max(base_level, a over chosen
// items) + delta. Returned by |T|. This one sweep powers every "does the
// weakened coalition still win" count in the structure.
std::vector<BigInt> count_losing_by_size(std::vector<std::pair<Weight, Weight>> items,
                                         Weight base_level, Weight beta, Weight delta,
                                         const BinomialTable& binom);

// Holler-Packel and Deegan-Packel values straight from the compact MWC
// collection, in O(n) for the general branch.
PowerProfile hp2(const Game& game, const MwcCollection& mwc);
PowerProfile dp2(const Game& game, const MwcCollection& mwc);

WcStructure wc_structure(const Game& game, const BusySplit& split, const CandidateTable& table);

PowerProfile bz2(const Game& game, const WcStructure& structure);
PowerProfile ss2(const Game& game, const WcStructure& structure);

// Dispatchers that also cover the intersecting-busy-set branch, where the
// winning family collapses to {C : A_1 or A_2 inside C} and everything is a
// binomial closed form.
PowerProfile bz2(const Game& game);
PowerProfile ss2(const Game& game);

// Swing counts per coalition size for every player; bz2/ss2 are weightings
// of this table. Exposed for tests.
std::vector<std::vector<BigInt>> swing_counts_by_size(const Game& game);

}  // namespace cwmmg
