#pragma once

#include "cwmmg/model.hpp"
#include "cwmmg/oracle.hpp"
#include "cwmmg/rational.hpp"

#include <vector>

namespace cwmmg {

// The stable side of the game: which minimal winning coalitions minimize the
// total power of their members, and what the representative winner pays out.
struct StabilityReport {
    IndexKind kind = IndexKind::hp;
    Rational min_theta;
    std::vector<Coalition> stable_coalitions;  // all argmin MWCs, canonical order
    Rational winner_ratio;                     // q(C*)/q(N) for the first stable coalition
    std::vector<Rational> allocation;          // payoffs in {C*, rest} for that coalition
};

// All MWCs whose power sum is minimal; ties are all returned.
StabilityReport cstable_coalitions(const Game& game, const std::vector<Coalition>& mwc,
                                   const PowerProfile& powers);

// Eq-style proportional payoff: winner members split 1 unit by power, the
// rest get 0. A winner whose members all have zero power is an error.
std::vector<Rational> allocate(const Game& game, const PartitionStructure& pi,
                               const PowerProfile& powers);

Rational winner_ratio(const Game& game, const Coalition& c);

}  // namespace cwmmg
