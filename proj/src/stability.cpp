#include "cwmmg/stability.hpp"

#include <algorithm>

namespace cwmmg {

StabilityReport cstable_coalitions(const Game& game, const std::vector<Coalition>& mwc,
                                   const PowerProfile& powers) {
    if (mwc.empty())
        throw Error(Error::Code::Consistency,
                    "empty MWC list: impossible for a valid game (q(N) > 0)");
    if (powers.values.size() != game.n())
        throw Error(Error::Code::Consistency, "power profile does not match the game");

    StabilityReport report;
    report.kind = powers.kind;
    bool first = true;
    for (const auto& c : mwc) {
        Rational theta = 0;
        for (PlayerId j : c.members()) theta += powers.values[j];
        if (first || theta < report.min_theta) {
            report.min_theta = theta;
            report.stable_coalitions.clear();
            first = false;
        }
        if (theta == report.min_theta) report.stable_coalitions.push_back(c);
    }
    std::sort(report.stable_coalitions.begin(), report.stable_coalitions.end());

    const Coalition& rep = report.stable_coalitions.front();
    report.winner_ratio = winner_ratio(game, rep);
    std::vector<Coalition> blocks{rep};
    Coalition rest = rep.complement(game);
    if (!rest.empty()) blocks.push_back(rest);
    report.allocation = allocate(game, PartitionStructure(game, std::move(blocks)), powers);
    return report;
}

std::vector<Rational> allocate(const Game& game, const PartitionStructure& pi,
                               const PowerProfile& powers) {
    if (powers.values.size() != game.n())
        throw Error(Error::Code::Consistency, "power profile does not match the game");
    std::vector<Rational> out(game.n(), Rational(0));
    auto winner = winner_of(game, pi);
    if (!winner) return out;
    Rational total = 0;
    for (PlayerId j : winner->members()) total += powers.values[j];
    if (total == 0)
        throw Error(Error::Code::DegeneratePower,
                    "winner has zero total power: proportional allocation undefined");
    for (PlayerId j : winner->members()) out[j] = powers.values[j] / total;
    return out;
}

Rational winner_ratio(const Game& game, const Coalition& c) {
    if (!is_winning(game, c))
        throw Error(Error::Code::Precondition, "winner_ratio requires a winning coalition");
    return Rational(coalition_qsum(game, c), game.grand_qsum());
}

}  // namespace cwmmg
