#include "cwmmg/model.hpp"

#include <algorithm>
#include <limits>

namespace cwmmg {

namespace {
constexpr Weight kMaxWeight = 0xFFFFFFFFll;
}

Game::Game(std::size_t k, std::vector<std::vector<Weight>> weights,
           std::vector<std::string> names)
    : k_(k) {
    if (k == 0) throw Error(Error::Code::Parameter, "game dimension k must be >= 1");
    if (weights.empty()) throw Error(Error::Code::Parameter, "game needs at least one player");
    if (k > 1000000) throw Error(Error::Code::Parameter, "game dimension k is unreasonably large");
    if (!names.empty() && names.size() != weights.size())
        throw Error(Error::Code::Parameter, "player name list does not match roster size");

    players_.reserve(weights.size());
    grand_qvec_.assign(k, 0);
    for (std::size_t j = 0; j < weights.size(); ++j) {
        auto& w = weights[j];
        if (w.size() != k)
            throw Error(Error::Code::Parameter,
                        "player " + std::to_string(j) + " has " + std::to_string(w.size()) +
                            " weights, expected " + std::to_string(k));
        for (std::size_t i = 0; i < k; ++i) {
            if (w[i] < 0 || w[i] > kMaxWeight)
                throw Error(Error::Code::Parameter,
                            "player " + std::to_string(j) + " weight " + std::to_string(i) +
                                " outside [0, 2^32-1]");
            grand_qvec_[i] = std::max(grand_qvec_[i], w[i]);
        }
        PlayerVector p;
        p.id = static_cast<PlayerId>(j);
        if (!names.empty()) p.name = std::move(names[j]);
        p.w = std::move(w);
        players_.push_back(std::move(p));
    }
    for (Weight q : grand_qvec_) grand_qsum_ += q;
    if (grand_qsum_ == 0)
        throw Error(Error::Code::Parameter,
                    "all weights are zero: no coalition can win (q(N) = 0)");
}

Coalition::Coalition(std::vector<PlayerId> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    auto dup = std::adjacent_find(members_.begin(), members_.end());
    if (dup != members_.end())
        throw Error(Error::Code::MalformedCoalition,
                    "duplicate player id " + std::to_string(*dup) + " in coalition");
}

Coalition Coalition::from_mask(std::uint64_t mask) {
    std::vector<PlayerId> ids;
    for (PlayerId j = 0; mask != 0; ++j, mask >>= 1)
        if (mask & 1u) ids.push_back(j);
    return Coalition(std::move(ids));
}

bool Coalition::contains(PlayerId j) const {
    return std::binary_search(members_.begin(), members_.end(), j);
}

Coalition Coalition::without(PlayerId j) const {
    std::vector<PlayerId> ids;
    ids.reserve(members_.size());
    for (PlayerId m : members_)
        if (m != j) ids.push_back(m);
    return Coalition(std::move(ids));
}

Coalition Coalition::complement(const Game& game) const {
    std::vector<PlayerId> ids;
    ids.reserve(game.n() - members_.size());
    std::size_t pos = 0;
    for (PlayerId j = 0; j < game.n(); ++j) {
        if (pos < members_.size() && members_[pos] == j)
            ++pos;
        else
            ids.push_back(j);
    }
    return Coalition(std::move(ids));
}

std::uint64_t Coalition::mask() const {
    std::uint64_t m = 0;
    for (PlayerId j : members_) m |= 1ull << j;
    return m;
}

void validate_coalition(const Game& game, const Coalition& c) {
    if (!c.empty() && c.members().back() >= game.n())
        throw Error(Error::Code::MalformedCoalition,
                    "player id " + std::to_string(c.members().back()) + " outside 0.." +
                        std::to_string(game.n() - 1));
}

CoalitionProfile coalition_profile(const Game& game, const Coalition& c) {
    validate_coalition(game, c);
    CoalitionProfile prof;
    prof.qvec.assign(game.k(), 0);
    prof.busy_per_dim.assign(game.k(), {});
    for (std::size_t i = 0; i < game.k(); ++i)
        for (PlayerId j : c.members())
            prof.qvec[i] = std::max(prof.qvec[i], game.weight(j, i));
    for (Weight q : prof.qvec) prof.qsum += q;
    if (!c.empty()) {
        for (std::size_t i = 0; i < game.k(); ++i)
            for (PlayerId j : c.members())
                if (game.weight(j, i) == prof.qvec[i]) prof.busy_per_dim[i].push_back(j);
        std::vector<PlayerId> all;
        for (const auto& a : prof.busy_per_dim) all.insert(all.end(), a.begin(), a.end());
        std::sort(all.begin(), all.end());
        all.erase(std::unique(all.begin(), all.end()), all.end());
        prof.busy = std::move(all);
    }
    return prof;
}

Weight coalition_qsum(const Game& game, const Coalition& c) {
    validate_coalition(game, c);
    Weight total = 0;
    for (std::size_t i = 0; i < game.k(); ++i) {
        Weight q = 0;
        for (PlayerId j : c.members()) q = std::max(q, game.weight(j, i));
        total += q;
    }
    return total;
}

bool is_winning(const Game& game, const Coalition& c) {
    validate_coalition(game, c);
    if (c.empty()) return false;
    std::vector<Weight> qc(game.k(), 0), qr(game.k(), 0);
    std::size_t pos = 0;
    for (PlayerId j = 0; j < game.n(); ++j) {
        bool inside = pos < c.size() && c.members()[pos] == j;
        if (inside) ++pos;
        auto& q = inside ? qc : qr;
        for (std::size_t i = 0; i < game.k(); ++i) q[i] = std::max(q[i], game.weight(j, i));
    }
    Weight sc = 0, sr = 0;
    for (std::size_t i = 0; i < game.k(); ++i) sc += qc[i], sr += qr[i];
    return sc > sr;
}

bool is_swing(const Game& game, const Coalition& c, PlayerId j) {
    validate_coalition(game, c);
    if (!c.contains(j))
        throw Error(Error::Code::Precondition,
                    "swing test: player " + std::to_string(j) + " not in coalition");
    if (!is_winning(game, c))
        throw Error(Error::Code::Precondition, "swing test: coalition is not winning");
    return !is_winning(game, c.without(j));
}

namespace {

// Largest and second-largest value seen in one dimension, with the argmax.
struct Top2 {
    Weight best = 0;
    Weight second = 0;
    PlayerId who = std::numeric_limits<PlayerId>::max();

    void feed(Weight v, PlayerId j) {
        if (v > best || (v == best && who == std::numeric_limits<PlayerId>::max())) {
            second = best;
            best = v;
            who = j;
        } else if (v >= second) {
            second = v;
        }
    }
    Weight excluding(PlayerId j) const { return j == who ? second : best; }
};

}  // namespace

bool is_mwc(const Game& game, const Coalition& c) {
    validate_coalition(game, c);
    if (c.empty() || !is_winning(game, c)) return false;

    const std::size_t k = game.k();
    std::vector<Top2> inside(k);
    std::vector<Weight> outside(k, 0);
    std::size_t pos = 0;
    for (PlayerId j = 0; j < game.n(); ++j) {
        bool member = pos < c.size() && c.members()[pos] == j;
        if (member) ++pos;
        for (std::size_t i = 0; i < k; ++i) {
            Weight v = game.weight(j, i);
            if (member)
                inside[i].feed(v, j);
            else
                outside[i] = std::max(outside[i], v);
        }
    }
    // j is swing iff q(C \ {j}) <= q(complement + {j}).
    for (PlayerId j : c.members()) {
        Weight reduced = 0, grown = 0;
        for (std::size_t i = 0; i < k; ++i) {
            reduced += inside[i].excluding(j);
            grown += std::max(outside[i], game.weight(j, i));
        }
        if (reduced > grown) return false;  // j null: removal keeps it winning
    }
    return true;
}

PartitionStructure::PartitionStructure(const Game& game, std::vector<Coalition> blocks)
    : blocks_(std::move(blocks)) {
    std::vector<bool> seen(game.n(), false);
    std::size_t covered = 0;
    for (const auto& b : blocks_) {
        if (b.empty())
            throw Error(Error::Code::InvalidPartition, "partition block is empty");
        validate_coalition(game, b);
        for (PlayerId j : b.members()) {
            if (seen[j])
                throw Error(Error::Code::InvalidPartition,
                            "player " + std::to_string(j) + " appears in two blocks");
            seen[j] = true;
            ++covered;
        }
    }
    if (covered != game.n())
        throw Error(Error::Code::InvalidPartition, "partition does not cover all players");
}

std::optional<Coalition> winner_of(const Game& game, const PartitionStructure& pi) {
    if (pi.blocks().empty()) throw Error(Error::Code::InvalidPartition, "empty partition");
    Weight best = -1;
    std::size_t ties = 0;
    const Coalition* arg = nullptr;
    for (const auto& b : pi.blocks()) {
        Weight q = coalition_qsum(game, b);
        if (q > best) {
            best = q;
            ties = 1;
            arg = &b;
        } else if (q == best) {
            ++ties;
        }
    }
    if (ties != 1 || best <= 0) return std::nullopt;
    return *arg;
}

}  // namespace cwmmg
