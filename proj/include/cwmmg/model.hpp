#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cwmmg {

class Error : public std::runtime_error {
public:
    enum class Code {
        MalformedCoalition,
        InvalidPartition,
        Precondition,
        Dimension,
        OracleLimit,
        Parameter,
        DegeneratePower,
        Consistency,
        Parse,
    };

    Error(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Code code() const { return code_; }

private:
    Code code_;
};

using PlayerId = std::uint32_t;
using Weight = std::int64_t;  // ingested as uint32, widened so sums never overflow

// One player: a dense index plus a K-tuple of non-negative integer weights.
// Display names are metadata only and never affect ordering.
struct PlayerVector {
    PlayerId id = 0;
    std::string name;
    std::vector<Weight> w;
};

class Game {
public:
    // Throws Error::Parameter when the roster violates the game invariants
    // (empty roster, mismatched dimensions, weight out of [0, 2^32-1],
    // or an all-zero weight matrix).
    Game(std::size_t k, std::vector<std::vector<Weight>> weights,
         std::vector<std::string> names = {});

    std::size_t n() const { return players_.size(); }
    std::size_t k() const { return k_; }
    const PlayerVector& player(PlayerId j) const { return players_.at(j); }
    const std::vector<PlayerVector>& players() const { return players_; }
    Weight weight(PlayerId j, std::size_t dim) const { return players_[j].w[dim]; }

    // Componentwise maxima of the full roster and their sum q(N).
    const std::vector<Weight>& grand_qvec() const { return grand_qvec_; }
    Weight grand_qsum() const { return grand_qsum_; }

private:
    std::size_t k_;
    std::vector<PlayerVector> players_;
    std::vector<Weight> grand_qvec_;
    Weight grand_qsum_ = 0;
};

// A subset of player ids, kept sorted and duplicate-free.
class Coalition {
public:
    Coalition() = default;
    explicit Coalition(std::vector<PlayerId> members);
    static Coalition from_mask(std::uint64_t mask);

    const std::vector<PlayerId>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    bool contains(PlayerId j) const;
    Coalition without(PlayerId j) const;
    Coalition complement(const Game& game) const;
    std::uint64_t mask() const;  // only valid for ids < 64

    auto operator<=>(const Coalition&) const = default;

private:
    std::vector<PlayerId> members_;
};

// Per-coalition statistics: componentwise maxima Q(C), their sum q(C), and
// the per-dimension busy sets A_i(C) with their union B(C).
struct CoalitionProfile {
    std::vector<Weight> qvec;
    Weight qsum = 0;
    std::vector<std::vector<PlayerId>> busy_per_dim;
    std::vector<PlayerId> busy;
};

// A partition of the full player set into disjoint nonempty blocks.
class PartitionStructure {
public:
    PartitionStructure() = default;
    // Throws Error::InvalidPartition unless the blocks are nonempty,
    // disjoint and cover every player of the game.
    PartitionStructure(const Game& game, std::vector<Coalition> blocks);
    const std::vector<Coalition>& blocks() const { return blocks_; }

private:
    std::vector<Coalition> blocks_;
};

void validate_coalition(const Game& game, const Coalition& c);

CoalitionProfile coalition_profile(const Game& game, const Coalition& c);
Weight coalition_qsum(const Game& game, const Coalition& c);

// Winning rule: q(C) strictly exceeds q of the complement; ties lose.
bool is_winning(const Game& game, const Coalition& c);

// Preconditions: j in c and c winning; true iff c minus j loses.
bool is_swing(const Game& game, const Coalition& c, PlayerId j);

// True iff c wins and every single-player removal loses. Runs in O(n k)
// using top-2 per-dimension maxima, so minimality never enumerates subsets.
bool is_mwc(const Game& game, const Coalition& c);

// The unique block with strictly greatest qsum, or nullopt on a tie.
std::optional<Coalition> winner_of(const Game& game, const PartitionStructure& pi);

}  // namespace cwmmg
