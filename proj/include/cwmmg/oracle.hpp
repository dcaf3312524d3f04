#pragma once

#include "cwmmg/model.hpp"
#include "cwmmg/rational.hpp"

#include <cstdint>
#include <vector>

namespace cwmmg {

enum class IndexKind { ss, bz, hp, dp };

const char* index_kind_name(IndexKind kind);
IndexKind index_kind_from_name(const std::string& name);

struct PowerProfile {
    IndexKind kind = IndexKind::ss;
    std::vector<Rational> values;
};

inline constexpr std::size_t kDefaultOracleLimit = 20;
inline constexpr std::size_t kDefaultRecursiveLimit = 7;

// Per-player swing bookkeeping from full enumeration. wc_count_by_size[s] is
// the number of winning coalitions of size s in which the player is swing;
// mwc_in counts/stores the minimal winning coalitions containing the player.
struct SwingFamily {
    PlayerId player = 0;
    std::vector<std::uint64_t> wc_count_by_size;  // index 0..n
    std::uint64_t wc_count = 0;                   // |WC_j|, the raw Banzhaf count
    std::vector<Coalition> mwc_in;                // MWC_j, canonical order
};

// All minimal winning coalitions by full 2^n enumeration, sorted by member
// tuple. Works for any dimension; n is capped by `limit`.
std::vector<Coalition> enumerate_mwc(const Game& game, std::size_t limit = kDefaultOracleLimit);

// Count of winning coalitions by full enumeration.
std::uint64_t count_winning(const Game& game, std::size_t limit = kDefaultOracleLimit);

SwingFamily swing_family(const Game& game, PlayerId j, std::size_t limit = kDefaultOracleLimit);

// Definitional power indices: exact rationals straight from the swing and
// MWC families.
PowerProfile index_oracle(const Game& game, IndexKind kind,
                          std::size_t limit = kDefaultOracleLimit);

// Payoff of each player in a full coalition structure: the strict-max block
// wins and splits 1 unit proportionally to powers; everyone else gets 0.
// A tied top or an all-zero-power winner pays everyone 0.
std::vector<Rational> oracle_allocation(const Game& game, const PartitionStructure& pi,
                                        const PowerProfile& powers);

// All C-stable partitions of the full player set under the recursive
// deviation rule, evaluated literally over partition space. Partitions are
// returned in deterministic enumeration order.
std::vector<PartitionStructure> cstable_structures_oracle(
    const Game& game, IndexKind kind, std::size_t limit = kDefaultRecursiveLimit);

// Same result computed with zero memoization; exponentially slower, used to
// validate the memoized checker on tiny instances.
std::vector<PartitionStructure> cstable_structures_reference(const Game& game, IndexKind kind,
                                                             std::size_t limit = 5);

// Enumerates all set partitions of the given players (restricted-growth
// order). Exposed for tests and the stability round-trip checks.
std::vector<std::vector<Coalition>> all_partitions(const std::vector<PlayerId>& ids);

}  // namespace cwmmg
