#pragma once

#include "cwmmg/model.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace cwmmg {

// Busy/idle decomposition of a two-dimensional game, with the idle players
// ordered both by first coordinate and by second coordinate (descending,
// ties broken by ascending player id so runs of equal values are stable).
struct BusySplit {
    const Game* game = nullptr;              // the split is a view over this game
    std::vector<PlayerId> a1, a2;            // A_1(N), A_2(N), ascending ids
    std::vector<PlayerId> idle_by_dim1;      // M ordered p^1 desc
    std::vector<PlayerId> idle_by_dim2;      // M ordered p^2 desc (the l-order)
    std::vector<std::size_t> pos1, pos2;     // per player id: position in each order (npos if busy)
    Weight q1N = 0, q2N = 0;                 // global per-dimension maxima
    Weight q1A2 = 0, q2A1 = 0;               // q_1(A_2(N)) and q_2(A_1(N))
    bool intersecting = false;               // A_1(N) and A_2(N) share a player

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t m() const { return idle_by_dim1.size(); }
    std::size_t m1() const { return a1.size(); }
    std::size_t m2() const { return a2.size(); }
};

// Prefix maxima that can exclude one player: largest and second largest of a
// coordinate over each prefix, remembering where the largest sits.
struct PrefixTop2 {
    std::vector<Weight> best, second;
    std::vector<std::size_t> argpos;

    // max over the first `len` entries, skipping the entry at `skip` if present
    Weight max_excluding(std::size_t len, std::size_t skip) const {
        if (len == 0) return 0;
        return argpos[len - 1] == skip ? second[len - 1] : best[len - 1];
    }
    Weight max(std::size_t len) const { return len == 0 ? 0 : best[len - 1]; }
};

// Per-idle-player candidate cutoffs: x(i) is the length of the first-order
// prefix forming D_{1i}, y(i) the second-order prefix forming D_{2i}. Both
// chains are monotone along the opposite order, so a two-pointer sweep
// computes them in O(m).
struct CandidateTable {
    std::vector<std::size_t> x, y;  // indexed by player id (npos-guarded via split)
    std::vector<bool> mu1, mu2;     // anchor lies outside its own prefix
    PrefixTop2 pfx2_along1;         // p^2 maxima along idle_by_dim1
    PrefixTop2 pfx1_along2;         // p^1 maxima along idle_by_dim2
};

enum class Mwc2Branch {
    General,       // disjoint busy sets, neither one winning on its own
    Intersecting,  // A_1(N) and A_2(N) overlap
    A1Winning,     // q(A_1(N)) beats its complement
    A2Winning,
};

// One stored side-1/side-2 candidate: the busy set plus a sorted prefix of
// idle players, optionally plus the anchor itself.
struct StoredCandidate {
    PlayerId anchor = 0;
    std::size_t cutoff = 0;  // prefix length in the side's primary order
    bool mu = false;         // true: anchor sits outside the prefix and is an extra member
    Weight level = 0;        // anchor's cross coordinate
};

// Compact minimal-winning-coalition collection. Side lists are stored as
// (anchor, cutoff) pairs against the shared idle orders; the A_1/A_2 mixed
// coalitions are patterns over the busy sets. materialize() expands
// everything into explicit sorted coalitions.
class MwcCollection {
public:
    Mwc2Branch branch = Mwc2Branch::General;
    std::size_t n = 0;

    std::vector<PlayerId> a1, a2;
    std::vector<PlayerId> idle_by_dim1, idle_by_dim2;

    std::vector<StoredCandidate> side1, side2;        // emission order: level descending
    std::optional<std::size_t> c0_side1, c0_side2;    // cutoff of the anchorless coalition per side
    bool mwc3_a1_plus_one = false;                    // {A_1 ∪ {x} : x in A_2} all minimal
    bool mwc3_a2_plus_one = false;
    bool mwc3_merged = false;                         // |A_1| = |A_2| = 1: both patterns collapse to one pair

    std::vector<Coalition> explicit_mwc;              // degenerate branches only
    bool pattern_a2_plus_each_a1 = false;             // A1Winning, |A_1| >= 2
    bool pattern_a1_plus_each_a2 = false;

    // Membership bookkeeping for the idle players, indexed by player id:
    // tau is the 1-based position of the first stored candidate containing
    // the player (n_t + 1 when none does), sigma marks own anchored entries.
    std::vector<std::size_t> tau1, tau2;
    std::vector<bool> sigma1, sigma2;

    std::size_t count() const;
    std::vector<Coalition> materialize() const;
    void for_each(const std::function<void(const Coalition&)>& fn) const;
};

BusySplit split_busy(const Game& game);
CandidateTable build_candidates(const BusySplit& split);

// Algorithm MWC: all minimal winning coalitions of a 2-dim game in
// O(n log n). With verify set, every emitted coalition is re-checked with
// is_mwc, the n+1 bound is asserted, and every per-anchor candidate that was
// not emitted is confirmed non-minimal (slow; for tests).
MwcCollection compute_mwc2(const Game& game, bool verify = false);

bool mwc_count_bound_check(const MwcCollection& collection, std::size_t n);

}  // namespace cwmmg
