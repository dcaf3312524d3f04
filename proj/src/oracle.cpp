#include "cwmmg/oracle.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <memory>

namespace cwmmg {

const char* index_kind_name(IndexKind kind) {
    switch (kind) {
        case IndexKind::ss: return "ss";
        case IndexKind::bz: return "bz";
        case IndexKind::hp: return "hp";
        case IndexKind::dp: return "dp";
    }
    return "?";
}

IndexKind index_kind_from_name(const std::string& name) {
    if (name == "ss") return IndexKind::ss;
    if (name == "bz") return IndexKind::bz;
    if (name == "hp") return IndexKind::hp;
    if (name == "dp") return IndexKind::dp;
    throw Error(Error::Code::Parameter, "unknown index kind '" + name + "'");
}

namespace {

constexpr std::size_t kHardCap = 24;  // 2^24 qsum entries; beyond that the tables blow up

void check_limit(const Game& game, std::size_t limit) {
    std::size_t cap = std::min(limit, kHardCap);
    if (game.n() > cap)
        throw Error(Error::Code::OracleLimit,
                    "oracle enumeration limited to n <= " + std::to_string(cap) +
                        " (game has n = " + std::to_string(game.n()) +
                        "); for k = 2 use the fast path instead");
}

// q(C) for every subset mask, built one dimension at a time.
std::vector<Weight> all_qsums(const Game& game) {
    const std::size_t n = game.n();
    const std::size_t total = std::size_t{1} << n;
    std::vector<Weight> qsum(total, 0);
    std::vector<Weight> dimmax(total);
    for (std::size_t i = 0; i < game.k(); ++i) {
        dimmax[0] = 0;
        for (std::size_t mask = 1; mask < total; ++mask) {
            std::size_t low = std::countr_zero(mask);
            dimmax[mask] = std::max(dimmax[mask & (mask - 1)], game.weight(low, i));
        }
        for (std::size_t mask = 0; mask < total; ++mask) qsum[mask] += dimmax[mask];
    }
    return qsum;
}

struct EnumTables {
    std::vector<Weight> qsum;
    std::vector<bool> win;
    std::uint64_t full = 0;

    explicit EnumTables(const Game& game) {
        const std::size_t n = game.n();
        full = (n == 64) ? ~0ull : ((std::uint64_t{1} << n) - 1);
        qsum = all_qsums(game);
        win.resize(qsum.size());
        for (std::uint64_t mask = 0; mask <= full; ++mask)
            win[mask] = qsum[mask] > qsum[full ^ mask];
    }

    bool mwc(std::uint64_t mask) const {
        if (!win[mask]) return false;
        for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1)
            if (win[mask ^ (rest & ~(rest - 1))]) return false;
        return true;
    }
};

}  // namespace

std::vector<Coalition> enumerate_mwc(const Game& game, std::size_t limit) {
    check_limit(game, limit);
    EnumTables t(game);
    std::vector<Coalition> out;
    for (std::uint64_t mask = 1; mask <= t.full; ++mask)
        if (t.mwc(mask)) out.push_back(Coalition::from_mask(mask));
    std::sort(out.begin(), out.end());
    return out;
}

std::uint64_t count_winning(const Game& game, std::size_t limit) {
    check_limit(game, limit);
    EnumTables t(game);
    std::uint64_t count = 0;
    for (std::uint64_t mask = 1; mask <= t.full; ++mask) count += t.win[mask];
    return count;
}

SwingFamily swing_family(const Game& game, PlayerId j, std::size_t limit) {
    check_limit(game, limit);
    if (j >= game.n()) throw Error(Error::Code::Parameter, "player id out of range");
    EnumTables t(game);
    SwingFamily fam;
    fam.player = j;
    fam.wc_count_by_size.assign(game.n() + 1, 0);
    const std::uint64_t bit = std::uint64_t{1} << j;
    for (std::uint64_t mask = 1; mask <= t.full; ++mask) {
        if (!(mask & bit)) continue;
        if (t.win[mask] && !t.win[mask ^ bit]) {
            ++fam.wc_count;
            ++fam.wc_count_by_size[std::popcount(mask)];
        }
        if (t.mwc(mask)) fam.mwc_in.push_back(Coalition::from_mask(mask));
    }
    std::sort(fam.mwc_in.begin(), fam.mwc_in.end());
    return fam;
}

PowerProfile index_oracle(const Game& game, IndexKind kind, std::size_t limit) {
    check_limit(game, limit);
    EnumTables t(game);
    const std::size_t n = game.n();

    // Per player: swing counts by coalition size, and MWC membership by size.
    std::vector<std::vector<std::uint64_t>> swing(n, std::vector<std::uint64_t>(n + 1, 0));
    std::vector<std::vector<std::uint64_t>> mwc_by_size(n, std::vector<std::uint64_t>(n + 1, 0));
    for (std::uint64_t mask = 1; mask <= t.full; ++mask) {
        const int size = std::popcount(mask);
        if (t.win[mask]) {
            for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1) {
                std::uint64_t bit = rest & ~(rest - 1);
                if (!t.win[mask ^ bit]) ++swing[std::countr_zero(bit)][size];
            }
        }
        if (t.mwc(mask)) {
            for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1)
                ++mwc_by_size[std::countr_zero(rest & ~(rest - 1))][size];
        }
    }

    PowerProfile prof;
    prof.kind = kind;
    prof.values.resize(n);
    FactorialTable fact(n);
    for (std::size_t j = 0; j < n; ++j) {
        switch (kind) {
            case IndexKind::ss: {
                BigInt num = 0;
                for (std::size_t s = 1; s <= n; ++s)
                    if (swing[j][s]) num += BigInt(swing[j][s]) * fact[s - 1] * fact[n - s];
                prof.values[j] = Rational(num, fact[n]);
                break;
            }
            case IndexKind::bz: {
                std::uint64_t count = 0;
                for (std::size_t s = 1; s <= n; ++s) count += swing[j][s];
                prof.values[j] = Rational(BigInt(count), pow2(n - 1));
                break;
            }
            case IndexKind::hp: {
                std::uint64_t count = 0;
                for (std::size_t s = 1; s <= n; ++s) count += mwc_by_size[j][s];
                prof.values[j] = Rational(BigInt(count));
                break;
            }
            case IndexKind::dp: {
                Rational v = 0;
                for (std::size_t s = 1; s <= n; ++s)
                    if (mwc_by_size[j][s]) v += Rational(BigInt(mwc_by_size[j][s]), BigInt(s));
                prof.values[j] = v;
                break;
            }
        }
    }
    return prof;
}

std::vector<Rational> oracle_allocation(const Game& game, const PartitionStructure& pi,
                                        const PowerProfile& powers) {
    std::vector<Rational> out(game.n(), Rational(0));
    auto winner = winner_of(game, pi);
    if (!winner) return out;
    Rational total = 0;
    for (PlayerId j : winner->members()) total += powers.values[j];
    if (total == 0) return out;
    for (PlayerId j : winner->members()) out[j] = powers.values[j] / total;
    return out;
}

std::vector<std::vector<Coalition>> all_partitions(const std::vector<PlayerId>& ids) {
    std::vector<std::vector<Coalition>> result;
    std::vector<std::vector<PlayerId>> blocks;
    auto rec = [&](auto&& self, std::size_t pos) -> void {
        if (pos == ids.size()) {
            std::vector<Coalition> out;
            out.reserve(blocks.size());
            for (const auto& b : blocks) out.push_back(Coalition(b));
            result.push_back(std::move(out));
            return;
        }
        // index-based: recursion appends and removes trailing blocks
        const std::size_t limit = blocks.size();
        for (std::size_t i = 0; i < limit; ++i) {
            blocks[i].push_back(ids[pos]);
            self(self, pos + 1);
            blocks[i].pop_back();
        }
        blocks.push_back({ids[pos]});
        self(self, pos + 1);
        blocks.pop_back();
    };
    rec(rec, 0);
    return result;
}

namespace {

// Recursive C-stability over partition space. The outside world only enters
// through the largest outside block qsum: inside payoffs are zero whenever an
// outside block is at least tied for the top, and a deviator must strictly
// beat every outside block to ever earn a positive payoff.
class StabilityChecker {
public:
    StabilityChecker(const Game& game, const PowerProfile& powers)
        : game_(game), theta_(powers.values), qsum_(all_qsums(game)) {
        full_ = (std::uint64_t{1} << game.n()) - 1;
        theta_mask_.resize(qsum_.size(), Rational(0));
        for (std::uint64_t mask = 1; mask <= full_; ++mask) {
            std::uint64_t low = mask & ~(mask - 1);
            theta_mask_[mask] = theta_mask_[mask & (mask - 1)] + theta_[std::countr_zero(low)];
        }
    }

    // Payoffs of a full structure given as block masks covering `mask`, with
    // the strongest outside block summarized by its qsum (-1 when none).
    std::vector<Rational> payoffs(const std::vector<std::uint64_t>& blocks,
                                  Weight outside_max) const {
        std::vector<Rational> out(game_.n(), Rational(0));
        Weight best = -1;
        int ties = 0;
        std::uint64_t arg = 0;
        for (std::uint64_t b : blocks) {
            if (qsum_[b] > best) best = qsum_[b], ties = 1, arg = b;
            else if (qsum_[b] == best) ++ties;
        }
        if (best <= outside_max || ties != 1) return out;
        const Rational& total = theta_mask_[arg];
        if (total == 0) return out;
        for (std::uint64_t rest = arg; rest != 0; rest &= rest - 1) {
            PlayerId j = std::countr_zero(rest & ~(rest - 1));
            out[j] = theta_[j] / total;
        }
        return out;
    }

    // Does some nonempty C inside `mask` block the structure with the given
    // original payoffs? A blocker must be the strict winner against every
    // stable (or, failing that, every possible) re-partition of the rest.
    bool blocked(std::uint64_t mask, Weight outside_max,
                 const std::vector<Rational>& original) {
        for (std::uint64_t c = mask; c != 0; c = (c - 1) & mask) {
            Weight qc = qsum_[c];
            if (qc <= outside_max) continue;
            const Rational& tc = theta_mask_[c];
            if (tc == 0) continue;
            bool improves = true;
            for (std::uint64_t rest = c; rest != 0 && improves; rest &= rest - 1) {
                PlayerId j = std::countr_zero(rest & ~(rest - 1));
                if (theta_[j] <= original[j] * tc) improves = false;
            }
            if (!improves) continue;
            if (qc <= stable_info(mask ^ c, std::max(outside_max, qc)).worst_opposition)
                continue;
            return true;
        }
        return false;
    }

    struct Info {
        std::vector<std::vector<std::uint64_t>> stable;
        Weight worst_opposition = -1;  // max top-block qsum a deviator must beat
    };

    const Info& stable_info(std::uint64_t mask, Weight outside_max) {
        auto key = std::make_pair(mask, outside_max);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        Info info;
        if (std::popcount(mask) <= 1) {
            if (mask == 0)
                info.stable.push_back({});
            else
                info.stable.push_back({mask});
            info.worst_opposition = mask == 0 ? -1 : qsum_[mask];
        } else {
            for (const auto& pi : partitions_of(mask)) {
                auto original = payoffs(pi, outside_max);
                if (!blocked(mask, outside_max, original)) info.stable.push_back(pi);
            }
            if (info.stable.empty()) {
                info.worst_opposition = qsum_[mask];  // fallback: all partitions, topped by one block
            } else {
                info.worst_opposition = -1;
                for (const auto& pi : info.stable)
                    for (std::uint64_t b : pi)
                        info.worst_opposition = std::max(info.worst_opposition, qsum_[b]);
            }
        }
        return memo_.emplace(key, std::move(info)).first->second;
    }

    const std::vector<std::vector<std::uint64_t>>& partitions_of(std::uint64_t mask) {
        auto it = partition_cache_.find(mask);
        if (it != partition_cache_.end()) return it->second;
        std::vector<std::vector<std::uint64_t>> result;
        if (mask == 0) {
            result.push_back({});
        } else {
            std::uint64_t low = mask & ~(mask - 1);
            std::uint64_t rest = mask ^ low;
            // pick the block containing the lowest id, recurse on the rest
            for (std::uint64_t sub = rest;; sub = (sub - 1) & rest) {
                std::uint64_t block = low | sub;
                for (const auto& tail : partitions_of(rest ^ sub)) {
                    auto pi = tail;
                    pi.push_back(block);
                    result.push_back(std::move(pi));
                }
                if (sub == 0) break;
            }
        }
        return partition_cache_.emplace(mask, std::move(result)).first->second;
    }

    bool winning(std::uint64_t mask) const { return qsum_[mask] > qsum_[full_ ^ mask]; }

    std::uint64_t full() const { return full_; }

private:
    const Game& game_;
    std::vector<Rational> theta_;
    std::vector<Weight> qsum_;
    std::vector<Rational> theta_mask_;
    std::uint64_t full_ = 0;
    std::map<std::pair<std::uint64_t, Weight>, Info> memo_;
    std::map<std::uint64_t, std::vector<std::vector<std::uint64_t>>> partition_cache_;
};

PartitionStructure to_structure(const Game& game, std::vector<Coalition> blocks) {
    std::sort(blocks.begin(), blocks.end());
    return PartitionStructure(game, std::move(blocks));
}

}  // namespace

std::vector<PartitionStructure> cstable_structures_oracle(const Game& game, IndexKind kind,
                                                          std::size_t limit) {
    if (game.n() > std::min(limit, kHardCap))
        throw Error(Error::Code::OracleLimit,
                    "recursive stability oracle limited to n <= " +
                        std::to_string(std::min(limit, kHardCap)));
    PowerProfile powers = index_oracle(game, kind);
    StabilityChecker checker(game, powers);

    std::vector<PlayerId> ids(game.n());
    for (std::size_t j = 0; j < game.n(); ++j) ids[j] = static_cast<PlayerId>(j);

    std::vector<PartitionStructure> out;
    for (const auto& pi : all_partitions(ids)) {
        std::vector<std::uint64_t> blocks;
        bool has_winner = false;
        for (const auto& b : pi) {
            blocks.push_back(b.mask());
            has_winner = has_winner || checker.winning(b.mask());
        }
        if (!has_winner) continue;
        auto original = checker.payoffs(blocks, -1);
        if (!checker.blocked(checker.full(), -1, original)) out.push_back(to_structure(game, pi));
    }
    return out;
}

namespace {

// Literal, memo-free transcription of the recursive definition. Every set of
// stable sub-partitions is recomputed from scratch on each use.
class ReferenceChecker {
public:
    ReferenceChecker(const Game& game, const PowerProfile& powers)
        : game_(game), theta_(powers.values), qsum_(all_qsums(game)) {}

    std::vector<Rational> payoffs(std::vector<std::uint64_t> blocks) const {
        std::vector<Rational> out(game_.n(), Rational(0));
        Weight best = -1;
        int ties = 0;
        std::uint64_t arg = 0;
        for (std::uint64_t b : blocks) {
            if (qsum_[b] > best) best = qsum_[b], ties = 1, arg = b;
            else if (qsum_[b] == best) ++ties;
        }
        if (ties != 1) return out;
        Rational total = 0;
        for (std::uint64_t rest = arg; rest != 0; rest &= rest - 1)
            total += theta_[std::countr_zero(rest & ~(rest - 1))];
        if (total == 0) return out;
        for (std::uint64_t rest = arg; rest != 0; rest &= rest - 1) {
            PlayerId j = std::countr_zero(rest & ~(rest - 1));
            out[j] = theta_[j] / total;
        }
        return out;
    }

    std::vector<std::vector<std::uint64_t>> partitions_of(std::uint64_t mask) const {
        std::vector<std::vector<std::uint64_t>> result;
        if (mask == 0) {
            result.push_back({});
            return result;
        }
        std::uint64_t low = mask & ~(mask - 1);
        std::uint64_t rest = mask ^ low;
        for (std::uint64_t sub = rest;; sub = (sub - 1) & rest) {
            for (const auto& tail : partitions_of(rest ^ sub)) {
                auto pi = tail;
                pi.push_back(low | sub);
                result.push_back(std::move(pi));
            }
            if (sub == 0) break;
        }
        return result;
    }

    bool stable(const std::vector<std::uint64_t>& pi1, std::uint64_t s_mask,
                const std::vector<std::uint64_t>& outside) const {
        if (std::popcount(s_mask) <= 1) return true;
        auto whole = pi1;
        whole.insert(whole.end(), outside.begin(), outside.end());
        auto original = payoffs(whole);
        for (std::uint64_t c = s_mask; c != 0; c = (c - 1) & s_mask) {
            if (blocks(c, s_mask, outside, original)) return false;
        }
        return true;
    }

    bool blocks(std::uint64_t c, std::uint64_t s_mask, std::vector<std::uint64_t> outside,
                const std::vector<Rational>& original) const {
        std::uint64_t rest_mask = s_mask ^ c;
        auto outside_plus = outside;
        outside_plus.push_back(c);
        std::vector<std::vector<std::uint64_t>> candidates;
        for (const auto& pi : partitions_of(rest_mask))
            if (!stable(pi, rest_mask, outside_plus)) continue;
            else candidates.push_back(pi);
        if (candidates.empty()) candidates = partitions_of(rest_mask);

        for (const auto& pi : candidates) {
            auto whole = pi;
            whole.push_back(c);
            whole.insert(whole.end(), outside.begin(), outside.end());
            auto now = payoffs(whole);
            for (std::uint64_t rest = c; rest != 0; rest &= rest - 1) {
                PlayerId j = std::countr_zero(rest & ~(rest - 1));
                if (!(now[j] > original[j])) return false;
            }
        }
        return true;
    }

    bool winning(std::uint64_t mask) const {
        std::uint64_t full = (std::uint64_t{1} << game_.n()) - 1;
        return qsum_[mask] > qsum_[full ^ mask];
    }

private:
    const Game& game_;
    std::vector<Rational> theta_;
    std::vector<Weight> qsum_;
};

bool ref_stable(const ReferenceChecker& ref, const std::vector<std::uint64_t>& blocks,
                std::uint64_t full) {
    bool has_winner = false;
    for (std::uint64_t b : blocks) has_winner = has_winner || ref.winning(b);
    if (!has_winner) return false;
    auto original = ref.payoffs(blocks);
    for (std::uint64_t c = full; c != 0; c = (c - 1) & full)
        if (ref.blocks(c, full, {}, original)) return false;
    return true;
}

}  // namespace

std::vector<PartitionStructure> cstable_structures_reference(const Game& game, IndexKind kind,
                                                             std::size_t limit) {
    if (game.n() > limit)
        throw Error(Error::Code::OracleLimit, "reference stability checker limited to n <= " +
                                                  std::to_string(limit));
    PowerProfile powers = index_oracle(game, kind);
    ReferenceChecker ref(game, powers);
    std::uint64_t full = (std::uint64_t{1} << game.n()) - 1;

    std::vector<PlayerId> ids(game.n());
    for (std::size_t j = 0; j < game.n(); ++j) ids[j] = static_cast<PlayerId>(j);

    std::vector<PartitionStructure> out;
    for (const auto& pi : all_partitions(ids)) {
        std::vector<std::uint64_t> blocks;
        for (const auto& b : pi) blocks.push_back(b.mask());
        if (ref_stable(ref, blocks, full)) out.push_back(to_structure(game, pi));
    }
    return out;
}

}  // namespace cwmmg
