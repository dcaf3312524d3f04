#include "cwmmg/indices2d.hpp"

#include <algorithm>

namespace cwmmg {

namespace {

void check_collection(const Game& game, const MwcCollection& mwc) {
    if (mwc.n != game.n())
        throw Error(Error::Code::Consistency,
                    "MwcCollection does not belong to this game (player counts differ)");
}

}  // namespace

PowerProfile hp2(const Game& game, const MwcCollection& mwc) {
    check_collection(game, mwc);
    PowerProfile prof;
    prof.kind = IndexKind::hp;
    prof.values.assign(game.n(), Rational(0));
    std::vector<long long> hp(game.n(), 0);

    if (mwc.branch == Mwc2Branch::Intersecting) {
        for (const auto& c : mwc.explicit_mwc)
            for (PlayerId j : c.members()) ++hp[j];
    } else if (mwc.branch != Mwc2Branch::General) {
        // one busy set wins outright: itself, plus (when it has two or more
        // members) the other busy set joined by each of them in turn
        const auto& winners = mwc.branch == Mwc2Branch::A1Winning ? mwc.a1 : mwc.a2;
        const auto& others = mwc.branch == Mwc2Branch::A1Winning ? mwc.a2 : mwc.a1;
        bool pattern = mwc.pattern_a2_plus_each_a1 || mwc.pattern_a1_plus_each_a2;
        for (PlayerId j : winners) hp[j] = 1 + (pattern ? 1 : 0);
        if (pattern)
            for (PlayerId j : others) hp[j] = static_cast<long long>(winners.size());
    } else {
        const long long n1 = static_cast<long long>(mwc.side1.size());
        const long long n2 = static_cast<long long>(mwc.side2.size());
        const long long m1 = static_cast<long long>(mwc.a1.size());
        const long long m2 = static_cast<long long>(mwc.a2.size());

        long long mwc3_a1 = 0, mwc3_a2 = 0;  // memberships of one A_1 / A_2 player
        if (mwc.mwc3_merged) {
            mwc3_a1 = mwc3_a2 = 1;
        } else {
            mwc3_a1 = (mwc.mwc3_a1_plus_one ? m2 : 0) + (mwc.mwc3_a2_plus_one ? 1 : 0);
            mwc3_a2 = (mwc.mwc3_a2_plus_one ? m1 : 0) + (mwc.mwc3_a1_plus_one ? 1 : 0);
        }
        for (PlayerId j : mwc.a1) hp[j] = n1 + (mwc.c0_side1 ? 1 : 0) + mwc3_a1;
        for (PlayerId j : mwc.a2) hp[j] = n2 + (mwc.c0_side2 ? 1 : 0) + mwc3_a2;

        std::vector<std::size_t> pos1(game.n(), 0), pos2(game.n(), 0);
        for (std::size_t p = 0; p < mwc.idle_by_dim1.size(); ++p) pos1[mwc.idle_by_dim1[p]] = p;
        for (std::size_t p = 0; p < mwc.idle_by_dim2.size(); ++p) pos2[mwc.idle_by_dim2[p]] = p;
        for (PlayerId j : mwc.idle_by_dim1) {
            long long cnt = (n1 + 1 - static_cast<long long>(mwc.tau1[j])) +
                            (mwc.sigma1[j] ? 1 : 0) +
                            (n2 + 1 - static_cast<long long>(mwc.tau2[j])) +
                            (mwc.sigma2[j] ? 1 : 0);
            if (mwc.c0_side1 && pos1[j] < *mwc.c0_side1) ++cnt;
            if (mwc.c0_side2 && pos2[j] < *mwc.c0_side2) ++cnt;
            hp[j] = cnt;
        }
    }
    for (std::size_t j = 0; j < game.n(); ++j) prof.values[j] = Rational(hp[j]);
    return prof;
}

PowerProfile dp2(const Game& game, const MwcCollection& mwc) {
    check_collection(game, mwc);
    PowerProfile prof;
    prof.kind = IndexKind::dp;
    prof.values.assign(game.n(), Rational(0));
    auto& dp = prof.values;

    if (mwc.branch == Mwc2Branch::Intersecting) {
        for (const auto& c : mwc.explicit_mwc) {
            Rational share(1, static_cast<long long>(c.size()));
            for (PlayerId j : c.members()) dp[j] += share;
        }
        return prof;
    }
    if (mwc.branch != Mwc2Branch::General) {
        const auto& winners = mwc.branch == Mwc2Branch::A1Winning ? mwc.a1 : mwc.a2;
        const auto& others = mwc.branch == Mwc2Branch::A1Winning ? mwc.a2 : mwc.a1;
        bool pattern = mwc.pattern_a2_plus_each_a1 || mwc.pattern_a1_plus_each_a2;
        Rational own(1, static_cast<long long>(winners.size()));
        Rational mixed(1, static_cast<long long>(others.size()) + 1);
        for (PlayerId j : winners) dp[j] = own + (pattern ? mixed : Rational(0));
        if (pattern) {
            Rational all = mixed * static_cast<long long>(winners.size());
            for (PlayerId j : others) dp[j] = all;
        }
        return prof;
    }

    const long long m1 = static_cast<long long>(mwc.a1.size());
    const long long m2 = static_cast<long long>(mwc.a2.size());

    auto suffix_recip = [](const std::vector<StoredCandidate>& side, long long busy) {
        std::vector<Rational> suf(side.size() + 1, Rational(0));
        for (std::size_t i = side.size(); i-- > 0;) {
            long long size = busy + static_cast<long long>(side[i].cutoff) + (side[i].mu ? 1 : 0);
            suf[i] = suf[i + 1] + Rational(1, size);
        }
        return suf;
    };
    auto suf1 = suffix_recip(mwc.side1, m1);
    auto suf2 = suffix_recip(mwc.side2, m2);

    Rational mwc3_a1(0), mwc3_a2(0);
    if (mwc.mwc3_merged) {
        mwc3_a1 = mwc3_a2 = Rational(1, 2);
    } else {
        if (mwc.mwc3_a1_plus_one) {
            mwc3_a1 += Rational(m2, m1 + 1);
            mwc3_a2 += Rational(1, m1 + 1);
        }
        if (mwc.mwc3_a2_plus_one) {
            mwc3_a1 += Rational(1, m2 + 1);
            mwc3_a2 += Rational(m1, m2 + 1);
        }
    }
    Rational c01_share =
        mwc.c0_side1 ? Rational(1, m1 + static_cast<long long>(*mwc.c0_side1)) : Rational(0);
    Rational c02_share =
        mwc.c0_side2 ? Rational(1, m2 + static_cast<long long>(*mwc.c0_side2)) : Rational(0);
    for (PlayerId j : mwc.a1) dp[j] = suf1[0] + c01_share + mwc3_a1;
    for (PlayerId j : mwc.a2) dp[j] = suf2[0] + c02_share + mwc3_a2;

    std::vector<std::size_t> pos1(game.n(), 0), pos2(game.n(), 0);
    for (std::size_t p = 0; p < mwc.idle_by_dim1.size(); ++p) pos1[mwc.idle_by_dim1[p]] = p;
    for (std::size_t p = 0; p < mwc.idle_by_dim2.size(); ++p) pos2[mwc.idle_by_dim2[p]] = p;
    for (PlayerId j : mwc.idle_by_dim1) {
        Rational v = suf1[mwc.tau1[j] - 1] + suf2[mwc.tau2[j] - 1];
        if (mwc.c0_side1 && pos1[j] < *mwc.c0_side1) v += c01_share;
        if (mwc.c0_side2 && pos2[j] < *mwc.c0_side2) v += c02_share;
        dp[j] = v;
    }
    // anchored candidates: the anchor is the one member outside the prefix
    for (const auto& cand : mwc.side1)
        if (cand.mu) dp[cand.anchor] += Rational(1, m1 + static_cast<long long>(cand.cutoff) + 1);
    for (const auto& cand : mwc.side2)
        if (cand.mu) dp[cand.anchor] += Rational(1, m2 + static_cast<long long>(cand.cutoff) + 1);
    return prof;
}

std::vector<BigInt> count_losing_by_size(std::vector<std::pair<Weight, Weight>> items,
                                         Weight base_level, Weight beta, Weight delta,
                                         const BinomialTable& binom) {
    const std::size_t m = items.size();
    std::sort(items.begin(), items.end());
    std::vector<Weight> suffix_b(m + 1, -1);
    for (std::size_t i = m; i-- > 0;) suffix_b[i] = std::max(suffix_b[i + 1], items[i].second);

    std::vector<BigInt> lose(m + 1, BigInt(0));
    std::size_t base_end = 0;
    while (base_end < m && items[base_end].first <= base_level) ++base_end;

    // one pass per level: the base level first, then each distinct higher a
    std::size_t group_start = base_end;
    for (std::size_t pass = 0;; ++pass) {
        std::size_t e, q;
        Weight level;
        if (pass == 0) {
            e = base_end;
            q = 0;
            level = base_level;
        } else {
            if (group_start >= m) break;
            level = items[group_start].first;
            std::size_t group_end = group_start;
            while (group_end < m && items[group_end].first == level) ++group_end;
            e = group_end;
            q = group_end - group_start;
            group_start = group_end;
        }
        const Weight theta = level + delta;
        const Weight forced = std::max(beta, suffix_b[e]);
        std::size_t r = 0, rq = 0;
        for (std::size_t i = 0; i < e; ++i)
            if (items[i].second >= theta) {
                ++r;
                if (q > 0 && i >= e - q) ++rq;
            }
        for (std::size_t l = (q > 0 ? 1 : 0); l <= e; ++l) {
            BigInt total = binom.choose(e, l);
            if (q > 0) total -= binom.choose(e - q, l);
            if (total == 0) continue;
            if (forced >= theta) {
                lose[l] += total;
                continue;
            }
            // the team wins iff every excluded trigger stays quiet: T must
            // absorb all of R (and still hit the level group)
            BigInt win = 0;
            if (l >= r) {
                win = binom.choose(e - r, l - r);
                if (q > 0 && rq == 0) win -= binom.choose(e - r - q, l - r);
            }
            lose[l] += total - win;
        }
    }
    return lose;
}

namespace {

// Builds the per-level winning families of one side. `side1` means the
// families containing all of A_1(N) and no A_2(N) member; their level is the
// coalition's second-coordinate maximum.
WcSide build_side(const Game& game, const BusySplit& split, const CandidateTable& table,
                  bool side1, const BinomialTable& binom) {
    const auto& scan_order = side1 ? split.idle_by_dim2 : split.idle_by_dim1;    // level desc
    const auto& prefix_order = side1 ? split.idle_by_dim1 : split.idle_by_dim2;  // required prefix
    const auto& cross_pfx = side1 ? table.pfx2_along1 : table.pfx1_along2;
    const auto& own_pfx = side1 ? table.pfx1_along2 : table.pfx2_along1;
    const Weight q_own = side1 ? split.q1N : split.q2N;
    const Weight q_cross = side1 ? split.q2N : split.q1N;
    const Weight v0 = side1 ? split.q2A1 : split.q1A2;         // level of the busy set itself
    const Weight beta_busy = side1 ? split.q1A2 : split.q2A1;  // own coord of the other busy set
    const std::size_t busy_size = side1 ? split.a1.size() : split.a2.size();
    const std::size_t own_dim = side1 ? 0 : 1;
    const std::size_t cross_dim = side1 ? 1 : 0;
    const std::size_t m = split.m();
    const std::size_t n = game.n();

    WcSide side;

    std::vector<std::pair<Weight, std::pair<std::size_t, std::size_t>>> levels;
    for (std::size_t p = 0; p < m;) {
        Weight v = game.weight(scan_order[p], cross_dim);
        std::size_t q = p;
        while (q < m && game.weight(scan_order[q], cross_dim) == v) ++q;
        if (v > v0) levels.push_back({v, {p, q}});
        p = q;
    }
    levels.push_back({v0, {m, m}});  // the floor level is attained by the busy set itself

    for (const auto& [v, range] : levels) {
        const Weight theta = q_own + v - q_cross;
        if (beta_busy >= theta) continue;  // the other busy set blocks a win at this level

        // required members: idle players whose own coordinate reaches theta
        std::size_t req = 0;
        {
            std::size_t lo = 0, hi = m;
            while (lo < hi) {
                std::size_t mid = (lo + hi) / 2;
                if (game.weight(prefix_order[mid], own_dim) >= theta)
                    lo = mid + 1;
                else
                    hi = mid;
            }
            req = lo;
        }
        const Weight req_cross_max = cross_pfx.max(req);
        if (req_cross_max > v) continue;  // a required member overshoots the level

        LevelFamily fam;
        fam.level = v;
        fam.required = req;
        fam.base_size = busy_size + req;

        std::size_t at_most_level;  // idles whose cross coordinate is <= v
        {
            std::size_t lo = 0, hi = m;
            while (lo < hi) {
                std::size_t mid = (lo + hi) / 2;
                if (game.weight(scan_order[mid], cross_dim) > v)
                    lo = mid + 1;
                else
                    hi = mid;
            }
            at_most_level = m - lo;
        }
        fam.optional = at_most_level - req;

        std::size_t group_required = 0;
        for (std::size_t p = range.first; p < range.second; ++p) {
            PlayerId id = scan_order[p];
            std::size_t own_pos = side1 ? split.pos1[id] : split.pos2[id];
            if (own_pos < req) ++group_required;
        }
        fam.attainers = (range.second - range.first) - group_required;
        fam.need_attainer = v > v0 && group_required == 0;

        fam.family_size = pow2(fam.optional);
        if (fam.need_attainer) fam.family_size -= pow2(fam.optional - fam.attainers);
        if (fam.family_size == 0) continue;

        if (fam.need_attainer && fam.attainers > 0) {
            // a sole attainer is swing iff the coalition it leaves behind loses
            Weight beta = beta_busy;
            beta = std::max(beta, own_pfx.max(range.first));  // idles above the level stay outside
            for (std::size_t p = range.first; p < range.second; ++p)
                beta = std::max(beta, game.weight(scan_order[p], own_dim));
            const Weight w0 = std::max(v0, req_cross_max);
            std::vector<std::pair<Weight, Weight>> weak;
            for (std::size_t p = range.second; p < m; ++p) {
                PlayerId id = scan_order[p];
                std::size_t own_pos = side1 ? split.pos1[id] : split.pos2[id];
                if (own_pos < req) continue;
                weak.push_back({game.weight(id, cross_dim), game.weight(id, own_dim)});
            }
            auto lose = count_losing_by_size(std::move(weak), w0, beta, q_own - q_cross, binom);
            fam.sole_swing_by_size.assign(n + 2, BigInt(0));
            for (std::size_t l = 0; l < lose.size(); ++l)
                if (lose[l] != 0) fam.sole_swing_by_size[fam.base_size + 1 + l] += lose[l];
        }
        side.families.push_back(std::move(fam));
    }

    side.cum_by_size.assign(side.families.size() + 1, std::vector<BigInt>(n + 2, BigInt(0)));
    for (std::size_t i = side.families.size(); i-- > 0;) {
        const auto& fam = side.families[i];
        auto& row = side.cum_by_size[i];
        row = side.cum_by_size[i + 1];
        for (std::size_t l = 0; l <= fam.optional; ++l) {
            BigInt cnt = binom.choose(fam.optional, l);
            if (fam.need_attainer) cnt -= binom.choose(fam.optional - fam.attainers, l);
            if (cnt != 0) row[fam.base_size + l] += cnt;
        }
        side.total += fam.family_size;
    }
    return side;
}

}  // namespace

WcStructure wc_structure(const Game& game, const BusySplit& split, const CandidateTable& table) {
    if (game.k() != 2) throw Error(Error::Code::Dimension, "wc_structure requires k = 2");
    if (split.intersecting)
        throw Error(Error::Code::Precondition, "wc_structure requires disjoint busy sets");

    WcStructure s;
    s.n = game.n();
    s.a1 = split.a1;
    s.a2 = split.a2;
    s.idle_by_dim1 = split.idle_by_dim1;
    s.idle_by_dim2 = split.idle_by_dim2;
    s.pos1 = split.pos1;
    s.pos2 = split.pos2;
    s.q1N = split.q1N;
    s.q2N = split.q2N;
    s.q1A2 = split.q1A2;
    s.q2A1 = split.q2A1;

    BinomialTable binom(game.n());
    s.side1 = build_side(game, split, table, true, binom);
    s.side2 = build_side(game, split, table, false, binom);

    const std::size_t m = split.m();
    s.wc3_count = (pow2(split.m1()) + pow2(split.m2()) - 3) * pow2(m);

    std::vector<std::pair<Weight, Weight>> items1, items2;
    items1.reserve(m);
    items2.reserve(m);
    for (PlayerId j : split.idle_by_dim1) {
        items1.push_back({game.weight(j, 1), game.weight(j, 0)});
        items2.push_back({game.weight(j, 0), game.weight(j, 1)});
    }
    // A_1 + T keeps the dim-1 maximum; its dim-2 level floats with T.
    s.a1_team_loses_by_size = count_losing_by_size(std::move(items1), split.q2A1, split.q1A2,
                                                   split.q1N - split.q2N, binom);
    s.a2_team_loses_by_size = count_losing_by_size(std::move(items2), split.q1A2, split.q2A1,
                                                   split.q2N - split.q1N, binom);

    s.total_wc = s.side1.total + s.side2.total + s.wc3_count;
    return s;
}

namespace {

std::vector<std::vector<BigInt>> swing_counts_intersecting(const Game& game,
                                                           const BusySplit& split) {
    const std::size_t n = game.n();
    BinomialTable binom(n);
    std::vector<std::vector<BigInt>> counts(n, std::vector<BigInt>(n + 2, BigInt(0)));
    std::vector<bool> in1(n, false), in2(n, false);
    for (PlayerId j : split.a1) in1[j] = true;
    for (PlayerId j : split.a2) in2[j] = true;
    const std::size_t m1 = split.m1(), m2 = split.m2();
    std::size_t both = 0;
    for (PlayerId j = 0; j < n; ++j)
        if (in1[j] && in2[j]) ++both;
    const std::size_t united = m1 + m2 - both;

    // every winning coalition holds A_1 or A_2 whole; players in one busy
    // set only are swing exactly when the other busy set is incomplete
    for (PlayerId j = 0; j < n; ++j) {
        if (!in1[j] && !in2[j]) continue;
        for (std::size_t s = 1; s <= n; ++s) {
            BigInt c = 0;
            if (in1[j]) c += binom.choose(n - m1, s - m1);
            if (in2[j]) c += binom.choose(n - m2, s - m2);
            c -= binom.choose(n - united, s - united);
            if (c != 0) counts[j][s] += c;
        }
    }
    return counts;
}

std::vector<std::vector<BigInt>> swing_counts_disjoint(const Game& game, const WcStructure& s) {
    const std::size_t n = game.n();
    BinomialTable binom(n);
    std::vector<std::vector<BigInt>> counts(n, std::vector<BigInt>(n + 2, BigInt(0)));

    auto accumulate_side = [&](const WcSide& side, bool is_side1) {
        const auto& busy = is_side1 ? s.a1 : s.a2;
        for (PlayerId j : busy)
            for (std::size_t sz = 0; sz <= n; ++sz) counts[j][sz] += side.cum_by_size[0][sz];

        const Weight q_own = is_side1 ? s.q1N : s.q2N;
        const Weight q_cross = is_side1 ? s.q2N : s.q1N;
        for (PlayerId j : s.idle_by_dim1) {
            const Weight own = game.weight(j, is_side1 ? 0 : 1);
            const Weight mine = game.weight(j, is_side1 ? 1 : 0);
            const Weight vcap = own + q_cross - q_own;  // required at levels up to here
            std::size_t lo = 0, hi = side.families.size();
            while (lo < hi) {
                std::size_t mid = (lo + hi) / 2;
                if (side.families[mid].level > vcap)
                    lo = mid + 1;
                else
                    hi = mid;
            }
            if (lo < side.families.size())
                for (std::size_t sz = 0; sz <= n; ++sz) counts[j][sz] += side.cum_by_size[lo][sz];
            if (mine > vcap) {  // an optional attainer at its own level
                std::size_t a = 0, b = side.families.size();
                while (a < b) {
                    std::size_t mid = (a + b) / 2;
                    if (side.families[mid].level > mine)
                        a = mid + 1;
                    else
                        b = mid;
                }
                if (a < side.families.size() && side.families[a].level == mine &&
                    !side.families[a].sole_swing_by_size.empty())
                    for (std::size_t sz = 0; sz <= n; ++sz)
                        counts[j][sz] += side.families[a].sole_swing_by_size[sz];
            }
        }
    };
    accumulate_side(s.side1, true);
    accumulate_side(s.side2, false);

    // coalitions meeting both busy sets: idle members are always null there,
    // busy members swing against a proper slice of the other busy set or as
    // the lone escort of its entirety
    const std::size_t m = s.idle_by_dim1.size();
    for (int side_idx = 0; side_idx < 2; ++side_idx) {
        const auto& own_busy = side_idx == 0 ? s.a1 : s.a2;
        const std::size_t mo = side_idx == 0 ? s.a1.size() : s.a2.size();
        const std::size_t mx = side_idx == 0 ? s.a2.size() : s.a1.size();
        const auto& team_loses =
            side_idx == 0 ? s.a2_team_loses_by_size : s.a1_team_loses_by_size;
        std::vector<BigInt> slice_by_size(n + 2, BigInt(0));
        for (std::size_t s2 = 1; s2 + 1 <= mx; ++s2)
            for (std::size_t t = 0; t <= m; ++t) {
                BigInt c = binom.choose(mx, s2) * binom.choose(m, t);
                if (c != 0) slice_by_size[mo + s2 + t] += c;
            }
        for (PlayerId j : own_busy) {
            for (std::size_t sz = 0; sz <= n; ++sz) counts[j][sz] += slice_by_size[sz];
            for (std::size_t t = 0; t < team_loses.size(); ++t)
                if (team_loses[t] != 0) counts[j][mx + 1 + t] += team_loses[t];
        }
    }
    return counts;
}

PowerProfile weigh_counts(const Game& game, IndexKind kind,
                          const std::vector<std::vector<BigInt>>& counts) {
    const std::size_t n = game.n();
    PowerProfile prof;
    prof.kind = kind;
    prof.values.assign(n, Rational(0));
    FactorialTable fact(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (kind == IndexKind::bz) {
            BigInt total = 0;
            for (std::size_t s = 1; s <= n; ++s) total += counts[j][s];
            prof.values[j] = Rational(total, pow2(n - 1));
        } else {
            BigInt num = 0;
            for (std::size_t s = 1; s <= n; ++s)
                if (counts[j][s] != 0) num += counts[j][s] * fact[s - 1] * fact[n - s];
            prof.values[j] = Rational(num, fact[n]);
        }
    }
    return prof;
}

}  // namespace

std::vector<std::vector<BigInt>> swing_counts_by_size(const Game& game) {
    if (game.k() != 2) throw Error(Error::Code::Dimension, "fast swing counts require k = 2");
    BusySplit split = split_busy(game);
    if (split.intersecting) return swing_counts_intersecting(game, split);
    CandidateTable table = build_candidates(split);
    WcStructure s = wc_structure(game, split, table);
    return swing_counts_disjoint(game, s);
}

PowerProfile bz2(const Game& game, const WcStructure& structure) {
    if (structure.n != game.n())
        throw Error(Error::Code::Consistency, "WcStructure does not belong to this game");
    return weigh_counts(game, IndexKind::bz, swing_counts_disjoint(game, structure));
}

PowerProfile ss2(const Game& game, const WcStructure& structure) {
    if (structure.n != game.n())
        throw Error(Error::Code::Consistency, "WcStructure does not belong to this game");
    return weigh_counts(game, IndexKind::ss, swing_counts_disjoint(game, structure));
}

PowerProfile bz2(const Game& game) {
    return weigh_counts(game, IndexKind::bz, swing_counts_by_size(game));
}

PowerProfile ss2(const Game& game) {
    return weigh_counts(game, IndexKind::ss, swing_counts_by_size(game));
}

}  // namespace cwmmg
