#include "cwmmg/mwc2d.hpp"

#include <algorithm>
#include <set>

namespace cwmmg {

BusySplit split_busy(const Game& game) {
    if (game.k() != 2)
        throw Error(Error::Code::Dimension,
                    "split_busy requires k = 2 (game has k = " + std::to_string(game.k()) + ")");
    BusySplit s;
    s.game = &game;
    s.q1N = game.grand_qvec()[0];
    s.q2N = game.grand_qvec()[1];
    s.pos1.assign(game.n(), BusySplit::npos);
    s.pos2.assign(game.n(), BusySplit::npos);

    for (PlayerId j = 0; j < game.n(); ++j) {
        bool b1 = game.weight(j, 0) == s.q1N;
        bool b2 = game.weight(j, 1) == s.q2N;
        if (b1) s.a1.push_back(j);
        if (b2) s.a2.push_back(j);
        if (b1 && b2) s.intersecting = true;
        if (!b1 && !b2) s.idle_by_dim1.push_back(j);
        if (b1) s.q2A1 = std::max(s.q2A1, game.weight(j, 1));
        if (b2) s.q1A2 = std::max(s.q1A2, game.weight(j, 0));
    }
    s.idle_by_dim2 = s.idle_by_dim1;
    std::stable_sort(s.idle_by_dim1.begin(), s.idle_by_dim1.end(),
                     [&](PlayerId a, PlayerId b) { return game.weight(a, 0) > game.weight(b, 0); });
    std::stable_sort(s.idle_by_dim2.begin(), s.idle_by_dim2.end(),
                     [&](PlayerId a, PlayerId b) { return game.weight(a, 1) > game.weight(b, 1); });
    for (std::size_t p = 0; p < s.idle_by_dim1.size(); ++p) s.pos1[s.idle_by_dim1[p]] = p;
    for (std::size_t p = 0; p < s.idle_by_dim2.size(); ++p) s.pos2[s.idle_by_dim2[p]] = p;
    return s;
}

namespace {

PrefixTop2 prefix_top2(const Game& game, const std::vector<PlayerId>& order, std::size_t dim) {
    PrefixTop2 t;
    t.best.resize(order.size());
    t.second.resize(order.size());
    t.argpos.resize(order.size());
    Weight best = -1, second = -1;
    std::size_t arg = BusySplit::npos;
    for (std::size_t p = 0; p < order.size(); ++p) {
        Weight v = game.weight(order[p], dim);
        if (v > best) {
            second = best;
            best = v;
            arg = p;
        } else if (v > second) {
            second = v;
        }
        t.best[p] = best;
        t.second[p] = second < 0 ? 0 : second;
        t.argpos[p] = arg;
    }
    return t;
}

}  // namespace

CandidateTable build_candidates(const BusySplit& split) {
    if (split.intersecting)
        throw Error(Error::Code::Precondition, "build_candidates requires disjoint busy sets");
    if (!split.game)
        throw Error(Error::Code::Precondition, "build_candidates: split carries no game");
    const Game& game = *split.game;
    CandidateTable t;
    const std::size_t m = split.m();
    t.x.assign(game.n(), 0);
    t.y.assign(game.n(), 0);
    t.mu1.assign(game.n(), false);
    t.mu2.assign(game.n(), false);
    t.pfx2_along1 = prefix_top2(game, split.idle_by_dim1, 1);
    t.pfx1_along2 = prefix_top2(game, split.idle_by_dim2, 0);

    // x(i): D_{1i} = {p_t : p_t^1 + q2N >= p_i^2 + q1N}. Thresholds fall
    // along the l-order, so the first-order prefix only ever grows.
    std::size_t ptr = 0;
    for (PlayerId j : split.idle_by_dim2) {
        Weight threshold = game.weight(j, 1) + split.q1N - split.q2N;
        while (ptr < m && game.weight(split.idle_by_dim1[ptr], 0) >= threshold) ++ptr;
        t.x[j] = ptr;
        t.mu1[j] = split.pos1[j] >= ptr;
    }
    ptr = 0;
    for (PlayerId j : split.idle_by_dim1) {
        Weight threshold = game.weight(j, 0) + split.q2N - split.q1N;
        while (ptr < m && game.weight(split.idle_by_dim2[ptr], 1) >= threshold) ++ptr;
        t.y[j] = ptr;
        t.mu2[j] = split.pos2[j] >= ptr;
    }
    return t;
}

namespace {

// Everything needed to run one side of the acceptance scan; side 2 is side 1
// with the dimensions swapped.
struct SideContext {
    const std::vector<PlayerId>* scan_order;     // anchors in cross-coordinate desc order
    const std::vector<PlayerId>* prefix_order;   // D members in the side's primary order
    const std::vector<std::size_t>* cutoff;      // x (or y) per player id
    const std::vector<std::size_t>* prefix_pos;  // position in prefix_order per id
    const PrefixTop2* cross_pfx;                 // cross-coordinate maxima along prefix_order
    std::size_t cross_dim;                       // 1 for side 1, 0 for side 2
    Weight q_own;                                // q1N for side 1
    Weight q_cross;                              // q2N for side 1
    Weight cross_of_own_busy;                    // q2A1 for side 1 (busy floor)
    Weight own_of_cross_busy;                    // q1A2 for side 1
};

// Scans anchors in descending cross-coordinate order and keeps the busy,
// winning and swing candidates, collapsing equal-level duplicates.
std::vector<StoredCandidate> scan_side(const Game& game, const SideContext& ctx) {
    std::vector<StoredCandidate> out;
    const std::size_t m = ctx.scan_order->size();
    Weight run_level = -1;
    bool run_has_collapsed = false;

    for (PlayerId j : *ctx.scan_order) {
        const Weight v = game.weight(j, ctx.cross_dim);
        if (v < ctx.cross_of_own_busy) break;                         // busy floor, monotone
        if (ctx.q_own + v <= ctx.own_of_cross_busy + ctx.q_cross) break;  // winning, monotone

        if (v != run_level) {
            run_level = v;
            run_has_collapsed = false;
        }
        const std::size_t x = (*ctx.cutoff)[j];
        const std::size_t own_pos = (*ctx.prefix_pos)[j];
        const bool mu = own_pos >= x;
        const Weight excl = ctx.cross_pfx->max_excluding(x, own_pos);
        if (v < excl) continue;  // a prefix member tops the anchor: anchor not busy

        // swing: removing the anchor must hand the win to the complement
        const Weight reduced_cross = std::max(ctx.cross_of_own_busy, excl);
        const Weight next_own =
            x < m ? game.weight((*ctx.prefix_order)[x], 1 - ctx.cross_dim) : 0;
        const Weight own_j = game.weight(j, 1 - ctx.cross_dim);
        const Weight opposition = std::max({ctx.own_of_cross_busy, next_own, own_j});
        if (ctx.q_own + reduced_cross > ctx.q_cross + opposition) continue;

        if (!mu) {
            if (run_has_collapsed) continue;  // same coalition as an earlier run member
            run_has_collapsed = true;
        }
        out.push_back(StoredCandidate{j, x, mu, v});
    }
    return out;
}

// The one coalition per side whose cross maximum stays inside the busy set:
// the busy set plus every idle player strong enough in the own dimension,
// provided none of them reaches the busy set's own cross coordinate.
std::optional<std::size_t> scan_anchorless(const Game& game, const SideContext& ctx) {
    const Weight threshold = ctx.q_own + ctx.cross_of_own_busy - ctx.q_cross;
    if (ctx.own_of_cross_busy >= threshold) return std::nullopt;  // not winning
    const auto& order = *ctx.prefix_order;
    std::size_t len = 0;
    while (len < order.size() && game.weight(order[len], 1 - ctx.cross_dim) >= threshold) ++len;
    if (len == 0) return std::nullopt;
    if (ctx.cross_pfx->max(len) >= ctx.cross_of_own_busy) return std::nullopt;
    return len;
}

Coalition coalition_from_parts(std::vector<PlayerId> base, const std::vector<PlayerId>& order,
                               std::size_t cutoff, std::optional<PlayerId> extra) {
    for (std::size_t p = 0; p < cutoff; ++p) base.push_back(order[p]);
    if (extra) base.push_back(*extra);
    return Coalition(std::move(base));
}

void fill_tau_sigma(const BusySplit& split, MwcCollection& c) {
    c.tau1.assign(c.n, 0);
    c.tau2.assign(c.n, 0);
    c.sigma1.assign(c.n, false);
    c.sigma2.assign(c.n, false);
    // Cutoffs are non-decreasing in emission order, so the stored candidates
    // containing a given idle player form a suffix starting at tau.
    auto fill = [](const std::vector<StoredCandidate>& side, const std::vector<PlayerId>& order,
                   std::vector<std::size_t>& tau, std::vector<bool>& sigma) {
        std::vector<std::size_t> first_covering(order.size(), side.size() + 1);
        std::size_t pos = 0;
        for (std::size_t idx = 0; idx < side.size(); ++idx)
            for (; pos < side[idx].cutoff; ++pos) first_covering[pos] = idx + 1;
        for (std::size_t p = 0; p < order.size(); ++p) tau[order[p]] = first_covering[p];
        for (const auto& cand : side)
            if (cand.mu) sigma[cand.anchor] = true;
    };
    fill(c.side1, split.idle_by_dim1, c.tau1, c.sigma1);
    fill(c.side2, split.idle_by_dim2, c.tau2, c.sigma2);
}

}  // namespace

std::size_t MwcCollection::count() const {
    if (branch != Mwc2Branch::General)
        return explicit_mwc.size() + (pattern_a2_plus_each_a1 ? a1.size() : 0) +
               (pattern_a1_plus_each_a2 ? a2.size() : 0);
    std::size_t total = side1.size() + side2.size();
    if (c0_side1) ++total;
    if (c0_side2) ++total;
    if (mwc3_merged)
        ++total;
    else
        total += (mwc3_a1_plus_one ? a2.size() : 0) + (mwc3_a2_plus_one ? a1.size() : 0);
    return total;
}

void MwcCollection::for_each(const std::function<void(const Coalition&)>& fn) const {
    for (const auto& c : explicit_mwc) fn(c);
    if (pattern_a2_plus_each_a1)
        for (PlayerId a : a1) fn(coalition_from_parts(a2, {}, 0, a));
    if (pattern_a1_plus_each_a2)
        for (PlayerId b : a2) fn(coalition_from_parts(a1, {}, 0, b));
    if (branch != Mwc2Branch::General) return;

    if (mwc3_merged) {
        fn(coalition_from_parts(a1, {}, 0, a2[0]));
    } else {
        if (mwc3_a1_plus_one)
            for (PlayerId b : a2) fn(coalition_from_parts(a1, {}, 0, b));
        if (mwc3_a2_plus_one)
            for (PlayerId a : a1) fn(coalition_from_parts(a2, {}, 0, a));
    }
    for (const auto& cand : side1)
        fn(coalition_from_parts(a1, idle_by_dim1, cand.cutoff,
                                cand.mu ? std::optional<PlayerId>(cand.anchor) : std::nullopt));
    if (c0_side1) fn(coalition_from_parts(a1, idle_by_dim1, *c0_side1, std::nullopt));
    for (const auto& cand : side2)
        fn(coalition_from_parts(a2, idle_by_dim2, cand.cutoff,
                                cand.mu ? std::optional<PlayerId>(cand.anchor) : std::nullopt));
    if (c0_side2) fn(coalition_from_parts(a2, idle_by_dim2, *c0_side2, std::nullopt));
}

std::vector<Coalition> MwcCollection::materialize() const {
    std::vector<Coalition> out;
    out.reserve(count());
    for_each([&](const Coalition& c) { out.push_back(c); });
    std::sort(out.begin(), out.end());
    return out;
}

MwcCollection compute_mwc2(const Game& game, bool verify) {
    if (game.k() != 2)
        throw Error(Error::Code::Dimension,
                    "compute_mwc2 requires k = 2 (game has k = " + std::to_string(game.k()) + ")");
    BusySplit split = split_busy(game);
    MwcCollection c;
    c.n = game.n();
    c.a1 = split.a1;
    c.a2 = split.a2;
    c.idle_by_dim1 = split.idle_by_dim1;
    c.idle_by_dim2 = split.idle_by_dim2;

    if (split.intersecting) {
        c.branch = Mwc2Branch::Intersecting;
        std::set<Coalition> seen;
        for (const auto& cand : {Coalition(split.a1), Coalition(split.a2)})
            if (is_mwc(game, cand) && seen.insert(cand).second) c.explicit_mwc.push_back(cand);
        std::sort(c.explicit_mwc.begin(), c.explicit_mwc.end());
        fill_tau_sigma(split, c);
        return c;
    }

    const Weight max_idle_p1 = split.m() ? game.weight(split.idle_by_dim1[0], 0) : 0;
    const Weight max_idle_p2 = split.m() ? game.weight(split.idle_by_dim2[0], 1) : 0;
    const bool a1_wins = split.q1N + split.q2A1 > std::max(split.q1A2, max_idle_p1) + split.q2N;
    const bool a2_wins = split.q2N + split.q1A2 > std::max(split.q2A1, max_idle_p2) + split.q1N;

    if (a1_wins || a2_wins) {
        c.branch = a1_wins ? Mwc2Branch::A1Winning : Mwc2Branch::A2Winning;
        if (a1_wins) {
            c.explicit_mwc.push_back(Coalition(split.a1));
            if (split.m1() >= 2) c.pattern_a2_plus_each_a1 = true;
        } else {
            c.explicit_mwc.push_back(Coalition(split.a2));
            if (split.m2() >= 2) c.pattern_a1_plus_each_a2 = true;
        }
        fill_tau_sigma(split, c);
        if (verify) {
            for (const auto& mwc : c.materialize())
                if (!is_mwc(game, mwc))
                    throw Error(Error::Code::Consistency, "emitted coalition fails is_mwc");
        }
        return c;
    }

    c.branch = Mwc2Branch::General;
    CandidateTable table = build_candidates(split);

    SideContext ctx1{&split.idle_by_dim2, &split.idle_by_dim1, &table.x,  &split.pos1,
                     &table.pfx2_along1,  1,                   split.q1N, split.q2N,
                     split.q2A1,          split.q1A2};
    SideContext ctx2{&split.idle_by_dim1, &split.idle_by_dim2, &table.y,  &split.pos2,
                     &table.pfx1_along2,  0,                   split.q2N, split.q1N,
                     split.q1A2,          split.q2A1};
    c.side1 = scan_side(game, ctx1);
    c.side2 = scan_side(game, ctx2);
    c.c0_side1 = scan_anchorless(game, ctx1);
    c.c0_side2 = scan_anchorless(game, ctx2);

    c.mwc3_a1_plus_one = split.m1() == 1 || split.m2() >= 2;
    c.mwc3_a2_plus_one = split.m2() == 1 || split.m1() >= 2;
    c.mwc3_merged = split.m1() == 1 && split.m2() == 1;

    fill_tau_sigma(split, c);

    if (verify) {
        auto emitted = c.materialize();
        for (const auto& mwc : emitted)
            if (!is_mwc(game, mwc))
                throw Error(Error::Code::Consistency, "emitted coalition fails is_mwc");
        if (!mwc_count_bound_check(c, game.n()))
            throw Error(Error::Code::Consistency, "emitted collection exceeds the n+1 bound");
        std::set<Coalition> seen(emitted.begin(), emitted.end());
        for (PlayerId j : split.idle_by_dim1) {
            auto c1 = coalition_from_parts(
                split.a1, split.idle_by_dim1, table.x[j],
                table.mu1[j] ? std::optional<PlayerId>(j) : std::nullopt);
            auto c2 = coalition_from_parts(
                split.a2, split.idle_by_dim2, table.y[j],
                table.mu2[j] ? std::optional<PlayerId>(j) : std::nullopt);
            for (const auto& cand : {c1, c2})
                if (!seen.count(cand) && is_mwc(game, cand))
                    throw Error(Error::Code::Consistency,
                                "non-emitted per-anchor candidate is minimal winning");
        }
    }
    return c;
}

bool mwc_count_bound_check(const MwcCollection& collection, std::size_t n) {
    return collection.count() <= n + 1;
}

}  // namespace cwmmg
