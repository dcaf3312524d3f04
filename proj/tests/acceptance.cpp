// Acceptance suite: one check per shipped guarantee, one PASS/FAIL line each.
// Exits nonzero if any criterion fails.

#include "cwmmg/generators.hpp"
#include "cwmmg/indices2d.hpp"
#include "cwmmg/mwc2d.hpp"
#include "cwmmg/model.hpp"
#include "cwmmg/oracle.hpp"
#include "cwmmg/stability.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace cwmmg;

namespace {

struct Harness {
    int failures = 0;
    int index = 0;

    void criterion(const std::string& label, const std::function<bool(std::string&)>& body) {
        ++index;
        std::string detail;
        auto start = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = body(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count();
        std::printf("%s criterion %2d: %s (%.1f ms)%s%s\n", ok ? "PASS" : "FAIL", index,
                    label.c_str(), ms, detail.empty() ? "" : " — ", detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
};

double time_ms(const std::function<void()>& fn) {
    auto start = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

double best_of(int reps, const std::function<void()>& fn) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) best = std::min(best, time_ms(fn));
    return best;
}

PowerProfile fast_index(const Game& game, IndexKind kind) {
    switch (kind) {
        case IndexKind::hp: return hp2(game, compute_mwc2(game));
        case IndexKind::dp: return dp2(game, compute_mwc2(game));
        case IndexKind::bz: return bz2(game);
        case IndexKind::ss: return ss2(game);
    }
    throw std::logic_error("unreachable");
}

constexpr IndexKind kAllKinds[] = {IndexKind::ss, IndexKind::bz, IndexKind::hp, IndexKind::dp};

}  // namespace

int main() {
    Harness h;

    h.criterion("winning/busy/swing classification on the four-player fixture", [](std::string& d) {
        Game g = load_fixture("g1");
        Coalition c({0, 1, 2});
        bool ok = true;
        double ms = time_ms([&] {
            auto prof = coalition_profile(g, c);
            bool p2_busy = std::count(prof.busy.begin(), prof.busy.end(), 1) == 1;
            bool p3_busy = std::count(prof.busy.begin(), prof.busy.end(), 2) == 1;
            ok = is_winning(g, c) && p2_busy && !is_swing(g, c, 1) && !p3_busy && is_swing(g, c, 2);
        });
        if (ms >= 1.0) {
            d = "runtime " + std::to_string(ms) + " ms exceeds 1 ms";
            return false;
        }
        return ok;
    });

    h.criterion("tight family: exactly n+1 minimal coalitions for t = 2..50", [](std::string& d) {
        bool ok = true;
        double ms = time_ms([&] {
            for (long long t = 2; t <= 50 && ok; ++t) {
                Game g = gen_tight(t);
                auto list = compute_mwc2(g).materialize();
                if (list.size() != g.n() + 1) {
                    d = "t=" + std::to_string(t) + " produced " + std::to_string(list.size());
                    ok = false;
                    break;
                }
                for (const auto& c : list)
                    if (!is_mwc(g, c)) {
                        d = "t=" + std::to_string(t) + " emitted a non-minimal coalition";
                        ok = false;
                        break;
                    }
            }
        });
        if (ok && ms >= 1000.0) {
            d = "runtime " + std::to_string(ms) + " ms exceeds 1 s";
            return false;
        }
        return ok;
    });

    h.criterion("worked four-player values: hp, dp, bz, ss by both paths", [](std::string& d) {
        Game g = load_fixture("g4");
        bool ok = true;
        double ms = time_ms([&] {
            const Rational want[4][2] = {{Rational(1, 12), Rational(1, 12)},
                                         {Rational(1, 8), Rational(1, 8)},
                                         {Rational(1), Rational(1)},
                                         {Rational(1, 2), Rational(1, 2)}};
            int row = 0;
            for (IndexKind kind : kAllKinds) {
                auto fast = fast_index(g, kind);
                auto slow = index_oracle(g, kind);
                ok = ok && fast.values == slow.values && fast.values[2] == want[row][0] &&
                     fast.values[3] == want[row][1];
                ++row;
            }
        });
        if (ok && ms >= 10.0) {
            d = "runtime " + std::to_string(ms) + " ms exceeds 10 ms";
            return false;
        }
        return ok;
    });

    h.criterion("worked six-player values: hp and dp by both paths", [](std::string& d) {
        Game g = load_fixture("g5");
        bool ok = true;
        double ms = time_ms([&] {
            auto mwc = compute_mwc2(g);
            auto hp = hp2(g, mwc);
            auto dp = dp2(g, mwc);
            ok = hp.values[1] == Rational(2) && hp.values[5] == Rational(4) &&
                 dp.values[1] == Rational(7, 10) && dp.values[5] == Rational(6, 5);
            ok = ok && index_oracle(g, IndexKind::hp).values == hp.values &&
                 index_oracle(g, IndexKind::dp).values == dp.values;
        });
        if (ok && ms >= 10.0) {
            d = "runtime " + std::to_string(ms) + " ms exceeds 10 ms";
            return false;
        }
        return ok;
    });

    h.criterion("three-dimensional fixture: oracle values and the monotonicity failure",
                [](std::string& d) {
                    Game g = load_fixture("g6");
                    bool ok = true;
                    double ms = time_ms([&] {
                        auto hp = index_oracle(g, IndexKind::hp);
                        auto dp = index_oracle(g, IndexKind::dp);
                        ok = hp.values[0] == Rational(2) && hp.values[1] == Rational(3) &&
                             dp.values[0] == Rational(1) && dp.values[1] == Rational(7, 6);
                        bool dominates = true;
                        for (std::size_t i = 0; i < 3; ++i)
                            dominates = dominates && g.weight(0, i) > g.weight(1, i);
                        ok = ok && dominates && hp.values[0] < hp.values[1] &&
                             dp.values[0] < dp.values[1];
                    });
                    if (ok && ms >= 10.0) {
                        d = "runtime " + std::to_string(ms) + " ms exceeds 10 ms";
                        return false;
                    }
                    return ok;
                });

    h.criterion("oracle equivalence: 500 random games, MWC sets, |WC|, all indices",
                [](std::string& d) {
                    for (std::uint64_t trial = 0; trial < 500; ++trial) {
                        SplitMix64 rng(trial * 7001 + 17);
                        std::size_t n = 1 + rng.below(11);
                        Game g = gen_random(n, 2, 8, rng.next());
                        auto fast = compute_mwc2(g, /*verify=*/true).materialize();
                        if (fast != enumerate_mwc(g)) {
                            d = "MWC mismatch at trial " + std::to_string(trial);
                            return false;
                        }
                        BusySplit split = split_busy(g);
                        BigInt wc_fast;
                        if (split.intersecting) {
                            std::size_t both = 0;
                            for (PlayerId j : split.a1)
                                if (g.weight(j, 1) == split.q2N) ++both;
                            std::size_t united = split.m1() + split.m2() - both;
                            wc_fast = pow2(n - split.m1()) + pow2(n - split.m2()) -
                                      pow2(n - united);
                        } else {
                            wc_fast = wc_structure(g, split, build_candidates(split)).total_wc;
                        }
                        if (wc_fast != BigInt(count_winning(g))) {
                            d = "|WC| mismatch at trial " + std::to_string(trial);
                            return false;
                        }
                        for (IndexKind kind : kAllKinds)
                            if (fast_index(g, kind).values != index_oracle(g, kind).values) {
                                d = std::string("index ") + index_kind_name(kind) +
                                    " mismatch at trial " + std::to_string(trial);
                                return false;
                            }
                    }
                    return true;
                });

    h.criterion("stability equivalence: recursive oracle vs argmin coalitions, 100 games",
                [](std::string& d) {
                    // Checked verbatim. The recursive definition also accepts
                    // structures whose winning block is an argmin coalition
                    // padded with zero-power players, so random games with
                    // null players are expected to break the exact equality;
                    // the diagnostics below separate that from any other
                    // discrepancy. See DEVIATIONS.md.
                    std::size_t pairs = 0, exact = 0, padded_only = 0, other = 0;
                    for (std::uint64_t trial = 0; trial < 100; ++trial) {
                        SplitMix64 rng(trial * 433 + 7);
                        std::size_t n = 2 + rng.below(4);
                        Game g = gen_random(n, 2, 6, rng.next());
                        auto mwc = enumerate_mwc(g);
                        std::vector<PlayerId> ids(g.n());
                        for (std::size_t j = 0; j < g.n(); ++j) ids[j] = PlayerId(j);
                        auto partitions = all_partitions(ids);
                        for (IndexKind kind : kAllKinds) {
                            auto powers = index_oracle(g, kind);
                            auto report = cstable_coalitions(g, mwc, powers);
                            std::set<Coalition> stable(report.stable_coalitions.begin(),
                                                       report.stable_coalitions.end());
                            std::set<std::vector<Coalition>> expect, padded;
                            for (const auto& blocks : partitions) {
                                bool has = false, pad = false;
                                for (const auto& b : blocks) {
                                    if (stable.count(b)) has = true;
                                    Rational t = 0;
                                    for (PlayerId j : b.members()) t += powers.values[j];
                                    if (t == report.min_theta && is_winning(g, b)) pad = true;
                                }
                                if (has) expect.insert(blocks);
                                if (pad) padded.insert(blocks);
                            }
                            std::set<std::vector<Coalition>> got;
                            for (const auto& pi : cstable_structures_oracle(g, kind))
                                got.insert(pi.blocks());
                            ++pairs;
                            if (got == expect)
                                ++exact;
                            else if (got == padded)
                                ++padded_only;
                            else
                                ++other;
                        }
                    }
                    d = std::to_string(exact) + "/" + std::to_string(pairs) +
                        " game-kind pairs match exactly; " + std::to_string(padded_only) +
                        " differ only by zero-power riders in the winning block; " +
                        std::to_string(other) + " differ otherwise";
                    return exact == pairs;
                });

    h.criterion("local monotonicity: 10000 fast hp/dp games plus 10000 oracle games",
                [](std::string& d) {
                    for (std::uint64_t trial = 0; trial < 10000; ++trial) {
                        SplitMix64 rng(trial * 37 + 5);
                        std::size_t n = 2 + rng.below(198);
                        Game g = gen_random(n, 2, 1 + rng.below(999), rng.next());
                        auto mwc = compute_mwc2(g);
                        PowerProfile profs[2] = {hp2(g, mwc), dp2(g, mwc)};
                        // dominance pairs along one sorted sweep would hide ties;
                        // compare every ordered pair on a thinned sample instead
                        std::size_t step = n > 40 ? n / 20 : 1;
                        for (std::size_t a = 0; a < n; a += step)
                            for (std::size_t b = 0; b < n; b += step) {
                                if (a == b) continue;
                                if (g.weight(a, 0) <= g.weight(b, 0) &&
                                    g.weight(a, 1) <= g.weight(b, 1)) {
                                    for (const auto& p : profs)
                                        if (p.values[a] > p.values[b]) {
                                            d = "hp/dp violation at trial " +
                                                std::to_string(trial);
                                            return false;
                                        }
                                    if (g.player(a).w == g.player(b).w)
                                        for (const auto& p : profs)
                                            if (p.values[a] != p.values[b]) {
                                                d = "equal-vector mismatch at trial " +
                                                    std::to_string(trial);
                                                return false;
                                            }
                                }
                            }
                    }
                    for (std::uint64_t trial = 0; trial < 10000; ++trial) {
                        SplitMix64 rng(trial * 41 + 3);
                        std::size_t n = 2 + rng.below(10);
                        Game g = gen_random(n, 2, 8, rng.next());
                        PowerProfile profs[4] = {
                            index_oracle(g, IndexKind::ss), index_oracle(g, IndexKind::bz),
                            index_oracle(g, IndexKind::hp), index_oracle(g, IndexKind::dp)};
                        for (std::size_t a = 0; a < n; ++a)
                            for (std::size_t b = 0; b < n; ++b) {
                                if (a == b) continue;
                                if (g.weight(a, 0) <= g.weight(b, 0) &&
                                    g.weight(a, 1) <= g.weight(b, 1)) {
                                    for (const auto& p : profs) {
                                        if (p.values[a] > p.values[b]) {
                                            d = "oracle violation at trial " +
                                                std::to_string(trial);
                                            return false;
                                        }
                                        if (g.player(a).w == g.player(b).w &&
                                            p.values[a] != p.values[b]) {
                                            d = "equal-vector mismatch at trial " +
                                                std::to_string(trial);
                                            return false;
                                        }
                                    }
                                }
                            }
                    }
                    return true;
                });

    h.criterion("structural invariants on 10000 seeded games", [](std::string& d) {
        for (std::uint64_t trial = 0; trial < 10000; ++trial) {
            SplitMix64 rng(trial * 97 + 29);
            std::size_t n = 1 + rng.below(11);
            Game g = gen_random(n, 2, 1 + rng.below(9), rng.next());
            auto collection = compute_mwc2(g);
            if (!mwc_count_bound_check(collection, n)) {
                d = "bound violated at trial " + std::to_string(trial);
                return false;
            }
            for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
                Coalition c = Coalition::from_mask(mask);
                if (is_winning(g, c) && 2 * coalition_qsum(g, c) <= g.grand_qsum()) {
                    d = "half-power violated at trial " + std::to_string(trial);
                    return false;
                }
            }
            auto ss = ss2(g);
            auto bz = bz2(g);
            auto dp = dp2(g, collection);
            Rational ss_sum = 0, dp_sum = 0;
            for (std::size_t j = 0; j < n; ++j) {
                ss_sum += ss.values[j];
                dp_sum += dp.values[j];
                if (denominator(bz.values[j] * Rational(pow2(n - 1))) != 1) {
                    d = "bz denominator at trial " + std::to_string(trial);
                    return false;
                }
            }
            if (ss_sum != Rational(1)) {
                d = "ss sum at trial " + std::to_string(trial);
                return false;
            }
            if (dp_sum != Rational(static_cast<long long>(collection.count()))) {
                d = "dp sum at trial " + std::to_string(trial);
                return false;
            }
        }
        return true;
    });

    h.criterion("two-player ratio family and one-dimensional stabilization", [](std::string& d) {
        Rational prev;
        bool first = true;
        for (std::uint32_t w : {2u, 10u, 1000000u}) {
            Game g = load_fixture("two_player_w" + std::to_string(w));
            Rational ratio = winner_ratio(g, Coalition({0}));
            if (ratio != Rational(w, 2ll * w - 1) || !(ratio > Rational(1, 2))) {
                d = "ratio wrong at w=" + std::to_string(w);
                return false;
            }
            if (!first && !(ratio < prev)) {
                d = "ratio not strictly decreasing at w=" + std::to_string(w);
                return false;
            }
            prev = ratio;
            first = false;
        }
        for (std::uint64_t trial = 0; trial < 100; ++trial) {
            SplitMix64 rng(trial * 53 + 11);
            std::size_t n = 1 + rng.below(11);
            Game g = gen_random(n, 1, 1 + rng.below(9), rng.next());
            Weight top = g.grand_qvec()[0];
            std::vector<PlayerId> expect;
            for (PlayerId j = 0; j < n; ++j)
                if (g.weight(j, 0) == top) expect.push_back(j);
            auto mwc = enumerate_mwc(g);
            for (IndexKind kind : kAllKinds) {
                auto report = cstable_coalitions(g, mwc, index_oracle(g, kind));
                if (report.stable_coalitions.size() != 1 ||
                    report.stable_coalitions[0] != Coalition(expect)) {
                    d = "trial " + std::to_string(trial);
                    return false;
                }
            }
        }
        return true;
    });

    h.criterion("scaling: linearithmic enumeration, cubic indices, deviations on record",
                [](std::string& d) {
                    Game g1e5 = gen_random(100000, 2, 1u << 30, 12345);
                    Game g2e5 = gen_random(200000, 2, 1u << 30, 54321);
                    double t1 = best_of(5, [&] { compute_mwc2(g1e5); });
                    double t2 = best_of(5, [&] { compute_mwc2(g2e5); });
                    double ratio = t2 / std::max(t1, 1e-9);
                    if (ratio > 2.6) {
                        d = "time ratio " + std::to_string(ratio) + " exceeds 2.6";
                        return false;
                    }
                    Game g300 = gen_random(300, 2, 1000000, 777);
                    double t_idx = time_ms([&] {
                        bz2(g300);
                        ss2(g300);
                    });
                    if (t_idx >= 60000.0) {
                        d = "bz2+ss2 at n=300 took " + std::to_string(t_idx) + " ms";
                        return false;
                    }
                    std::ifstream dev(std::string(CWMMG_REPO_ROOT) + "/DEVIATIONS.md");
                    if (!dev) {
                        d = "DEVIATIONS.md missing";
                        return false;
                    }
                    std::ostringstream buf;
                    buf << dev.rdbuf();
                    std::string text = buf.str();
                    for (const char* needle : {"(58)", "Lemma 12", "r_1", "counterexample"})
                        if (text.find(needle) == std::string::npos) {
                            d = std::string("DEVIATIONS.md does not mention ") + needle;
                            return false;
                        }
                    d = "mwc2 ratio " + std::to_string(t2 / std::max(t1, 1e-9));
                    return true;
                });

    if (h.failures == 0)
        std::printf("all %d criteria passed\n", h.index);
    else
        std::printf("%d of %d criteria FAILED\n", h.failures, h.index);
    return h.failures == 0 ? 0 : 1;
}
