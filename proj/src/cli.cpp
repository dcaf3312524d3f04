#include "cwmmg/cli.hpp"

#include "cwmmg/gamefile.hpp"
#include "cwmmg/generators.hpp"
#include "cwmmg/indices2d.hpp"
#include "cwmmg/mwc2d.hpp"
#include "cwmmg/oracle.hpp"
#include "cwmmg/stability.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>

namespace cwmmg::cli {

using nlohmann::json;

namespace {

double ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

std::string player_label(const Game& game, PlayerId j) {
    const auto& name = game.player(j).name;
    return name.empty() ? "p" + std::to_string(j + 1) : name;
}

json coalition_json(const Coalition& c) {
    json arr = json::array();
    for (PlayerId j : c.members()) arr.push_back(j);
    return arr;
}

json game_header(const Game& game) {
    return json{{"digest", game_digest(game)}, {"n", game.n()}, {"k", game.k()}};
}

void emit(std::ostream& out, const std::string& format, const json& doc,
          const std::function<void(std::ostream&)>& table) {
    if (format == "json")
        out << doc.dump(2) << '\n';
    else
        table(out);
}

std::vector<Coalition> mwc_list(const Game& game, const std::string& method, std::size_t limit,
                                std::ostream& err) {
    if (method == "fast") {
        if (game.k() != 2)
            throw Error(Error::Code::Dimension, "method 'fast' requires a 2-dimensional game");
        return compute_mwc2(game).materialize();
    }
    if (limit != kDefaultOracleLimit)
        err << "warning: oracle limit overridden to n <= " << limit
            << "; enumeration cost grows as 2^n\n";
    return enumerate_mwc(game, limit);
}

PowerProfile compute_index(const Game& game, IndexKind kind, const std::string& method,
                           std::size_t limit, std::ostream& err) {
    if (method == "fast") {
        if (game.k() != 2)
            throw Error(Error::Code::Dimension, "method 'fast' requires a 2-dimensional game");
        switch (kind) {
            case IndexKind::hp: return hp2(game, compute_mwc2(game));
            case IndexKind::dp: return dp2(game, compute_mwc2(game));
            case IndexKind::bz: return bz2(game);
            case IndexKind::ss: return ss2(game);
        }
    }
    if (limit != kDefaultOracleLimit)
        err << "warning: oracle limit overridden to n <= " << limit
            << "; enumeration cost grows as 2^n\n";
    return index_oracle(game, kind, limit);
}

std::string default_method(const Game& game, const std::string& requested) {
    if (!requested.empty()) return requested;
    return game.k() == 2 ? "fast" : "oracle";
}

int cmd_mwc(const Game& game, const std::string& method, std::size_t limit,
            const std::string& format, std::ostream& out, std::ostream& err) {
    auto start = std::chrono::steady_clock::now();
    auto list = mwc_list(game, method, limit, err);
    double elapsed = ms_since(start);

    json payload;
    payload["count"] = list.size();
    payload["bound_tight"] = list.size() == game.n() + 1;
    payload["coalitions"] = json::array();
    for (const auto& c : list) payload["coalitions"].push_back(coalition_json(c));
    json doc{{"command", "mwc"},
             {"game", game_header(game)},
             {"payload", payload},
             {"timing_ms", elapsed}};
    emit(out, format, doc, [&](std::ostream& o) {
        o << "minimal winning coalitions: " << list.size();
        if (list.size() == game.n() + 1) o << "  (|MWC| = n+1, the bound is tight)";
        o << '\n';
        for (const auto& c : list) {
            o << "  {";
            for (std::size_t i = 0; i < c.members().size(); ++i)
                o << (i ? ", " : " ") << player_label(game, c.members()[i]);
            o << " }\n";
        }
    });
    return 0;
}

int cmd_indices(const Game& game, const std::string& index, const std::string& method,
                std::size_t limit, const std::string& format, std::ostream& out,
                std::ostream& err) {
    std::vector<IndexKind> kinds;
    if (index == "all")
        kinds = {IndexKind::ss, IndexKind::bz, IndexKind::hp, IndexKind::dp};
    else
        kinds = {index_kind_from_name(index)};

    auto start = std::chrono::steady_clock::now();
    std::vector<PowerProfile> profiles;
    for (IndexKind kind : kinds) profiles.push_back(compute_index(game, kind, method, limit, err));
    double elapsed = ms_since(start);

    json payload;
    for (const auto& prof : profiles) {
        json values = json::array();
        for (const auto& v : prof.values) values.push_back(to_fraction_string(v));
        payload[index_kind_name(prof.kind)] = values;
    }
    json doc{{"command", "indices"},
             {"game", game_header(game)},
             {"payload", payload},
             {"timing_ms", elapsed}};
    emit(out, format, doc, [&](std::ostream& o) {
        o << "player";
        for (const auto& prof : profiles) o << '\t' << index_kind_name(prof.kind);
        o << '\n';
        for (PlayerId j = 0; j < game.n(); ++j) {
            o << player_label(game, j);
            for (const auto& prof : profiles) o << '\t' << to_fraction_string(prof.values[j]);
            o << '\n';
        }
    });
    return 0;
}

int cmd_stable(const Game& game, const std::string& index, const std::string& method,
               std::size_t limit, const std::string& format, std::ostream& out,
               std::ostream& err) {
    IndexKind kind = index_kind_from_name(index);
    auto start = std::chrono::steady_clock::now();
    auto list = mwc_list(game, method, limit, err);
    PowerProfile powers = compute_index(game, kind, method, limit, err);
    StabilityReport report = cstable_coalitions(game, list, powers);
    double elapsed = ms_since(start);

    json payload;
    payload["kind"] = index_kind_name(kind);
    payload["min_theta"] = to_fraction_string(report.min_theta);
    payload["stable_coalitions"] = json::array();
    for (const auto& c : report.stable_coalitions)
        payload["stable_coalitions"].push_back(coalition_json(c));
    payload["winner_ratio"] = to_fraction_string(report.winner_ratio);
    json alloc = json::array();
    for (const auto& v : report.allocation) alloc.push_back(to_fraction_string(v));
    payload["allocation"] = alloc;
    json doc{{"command", "stable"},
             {"game", game_header(game)},
             {"payload", payload},
             {"timing_ms", elapsed}};
    emit(out, format, doc, [&](std::ostream& o) {
        o << "index: " << index_kind_name(kind) << "\nminimum power sum: "
          << to_fraction_string(report.min_theta) << "\nstable coalitions:\n";
        for (const auto& c : report.stable_coalitions) {
            o << "  {";
            for (std::size_t i = 0; i < c.members().size(); ++i)
                o << (i ? ", " : " ") << player_label(game, c.members()[i]);
            o << " }\n";
        }
        o << "winner ratio q(C*)/q(N): " << to_fraction_string(report.winner_ratio) << '\n';
        o << "allocation (representative structure):\n";
        for (PlayerId j = 0; j < game.n(); ++j)
            o << "  " << player_label(game, j) << ": " << to_fraction_string(report.allocation[j])
              << '\n';
    });
    return 0;
}

int cmd_verify(std::size_t trials, std::size_t nmax, std::uint32_t max_coord, std::uint64_t seed,
               const std::string& format, std::ostream& out, std::ostream& err) {
    auto start = std::chrono::steady_clock::now();
    std::size_t done = 0;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        SplitMix64 rng(seed + trial);
        std::size_t n = 1 + static_cast<std::size_t>(rng.below(nmax - 1));
        Game game = gen_random(n, 2, max_coord, rng.next());

        std::string what;
        try {
            auto fast = compute_mwc2(game, /*verify=*/true).materialize();
            auto slow = enumerate_mwc(game);
            if (fast != slow) what = "MWC sets differ";
            if (what.empty()) {
                BigInt fast_wc = 0;
                BusySplit split = split_busy(game);
                if (split.intersecting) {
                    auto counts = swing_counts_by_size(game);  // sanity: must not throw
                    (void)counts;
                    std::size_t both = 0;
                    for (PlayerId j : split.a1)
                        if (game.weight(j, 1) == split.q2N) ++both;
                    std::size_t united = split.m1() + split.m2() - both;
                    fast_wc = pow2(game.n() - split.m1()) + pow2(game.n() - split.m2()) -
                              pow2(game.n() - united);
                } else {
                    fast_wc = wc_structure(game, split, build_candidates(split)).total_wc;
                }
                if (fast_wc != BigInt(count_winning(game))) what = "|WC| counts differ";
            }
            if (what.empty()) {
                for (IndexKind kind :
                     {IndexKind::ss, IndexKind::bz, IndexKind::hp, IndexKind::dp}) {
                    PowerProfile fast = compute_index(game, kind, "fast", kDefaultOracleLimit, err);
                    PowerProfile slow = index_oracle(game, kind);
                    if (fast.values != slow.values) {
                        what = std::string("index '") + index_kind_name(kind) + "' differs";
                        break;
                    }
                }
            }
        } catch (const Error& e) {
            what = std::string("exception: ") + e.what();
        }
        if (!what.empty()) {
            std::string bytes = serialize_game(game);
            std::string repro = "cwmmg-mismatch-" + std::to_string(trial) + ".game";
            std::ofstream(repro) << bytes << '\n';
            json doc{{"command", "verify"},
                     {"payload", json{{"trials", trials},
                                      {"failed_trial", trial},
                                      {"reason", what},
                                      {"game", bytes},
                                      {"repro_file", repro}}}};
            if (format == "json")
                out << doc.dump(2) << '\n';
            else
                out << "MISMATCH at trial " << trial << ": " << what << "\ngame: " << bytes
                    << "\nrepro written to " << repro << '\n';
            err << "verification failed: " << what << '\n';
            return 1;
        }
        ++done;
    }
    double elapsed = ms_since(start);
    json doc{{"command", "verify"},
             {"payload", json{{"trials", done}, {"mismatches", 0}}},
             {"timing_ms", elapsed}};
    emit(out, format, doc, [&](std::ostream& o) {
        o << done << " trials, 0 mismatches (" << elapsed << " ms)\n";
    });
    return 0;
}

int cmd_gen(const GeneratorSpec& spec, const std::string& out_path, std::ostream& out) {
    Game game = generate(spec);
    if (out_path.empty())
        out << serialize_game(game) << '\n';
    else
        save_game(game, out_path);
    return 0;
}

int cmd_bench(const std::vector<std::size_t>& mwc_sizes, const std::vector<std::size_t>& idx_sizes,
              std::size_t reps, std::uint64_t seed, const std::string& format, std::ostream& out) {
    struct Row {
        std::string op;
        std::size_t n;
        double ms;
    };
    std::vector<Row> rows;
    auto median_time = [&](auto&& fn) {
        std::vector<double> times;
        for (std::size_t r = 0; r < reps; ++r) {
            auto start = std::chrono::steady_clock::now();
            fn();
            times.push_back(ms_since(start));
        }
        std::sort(times.begin(), times.end());
        return times[times.size() / 2];
    };
    for (std::size_t n : mwc_sizes) {
        Game game = gen_random(n, 2, 1u << 30, seed + n);
        rows.push_back({"compute_mwc2", n, median_time([&] { compute_mwc2(game); })});
    }
    for (const char* op : {"bz2", "ss2"})
        for (std::size_t n : idx_sizes) {
            Game game = gen_random(n, 2, 1u << 30, seed + n);
            if (op[0] == 'b')
                rows.push_back({op, n, median_time([&] { bz2(game); })});
            else
                rows.push_back({op, n, median_time([&] { ss2(game); })});
        }

    json payload = json::array();
    for (const auto& row : rows)
        payload.push_back(json{{"op", row.op}, {"n", row.n}, {"ms", row.ms}});
    // log-log slope between consecutive sizes of the same operation
    json slopes = json::array();
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].op != rows[i - 1].op) continue;
        double slope = std::log(rows[i].ms / std::max(rows[i - 1].ms, 1e-9)) /
                       std::log(double(rows[i].n) / double(rows[i - 1].n));
        slopes.push_back(json{{"op", rows[i].op},
                              {"from_n", rows[i - 1].n},
                              {"to_n", rows[i].n},
                              {"slope", slope}});
    }
    json doc{{"command", "bench"}, {"payload", json{{"times", payload}, {"slopes", slopes}}}};
    if (format == "json") {
        out << doc.dump(2) << '\n';
    } else {
        out << "op\tn\tmedian_ms\n";
        for (const auto& row : rows) out << row.op << '\t' << row.n << '\t' << row.ms << '\n';
        out << "log-log slopes between consecutive sizes:\n";
        for (const auto& s : slopes)
            out << "  " << s["op"].get<std::string>() << " " << s["from_n"] << "->" << s["to_n"]
                << ": " << s["slope"] << '\n';
    }
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact analysis of complementary weighted multiple majority games"};
    app.require_subcommand(1);

    std::string game_path, method, index = "all", format = "table", fixture = "g1", out_path;
    std::size_t oracle_limit = kDefaultOracleLimit;
    std::size_t trials = 500, nmax = 12, gen_n = 8, gen_k = 2;
    std::uint32_t max_coord = 8;
    std::uint64_t seed = 1;
    long long tight_t = 2;
    std::vector<std::size_t> mwc_sizes{25000, 50000, 100000, 200000};
    std::vector<std::size_t> idx_sizes{75, 150, 300};
    std::size_t reps = 5;

    auto add_common = [&](CLI::App* cmd, bool with_index) {
        cmd->add_option("game", game_path, "game file")->required();
        cmd->add_option("--method", method, "fast|oracle (default: fast for k=2, oracle otherwise)")
            ->check(CLI::IsMember({"fast", "oracle"}));
        cmd->add_option("--oracle-limit", oracle_limit, "override the oracle n cap (slow!)");
        cmd->add_option("--format", format, "json|table")->check(CLI::IsMember({"json", "table"}));
        if (with_index)
            cmd->add_option("--index", index, "ss|bz|hp|dp|all")
                ->check(CLI::IsMember({"ss", "bz", "hp", "dp", "all"}));
    };

    auto* mwc_cmd = app.add_subcommand("mwc", "enumerate all minimal winning coalitions");
    add_common(mwc_cmd, false);
    auto* idx_cmd = app.add_subcommand("indices", "exact power index table");
    add_common(idx_cmd, true);
    auto* stable_cmd = app.add_subcommand("stable", "C-stable coalitions and allocation");
    add_common(stable_cmd, true);

    auto* verify_cmd = app.add_subcommand("verify", "fast-vs-oracle equivalence on random games");
    verify_cmd->add_option("--trials", trials, "number of random games");
    verify_cmd->add_option("--nmax", nmax, "maximum player count");
    verify_cmd->add_option("--max", max_coord, "maximum coordinate");
    verify_cmd->add_option("--seed", seed, "base seed");
    verify_cmd->add_option("--format", format, "json|table")
        ->check(CLI::IsMember({"json", "table"}));

    auto* gen_cmd = app.add_subcommand("gen", "write a game file");
    std::string family = "random";
    gen_cmd->add_option("--family", family, "tight|random|fixture")
        ->check(CLI::IsMember({"tight", "random", "fixture"}));
    gen_cmd->add_option("--t", tight_t, "tight family parameter (t >= 2)");
    gen_cmd->add_option("--n", gen_n, "players (random)");
    gen_cmd->add_option("--k", gen_k, "dimensions (random)");
    gen_cmd->add_option("--max", max_coord, "maximum coordinate (random)");
    gen_cmd->add_option("--seed", seed, "seed (random)");
    gen_cmd->add_option("--fixture", fixture, "fixture name (fixture)");
    gen_cmd->add_option("--out", out_path, "output path (default: stdout)");

    auto* bench_cmd = app.add_subcommand("bench", "timing table for the fast algorithms");
    bench_cmd->add_option("--mwc-sizes", mwc_sizes, "player counts for compute_mwc2");
    bench_cmd->add_option("--index-sizes", idx_sizes, "player counts for bz2/ss2");
    bench_cmd->add_option("--reps", reps, "repetitions per measurement (median)");
    bench_cmd->add_option("--seed", seed, "base seed");
    bench_cmd->add_option("--format", format, "json|table")
        ->check(CLI::IsMember({"json", "table"}));

    std::vector<std::string> argv_like{"cwmmg"};
    argv_like.insert(argv_like.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_like) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return 2;
    }

    try {
        if (mwc_cmd->parsed() || idx_cmd->parsed() || stable_cmd->parsed()) {
            Game game = load_game(game_path);
            std::string m = default_method(game, method);
            if (mwc_cmd->parsed()) return cmd_mwc(game, m, oracle_limit, format, out, err);
            if (idx_cmd->parsed()) return cmd_indices(game, index, m, oracle_limit, format, out, err);
            std::string stable_index = index == "all" ? "hp" : index;
            return cmd_stable(game, stable_index, m, oracle_limit, format, out, err);
        }
        if (verify_cmd->parsed()) {
            if (trials < 1 || nmax < 1 || max_coord < 1)
                throw Error(Error::Code::Parameter, "verify needs trials, nmax, max >= 1");
            return cmd_verify(trials, nmax, max_coord, seed, format, out, err);
        }
        if (gen_cmd->parsed()) {
            GeneratorSpec spec;
            spec.family = family == "tight"    ? GeneratorSpec::Family::tight
                          : family == "random" ? GeneratorSpec::Family::random
                                               : GeneratorSpec::Family::fixture;
            spec.t = tight_t;
            spec.n = gen_n;
            spec.k = gen_k;
            spec.max_coord = max_coord;
            spec.seed = seed;
            spec.fixture = fixture;
            return cmd_gen(spec, out_path, out);
        }
        if (bench_cmd->parsed()) return cmd_bench(mwc_sizes, idx_sizes, reps, seed, format, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace cwmmg::cli
