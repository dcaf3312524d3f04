#include "cwmmg/gamefile.hpp"

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <sstream>

namespace cwmmg {

using nlohmann::json;

Game parse_game(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(Error::Code::Parse, std::string("game file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw Error(Error::Code::Parse, "game file: top level must be an object");
    if (!doc.contains("k") || !doc["k"].is_number_unsigned())
        throw Error(Error::Code::Parse, "game file: field 'k' must be a non-negative integer");
    if (!doc.contains("players") || !doc["players"].is_array())
        throw Error(Error::Code::Parse, "game file: field 'players' must be an array");

    const std::size_t k = doc["k"].get<std::size_t>();
    std::vector<std::vector<Weight>> weights;
    std::vector<std::string> names;
    bool any_name = false;
    std::size_t idx = 0;
    for (const auto& p : doc["players"]) {
        std::string where = "players[" + std::to_string(idx) + "]";
        if (!p.is_object()) throw Error(Error::Code::Parse, where + ": must be an object");
        if (!p.contains("w") || !p["w"].is_array())
            throw Error(Error::Code::Parse, where + ".w: must be an array");
        if (p["w"].size() != k)
            throw Error(Error::Code::Parse, where + ".w: expected " + std::to_string(k) +
                                                " entries, got " + std::to_string(p["w"].size()));
        std::vector<Weight> w;
        std::size_t widx = 0;
        for (const auto& v : p["w"]) {
            std::string field = where + ".w[" + std::to_string(widx) + "]";
            if (!v.is_number_integer() || v.is_number_float())
                throw Error(Error::Code::Parse, field + ": must be an integer");
            long long value = v.get<long long>();
            if (value < 0) throw Error(Error::Code::Parse, field + ": negative weight");
            if (value > 0xFFFFFFFFll)
                throw Error(Error::Code::Parse, field + ": weight exceeds 2^32-1");
            w.push_back(value);
            ++widx;
        }
        weights.push_back(std::move(w));
        if (p.contains("id")) {
            if (!p["id"].is_string())
                throw Error(Error::Code::Parse, where + ".id: must be a string");
            names.push_back(p["id"].get<std::string>());
            any_name = true;
        } else {
            names.push_back("");
        }
        ++idx;
    }
    try {
        return Game(k, std::move(weights), any_name ? std::move(names) : std::vector<std::string>{});
    } catch (const Error& e) {
        throw Error(Error::Code::Parse, std::string("game file: ") + e.what());
    }
}

Game load_game(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Error::Code::Parse, "cannot open game file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_game(buf.str());
}

std::string serialize_game(const Game& game) {
    json doc;
    doc["k"] = game.k();
    doc["players"] = json::array();
    for (const auto& p : game.players()) {
        json entry;
        if (!p.name.empty()) entry["id"] = p.name;
        entry["w"] = json::array();
        for (Weight w : p.w) entry["w"].push_back(w);
        doc["players"].push_back(std::move(entry));
    }
    return doc.dump();  // object keys are kept sorted, no whitespace
}

void save_game(const Game& game, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(Error::Code::Parse, "cannot write game file '" + path + "'");
    out << serialize_game(game) << '\n';
}

std::string game_digest(const Game& game) {
    std::string bytes = serialize_game(game);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

}  // namespace cwmmg
