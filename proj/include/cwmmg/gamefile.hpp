#pragma once

#include "cwmmg/model.hpp"

#include <string>

namespace cwmmg {

// Textual game document: {"k": <dim>, "players": [{"id": "...", "w": [..]}]}.
// Weights are integers in [0, 2^32-1]; at least one must be positive.
Game parse_game(const std::string& text);
Game load_game(const std::string& path);

// Canonical serialization: sorted keys, no whitespace. Re-parsing the output
// reproduces the game; equal games serialize to identical bytes.
std::string serialize_game(const Game& game);
void save_game(const Game& game, const std::string& path);

// FNV-1a 64 over the canonical bytes, as a fixed-width hex string.
std::string game_digest(const Game& game);

}  // namespace cwmmg
