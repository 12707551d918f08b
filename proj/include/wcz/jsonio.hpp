#pragma once

#include <vector>

#include "wcz/rational.hpp"

#include "json.hpp"

namespace wcz {

// Rationals are serialized as ["num", "den"] decimal strings so values
// are never squeezed through doubles.
nlohmann::json rat_to_json(const Rat& q);
Rat rat_from_json(const nlohmann::json& j);

// 1-based vectors skip `first` leading entries on write and restore them
// as zeros on read.
nlohmann::json rat_vec_to_json(const std::vector<Rat>& v, size_t first = 0);
std::vector<Rat> rat_vec_from_json(const nlohmann::json& j, size_t first = 0);

}  // namespace wcz
