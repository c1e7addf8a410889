#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "isingfix/instance.hpp"

namespace isingfix {

/// { "n": int, "c0": int, "h": [int], "J": [[i, j, w]] } with i < j.
nlohmann::json instance_to_json(const IsingInstance& inst);

/// Unknown keys (for example "meta" or "run") are ignored. Throws ParseError.
IsingInstance instance_from_json(const nlohmann::json& doc);
IsingInstance read_instance_json(std::istream& in);

std::string digest_hex(const IsingInstance& inst);

}  // namespace isingfix
