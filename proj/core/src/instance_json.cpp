#include "isingfix/instance_json.hpp"

#include <cstdio>
#include <istream>

#include "isingfix/error.hpp"

namespace isingfix {

nlohmann::json instance_to_json(const IsingInstance& inst) {
  nlohmann::json doc;
  doc["n"] = inst.size();
  doc["c0"] = inst.c0();
  doc["h"] = std::vector<Weight>(inst.fields().begin(), inst.fields().end());
  auto couplings = nlohmann::json::array();
  for (const auto& c : inst.couplings()) couplings.push_back({c.i, c.j, c.w});
  doc["J"] = std::move(couplings);
  return doc;
}

namespace {

Weight as_weight(const nlohmann::json& v, const char* what) {
  if (!v.is_number_integer()) throw ParseError(std::string("instance JSON: ") + what + " must be an integer");
  return v.get<Weight>();
}

}  // namespace

IsingInstance instance_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("instance JSON: top level must be an object");
  if (!doc.contains("n") || !doc["n"].is_number_unsigned()) {
    throw ParseError("instance JSON: missing non-negative integer \"n\"");
  }
  const auto n = doc["n"].get<std::size_t>();
  std::vector<Weight> h(n, 0);
  if (doc.contains("h")) {
    const auto& arr = doc["h"];
    if (!arr.is_array() || arr.size() != n) throw ParseError("instance JSON: \"h\" must be an array of length n");
    for (std::size_t i = 0; i < n; ++i) h[i] = as_weight(arr[i], "h entry");
  }
  Weight c0 = doc.contains("c0") ? as_weight(doc["c0"], "c0") : 0;
  std::vector<Coupling> couplings;
  if (doc.contains("J")) {
    const auto& arr = doc["J"];
    if (!arr.is_array()) throw ParseError("instance JSON: \"J\" must be an array");
    for (const auto& entry : arr) {
      if (!entry.is_array() || entry.size() != 3) {
        throw ParseError("instance JSON: each J entry must be [i, j, w]");
      }
      const Weight i = as_weight(entry[0], "J index");
      const Weight j = as_weight(entry[1], "J index");
      if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= n || static_cast<std::size_t>(j) >= n) {
        throw ParseError("instance JSON: J index out of range");
      }
      couplings.push_back({static_cast<int>(i), static_cast<int>(j), as_weight(entry[2], "J weight")});
    }
  }
  try {
    return IsingInstance(n, std::move(h), std::move(couplings), c0);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

IsingInstance read_instance_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("instance JSON: ") + e.what());
  }
  return instance_from_json(doc);
}

std::string digest_hex(const IsingInstance& inst) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(digest(inst)));
  return buf;
}

}  // namespace isingfix
