#pragma once

#include <cctype>
#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "wcg/color.hpp"

namespace wcg {

// {"name":..., "red":[x,y], "green":[x,y], "blue":[x,y], "white":[x,y]}
inline Gamut gamut_from_json(const nlohmann::json& j) {
  const auto chroma = [&](const char* key) {
    const auto& arr = j.at(key);
    if (!arr.is_array() || arr.size() != 2)
      throw std::invalid_argument(std::string("gamut JSON: '") + key + "' must be [x, y]");
    return Chromaticity(arr[0].get<double>(), arr[1].get<double>());
  };
  return Gamut(j.at("name").get<std::string>(), chroma("red"), chroma("green"),
               chroma("blue"), chroma("white"));
}

inline Gamut load_gamut_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open gamut file " + path);
  nlohmann::json j;
  in >> j;
  return gamut_from_json(j);
}

// A built-in name (case-insensitive) or a path to a gamut JSON file.
inline Gamut resolve_gamut(const std::string& name_or_path) {
  std::string lower;
  for (char c : name_or_path) lower.push_back(static_cast<char>(std::tolower(c)));
  if (lower == "p3" || lower == "dci-p3") return builtin_gamut(BuiltinGamut::P3);
  if (lower == "rec709" || lower == "rec.709" || lower == "709")
    return builtin_gamut(BuiltinGamut::Rec709);
  if (lower == "rec2020" || lower == "rec.2020" || lower == "2020")
    return builtin_gamut(BuiltinGamut::Rec2020);
  if (lower == "toy") return builtin_gamut(BuiltinGamut::Toy);
  return load_gamut_file(name_or_path);
}

}  // namespace wcg
