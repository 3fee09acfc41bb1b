#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "perfchar/complexes.hpp"
#include "perfchar/parse.hpp"
#include "perfchar/ring.hpp"

namespace perfchar {

using Json = nlohmann::ordered_json;

// Ring presentation files: { "char": 2, "vars": ["x","y"], "relations": ["x*y"] }
inline RingPresentation ring_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("char") || !j.contains("vars"))
    throw FileFormatError("ring file needs \"char\" and \"vars\"");
  std::int64_t p = j.at("char").get<std::int64_t>();
  std::vector<std::string> vars;
  for (const auto& v : j.at("vars")) vars.push_back(v.get<std::string>());
  std::vector<std::string> rels;
  if (j.contains("relations"))
    for (const auto& r : j.at("relations")) rels.push_back(r.get<std::string>());
  return make_presentation(PrimeChar(p), std::move(vars), rels);
}

inline Json ring_to_json(const RingPresentation& pres) {
  Json j;
  j["char"] = pres.ring->ch.p;
  j["vars"] = pres.ring->vars;
  Json rels = Json::array();
  for (const auto& r : pres.relations) rels.push_back(r.str());
  j["relations"] = std::move(rels);
  return j;
}

inline Json load_json_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open " + path);
  Json j;
  try {
    is >> j;
  } catch (const std::exception& e) {
    throw FileFormatError(path + ": " + e.what());
  }
  return j;
}

inline RingPresentation load_ring_file(const std::string& path) {
  return ring_from_json(load_json_file(path));
}

// Embedding files: { "images": { "t": "t", "ts": "t*s" } }, keyed by the
// source ring's variable names, with expressions over the target ring.
inline std::map<std::string, std::string> embedding_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("images"))
    throw FileFormatError("embedding file needs \"images\"");
  std::map<std::string, std::string> images;
  for (const auto& [key, val] : j.at("images").items())
    images[key] = val.get<std::string>();
  return images;
}

inline std::map<std::string, std::string> load_embedding_file(
    const std::string& path) {
  return embedding_from_json(load_json_file(path));
}

// Complexes serialize with their ring, level, ranks, and row-major entry
// texts per differential.
inline Json complex_to_json(const FreeComplex& C) {
  Json j;
  j["ring"] = ring_to_json(C.ring.base);
  j["level"] = C.ring.level;
  j["ranks"] = C.ranks;
  Json ds = Json::array();
  for (const auto& m : C.d) {
    Json entries = Json::array();
    for (const auto& e : m.entries) entries.push_back(e.str());
    Json dj;
    dj["rows"] = m.rows;
    dj["cols"] = m.cols;
    dj["entries"] = std::move(entries);
    ds.push_back(std::move(dj));
  }
  j["differentials"] = std::move(ds);
  return j;
}

}  // namespace perfchar
