#pragma once

#include <fstream>

#include <json.hpp>

#include "isovolc/graph.hpp"

namespace isovolc {

inline nlohmann::json algebra_config_to_json(const AlgebraConfig& cfg) {
  nlohmann::json j;
  j["ell"] = cfg.ell;
  j["precision"] = cfg.precision;
  j["real_split"] = to_string(cfg.symbol.real);
  nlohmann::json ups = nlohmann::json::array();
  for (auto u : cfg.symbol.upper) ups.push_back(to_string(u));
  j["upper_split"] = ups;
  if (cfg.pi) {
    nlohmann::json p = nlohmann::json::array();
    for (long long c : *cfg.pi) p.push_back(c);
    j["pi"] = p;
  }
  return j;
}

inline AlgebraConfig algebra_config_from_json(const nlohmann::json& j) {
  AlgebraConfig cfg;
  cfg.ell = j.at("ell").get<u64>();
  cfg.precision = j.value("precision", 32);
  cfg.symbol.real = split_type_from_string(j.at("real_split").get<std::string>());
  cfg.symbol.upper.clear();
  for (auto& u : j.at("upper_split")) cfg.symbol.upper.push_back(split_type_from_string(u.get<std::string>()));
  if (j.contains("pi")) {
    std::array<long long, 4> p{};
    auto arr = j.at("pi");
    if (arr.size() != 4) throw InvalidParams("pi needs 4 coordinates");
    for (int i = 0; i < 4; ++i) p[i] = arr[i].get<long long>();
    cfg.pi = p;
  }
  return cfg;
}

inline LeveledGraph graph_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  LeveledGraph g;
  for (auto& jv : j.at("vertices")) {
    GraphVertex v;
    v.id = jv.at("id").get<int>();
    for (auto& l : jv.at("levels")) v.levels.push_back(l.get<int>());
    if (jv.contains("order") && jv["order"].is_object()) {
      OrderDescriptor d;
      d.real_level = jv["order"].at("real_level").get<int>();
      std::vector<int> exps;
      for (auto& e : jv["order"].at("conductor")) exps.push_back(e.get<int>());
      if (d.real_level == 0) d.conductor = RealIdeal(exps);
      v.order = d;
    }
    if (jv.contains("class")) v.class_label = jv["class"].get<std::string>();
    check(v.id == static_cast<int>(g.vertices.size()), "vertex ids must be dense and sorted");
    g.vertices.push_back(v);
  }
  for (auto& je : j.at("edges"))
    g.edges.push_back(GraphEdge{je.at("from").get<int>(), je.at("to").get<int>(),
                                je.at("label").get<std::string>(), je.at("mult").get<int>()});
  return g;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open " + path + " for writing");
  f << content;
}

}  // namespace isovolc
