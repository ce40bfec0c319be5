#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "isovolc/symplectic.hpp"

namespace isovolc {

struct GraphVertex {
  int id = 0;
  std::vector<int> levels;
  std::optional<OrderDescriptor> order;  // absent for abstract vertices
  std::string class_label;
  bool expanded = false;
};

struct GraphEdge {
  int from = 0;
  int to = 0;
  std::string label;  // "l1", "l2", "ll", "beta"
  int mult = 1;
};

// Directed multigraph with leveled vertices.  Parallel same-label edges are
// merged into a multiplicity.
struct LeveledGraph {
  std::vector<GraphVertex> vertices;
  std::vector<GraphEdge> edges;
  std::map<int, int> shift_map;  // vertex -> class of (l O_0) * vertex, when known
  std::string kind;

  int add_vertex(std::vector<int> levels, std::optional<OrderDescriptor> order = std::nullopt,
                 std::string class_label = "") {
    GraphVertex v;
    v.id = static_cast<int>(vertices.size());
    v.levels = std::move(levels);
    v.order = std::move(order);
    v.class_label = std::move(class_label);
    vertices.push_back(std::move(v));
    return vertices.back().id;
  }

  void add_edge(int from, int to, const std::string& label, int mult = 1) {
    for (auto& e : edges)
      if (e.from == from && e.to == to && e.label == label) {
        e.mult += mult;
        return;
      }
    edges.push_back({from, to, label, mult});
  }

  int edge_mult(int from, int to, const std::string& label) const {
    for (auto& e : edges)
      if (e.from == from && e.to == to && e.label == label) return e.mult;
    return 0;
  }

  std::vector<const GraphEdge*> out_edges(int v) const {
    std::vector<const GraphEdge*> r;
    for (auto& e : edges)
      if (e.from == v) r.push_back(&e);
    return r;
  }

  int out_degree(int v, const std::string& label = "") const {
    int d = 0;
    for (auto& e : edges)
      if (e.from == v && (label.empty() || e.label == label)) d += e.mult;
    return d;
  }

  void sort_edges() {
    std::sort(edges.begin(), edges.end(), [](const GraphEdge& a, const GraphEdge& b) {
      return std::tie(a.from, a.to, a.label) < std::tie(b.from, b.to, b.label);
    });
  }

  std::vector<int> vertices_at_level(const std::vector<int>& lv) const {
    std::vector<int> r;
    for (auto& v : vertices)
      if (v.levels == lv) r.push_back(v.id);
    return r;
  }

  int max_level(size_t coord = 0) const {
    int m = 0;
    for (auto& v : vertices)
      if (coord < v.levels.size()) m = std::max(m, v.levels[coord]);
    return m;
  }
};

enum class ExploreKind { l_neighbor, ll_neighbor };

struct ExploreResult {
  LeveledGraph graph;
  std::vector<SymplecticLattice> reps;       // representative lattice per vertex
  std::map<std::string, int> key_to_id;      // homothety key -> vertex id
};

// BFS over the lattice-neighbor graph, deduplicating vertices by l-power
// homothety.  The result may be a cover of the true isogeny graph (the
// local model does not see global class data); validation downstream is
// restricted to clauses that survive covering.
inline ExploreResult explore(const SymplecticLattice& seed, ExploreKind kind, int prime_index,
                             int depth, const FormTwist& twist) {
  const auto& alg = *seed.space->algebra;
  if (depth > alg.ring.precision - 4)
    throw PrecisionExhausted("exploration depth exceeds the precision budget");
  FormRef form = make_form(*seed.space, twist);

  ExploreResult res;
  res.graph.kind = kind == ExploreKind::l_neighbor ? "l-graph" : "ll-graph";

  auto level_of = [&](const SymplecticLattice& L) -> std::vector<int> {
    if (kind == ExploreKind::ll_neighbor) return {real_multiplier_order(L)};
    OrderDescriptor d = lattice_order_descriptor(L);
    return {d.conductor->exponents.at(prime_index)};
  };
  auto descriptor_of = [&](const SymplecticLattice& L) -> OrderDescriptor {
    int n = real_multiplier_order(L);
    if (n > 0) {
      OrderDescriptor d;
      d.real_level = n;
      return d;
    }
    return lattice_order_descriptor(L);
  };

  auto intern = [&](const SymplecticLattice& L) -> int {
    std::string key = L.homothety_key();
    auto it = res.key_to_id.find(key);
    if (it != res.key_to_id.end()) return it->second;
    int id = res.graph.add_vertex(level_of(L), descriptor_of(L));
    res.reps.push_back(L);
    res.key_to_id.emplace(key, id);
    return id;
  };

  std::vector<std::pair<int, int>> frontier;  // (vertex, distance)
  frontier.emplace_back(intern(seed), 0);
  size_t cursor = 0;
  while (cursor < frontier.size()) {
    auto [vid, dist] = frontier[cursor++];
    if (dist >= depth) continue;
    SymplecticLattice L = res.reps[vid];
    std::vector<SymplecticLattice> nbs;
    if (kind == ExploreKind::l_neighbor)
      nbs = l_neighbors(L, prime_index);
    else
      nbs = ll_neighbors(L, form);
    res.graph.vertices[vid].expanded = true;
    for (auto& nb : nbs) {
      bool fresh = res.key_to_id.find(nb.homothety_key()) == res.key_to_id.end();
      int wid = intern(nb);
      res.graph.add_edge(vid, wid, kind == ExploreKind::l_neighbor
                                       ? (prime_index == 0 ? "l1" : "l2")
                                       : "ll");
      if (fresh) frontier.emplace_back(wid, dist + 1);
    }
  }

  // l O_0 shift classes for pasting and the descend-then-ascend identity
  if (kind == ExploreKind::l_neighbor) {
    const auto& u = alg.real_primes.at(prime_index).uniformizer;
    for (size_t i = 0; i < res.reps.size(); ++i) {
      SymplecticLattice s = element_image(res.reps[i], u);
      auto it = res.key_to_id.find(s.homothety_key());
      if (it != res.key_to_id.end()) res.graph.shift_map[static_cast<int>(i)] = it->second;
    }
  }
  res.graph.sort_edges();
  return res;
}

inline ExploreResult explore(const SymplecticLattice& seed, ExploreKind kind, int prime_index,
                             int depth) {
  return explore(seed, kind, prime_index, depth, FormTwist::trivial(*seed.space->algebra));
}

// Joint BFS over l1- and l2-neighbors (split real prime), with bi-level
// labels (v_l1, v_l2) read from the conductor.
inline ExploreResult explore_bilabeled(const SymplecticLattice& seed, int depth) {
  const auto& alg = *seed.space->algebra;
  check(alg.real_prime_count() == 2, "bilabeled exploration needs a split real prime");
  if (depth > alg.ring.precision - 4)
    throw PrecisionExhausted("exploration depth exceeds the precision budget");

  ExploreResult res;
  res.graph.kind = "l1l2-graph";
  auto intern = [&](const SymplecticLattice& L) -> int {
    std::string key = L.homothety_key();
    auto it = res.key_to_id.find(key);
    if (it != res.key_to_id.end()) return it->second;
    OrderDescriptor d = lattice_order_descriptor(L);
    std::vector<int> lv = {d.conductor->exponents[0], d.conductor->exponents[1]};
    int id = res.graph.add_vertex(lv, d);
    res.reps.push_back(L);
    res.key_to_id.emplace(key, id);
    return id;
  };

  std::vector<std::pair<int, int>> frontier;
  frontier.emplace_back(intern(seed), 0);
  size_t cursor = 0;
  while (cursor < frontier.size()) {
    auto [vid, dist] = frontier[cursor++];
    if (dist >= depth) continue;
    SymplecticLattice L = res.reps[vid];
    res.graph.vertices[vid].expanded = true;
    for (int pi = 0; pi < 2; ++pi) {
      for (auto& nb : l_neighbors(L, pi)) {
        bool fresh = res.key_to_id.find(nb.homothety_key()) == res.key_to_id.end();
        int wid = intern(nb);
        res.graph.add_edge(vid, wid, pi == 0 ? "l1" : "l2");
        if (fresh) frontier.emplace_back(wid, dist + 1);
      }
    }
  }
  res.graph.sort_edges();
  return res;
}

// ---------------------------------------------------------------------------
// serialization

inline std::string graph_to_json(const LeveledGraph& g) {
  std::ostringstream o;
  o << "{\"vertices\":[";
  for (size_t i = 0; i < g.vertices.size(); ++i) {
    const auto& v = g.vertices[i];
    if (i) o << ",";
    o << "{\"id\":" << v.id << ",\"levels\":[";
    for (size_t j = 0; j < v.levels.size(); ++j) {
      if (j) o << ",";
      o << v.levels[j];
    }
    o << "]";
    if (v.order) {
      o << ",\"order\":{\"real_level\":" << v.order->real_level << ",\"conductor\":[";
      if (v.order->conductor)
        for (size_t j = 0; j < v.order->conductor->exponents.size(); ++j) {
          if (j) o << ",";
          o << v.order->conductor->exponents[j];
        }
      o << "]}";
    } else {
      o << ",\"order\":\"abstract\"";
    }
    if (!v.class_label.empty()) o << ",\"class\":\"" << v.class_label << "\"";
    o << "}";
  }
  o << "],\"edges\":[";
  for (size_t i = 0; i < g.edges.size(); ++i) {
    const auto& e = g.edges[i];
    if (i) o << ",";
    o << "{\"from\":" << e.from << ",\"to\":" << e.to << ",\"label\":\"" << e.label
      << "\",\"mult\":" << e.mult << "}";
  }
  o << "]}";
  return o.str();
}

inline std::string graph_to_dot(const LeveledGraph& g) {
  std::ostringstream o;
  o << "digraph isogeny {\n";
  for (const auto& v : g.vertices) {
    o << "  v" << v.id << " [level=\"";
    for (size_t j = 0; j < v.levels.size(); ++j) {
      if (j) o << ",";
      o << v.levels[j];
    }
    o << "\"";
    if (v.order) o << ", order=\"" << v.order->str() << "\"";
    if (!v.class_label.empty()) o << ", class=\"" << v.class_label << "\"";
    o << "];\n";
  }
  for (const auto& e : g.edges)
    for (int m = 0; m < e.mult; ++m)
      o << "  v" << e.from << " -> v" << e.to << " [label=\"" << e.label << "\"];\n";
  o << "}\n";
  return o.str();
}

}  // namespace isovolc
