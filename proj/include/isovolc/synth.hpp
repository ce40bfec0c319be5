#pragma once

#include <functional>
#include <numeric>
#include <set>

#include "isovolc/graph.hpp"

namespace isovolc {

// ---------------------------------------------------------------------------
// abstract volcano synthesis

struct VolcanoParams {
  u64 norm_l = 2;                // N(l)
  int symbol_in_K = -1;          // -1 inert, 0 ramified, +1 split
  int surface_cycle_length = 1;
  std::vector<int> unit_indices;      // per level transition, default all 1
  int depth = 1;
  std::vector<int> level_ell_orders;  // order of the (l O_0)-shift per level, optional
};

namespace detail {

struct VolcanoShape {
  std::vector<long long> sizes;     // vertices per level
  std::vector<long long> branch;    // distinct descending targets per transition
  std::vector<int> units;           // edge multiplicity per transition
  std::vector<int> shift_orders;
  int surface_shift = 0;            // c0: shift step on the surface cycle
};

inline VolcanoShape volcano_shape(const VolcanoParams& p, const std::vector<int>& desc_scale) {
  if (p.norm_l < 2 || p.surface_cycle_length < 1 || p.depth < 0)
    throw InvalidParams("volcano parameters out of range");
  if (p.symbol_in_K < -1 || p.symbol_in_K > 1) throw InvalidParams("symbol must be -1, 0 or 1");
  long long L = p.surface_cycle_length;
  if (p.symbol_in_K == -1 && L != 1)
    throw InvalidParams("an inert surface has no horizontal edges; its cycle length is 1");
  if (p.symbol_in_K == 0 && L > 2)
    throw InvalidParams("a ramified-generator surface cycle has length at most 2");

  VolcanoShape s;
  s.units = p.unit_indices;
  if (s.units.empty()) s.units.assign(p.depth, 1);
  if (static_cast<int>(s.units.size()) != p.depth)
    throw InvalidParams("unit_indices must have one entry per level transition");
  for (int u : s.units)
    if (u < 1) throw InvalidParams("unit indices must be >= 1");

  s.surface_shift = p.symbol_in_K == 0 ? static_cast<int>(2 % L) : 0;
  s.sizes.push_back(L);
  for (int i = 0; i < p.depth; ++i) {
    long long raw = i == 0 ? static_cast<long long>(p.norm_l) - p.symbol_in_K
                           : static_cast<long long>(p.norm_l);
    if (raw % s.units[i] != 0)
      throw InvalidParams("level-size ratio is not integral for the given unit index");
    long long d = raw / s.units[i];
    if (!desc_scale.empty()) d *= desc_scale[i];
    if (d < 1) throw InvalidParams("descending degree must be positive");
    s.branch.push_back(d);
    s.sizes.push_back(s.sizes.back() * d);
  }

  int o0 = s.surface_shift == 0 ? 1 : static_cast<int>(L / std::gcd(L, (long long)s.surface_shift));
  s.shift_orders = p.level_ell_orders;
  if (s.shift_orders.empty()) s.shift_orders.assign(p.depth + 1, o0);
  if (static_cast<int>(s.shift_orders.size()) != p.depth + 1)
    throw InvalidParams("level_ell_orders must have one entry per level");
  if (s.shift_orders[0] != o0)
    throw InvalidParams("surface shift order is determined by the symbol and cycle length");
  for (int i = 1; i <= p.depth; ++i) {
    int prev = s.shift_orders[i - 1], cur = s.shift_orders[i];
    if (cur % prev != 0) throw InvalidParams("shift orders must be stepwise divisible");
    int r = cur / prev;
    if (r != 1 && (std::gcd((long long)r, (long long)prev) != 1 || s.branch[i - 1] % r != 0))
      throw InvalidParams("unsupported shift-order jump for this branching");
    if (s.sizes[i] % cur != 0) throw InvalidParams("shift order must divide the level size");
  }
  return s;
}

inline LeveledGraph synth_volcano_core(const VolcanoParams& p,
                                       const std::vector<int>& desc_scale) {
  VolcanoShape s = volcano_shape(p, desc_scale);
  LeveledGraph g;
  g.kind = "volcano";
  long long L = p.surface_cycle_length;

  std::vector<long long> offset(p.depth + 1, 0);
  for (int i = 1; i <= p.depth; ++i) offset[i] = offset[i - 1] + s.sizes[i - 1];
  std::vector<std::vector<long long>> shift(p.depth + 1), parent(p.depth + 1);

  for (int i = 0; i <= p.depth; ++i) {
    for (long long k = 0; k < s.sizes[i]; ++k) {
      std::string cls = i == 0 ? std::to_string(k) : "";
      g.add_vertex({i}, std::nullopt, cls);
    }
    shift[i].resize(s.sizes[i]);
    parent[i].resize(s.sizes[i]);
    if (i == 0) {
      for (long long k = 0; k < L; ++k) shift[0][k] = (k + s.surface_shift) % L;
    } else {
      long long d = s.branch[i - 1];
      int r = s.shift_orders[i] / s.shift_orders[i - 1];
      for (long long pidx = 0; pidx < s.sizes[i - 1]; ++pidx)
        for (long long j = 0; j < d; ++j) {
          long long k = pidx * d + j;
          parent[i][k] = pidx;
          long long jj = r == 1 ? j : (j / r) * r + ((j % r + 1) % r);
          shift[i][k] = shift[i - 1][pidx] * d + jj;
        }
    }
    for (long long k = 0; k < s.sizes[i]; ++k)
      g.shift_map[static_cast<int>(offset[i] + k)] = static_cast<int>(offset[i] + shift[i][k]);
  }

  // surface horizontal edges
  for (long long k = 0; k < L; ++k) {
    int v = static_cast<int>(k);
    if (p.symbol_in_K == 1) {
      g.add_edge(v, static_cast<int>((k + 1) % L), "l1");
      g.add_edge(v, static_cast<int>((k - 1 + L) % L), "l1");
    } else if (p.symbol_in_K == 0) {
      g.add_edge(v, static_cast<int>((k + 1) % L), "l1");
    }
  }

  // vertical edges: descendants hang below the shift class of their parent
  for (int i = 0; i < p.depth; ++i) {
    long long d = s.branch[i];
    for (long long k = 0; k < s.sizes[i]; ++k) {
      long long tgt = shift[i][k];
      for (long long j = 0; j < d; ++j)
        g.add_edge(static_cast<int>(offset[i] + k),
                   static_cast<int>(offset[i + 1] + tgt * d + j), "l1", s.units[i]);
    }
    for (long long k = 0; k < s.sizes[i + 1]; ++k)
      g.add_edge(static_cast<int>(offset[i + 1] + k),
                 static_cast<int>(offset[i] + parent[i + 1][k]), "l1");
  }

  for (auto& v : g.vertices) v.expanded = v.levels[0] < p.depth;
  g.sort_edges();
  return g;
}

}  // namespace detail

inline LeveledGraph synth_l_volcano(const VolcanoParams& p) {
  return detail::synth_volcano_core(p, {});
}

// ---------------------------------------------------------------------------
// polarized synthesis

struct PolarizedParams {
  VolcanoParams base;
  bool shimura_order_doubling = false;
  std::vector<int> u_ratios;  // |U(O_{i+1})| / |U(O_i)| per transition, default all 1
};

inline LeveledGraph synth_polarized(const PolarizedParams& p) {
  if (p.shimura_order_doubling && p.base.symbol_in_K == -1)
    throw InvalidParams("an inert surface has no cycle to double");
  if (p.shimura_order_doubling && p.base.symbol_in_K == 0 && p.base.surface_cycle_length != 1)
    throw InvalidParams("a ramified polarized cycle has length at most 2");
  std::vector<int> ratios = p.u_ratios;
  if (ratios.empty()) ratios.assign(p.base.depth, 1);
  if (static_cast<int>(ratios.size()) != p.base.depth)
    throw InvalidParams("u_ratios must have one entry per level transition");
  bool model_grade = false;
  for (int r : ratios) {
    if (r < 1 || (r & (r - 1)) != 0) throw InvalidParams("u_ratios must be powers of 2");
    if (r != 1) model_grade = true;
  }
  VolcanoParams q = p.base;
  if (p.shimura_order_doubling) q.surface_cycle_length *= 2;
  // beta-duality pins every descend-then-ascend composite to the source
  q.level_ell_orders.assign(q.depth + 1, 1);
  LeveledGraph g = detail::synth_volcano_core(q, ratios);
  for (auto& e : g.edges) e.label = "beta";
  g.kind = model_grade ? "polarized(model-grade)" : "polarized";
  return g;
}

// ---------------------------------------------------------------------------
// bi-leveled synthesis (split real prime)

struct BiLeveledParams {
  std::array<std::array<long long, 2>, 2> relation_matrix{{{1, 0}, {0, 1}}};
  u64 ell = 2;
  int depth = 1;
};

namespace detail {

// Z^2 / (columns of M), stored by the column Hermite form [[d0,0],[t,d1]].
struct AbelianGroup {
  long long d0 = 1, t = 0, d1 = 1;

  static AbelianGroup from_relations(const std::array<std::array<long long, 2>, 2>& m) {
    long long a = m[0][0], b = m[0][1];
    long long c = m[1][0], d = m[1][1];
    if (a * d - b * c == 0) throw InvalidParams("relation matrix must define a finite group");
    // column Euclid on the top row
    while (b != 0) {
      long long q = a / b;
      a -= q * b;
      c -= q * d;
      std::swap(a, b);
      std::swap(c, d);
    }
    if (a < 0) {
      a = -a;
      c = -c;
    }
    if (d < 0) d = -d;
    AbelianGroup g;
    g.d0 = a;
    g.d1 = d;
    g.t = ((c % d) + d) % d;
    check(g.d0 > 0 && g.d1 > 0, "degenerate group presentation");
    return g;
  }

  std::pair<long long, long long> reduce(long long a, long long b) const {
    long long k = a >= 0 ? a / d0 : -((-a + d0 - 1) / d0);
    a -= k * d0;
    b -= k * t;
    b %= d1;
    if (b < 0) b += d1;
    return {a, b};
  }
  std::pair<long long, long long> add(std::pair<long long, long long> x,
                                      std::pair<long long, long long> y) const {
    return reduce(x.first + y.first, x.second + y.second);
  }
  std::pair<long long, long long> neg(std::pair<long long, long long> x) const {
    return reduce(-x.first, -x.second);
  }
  long long order() const { return d0 * d1; }
  long long index(std::pair<long long, long long> x) const { return x.first * d1 + x.second; }
  std::pair<long long, long long> element(long long idx) const { return {idx / d1, idx % d1}; }

  int element_order(std::pair<long long, long long> g) const {
    auto cur = g;
    int n = 1;
    while (!(cur.first == 0 && cur.second == 0)) {
      cur = add(cur, g);
      ++n;
      check(n <= order() + 1, "element order runaway");
    }
    return n;
  }
};

struct TreeShape {
  std::vector<int> level;
  std::vector<int> parent;                // -1 for the root
  std::vector<std::vector<int>> children;
  int count = 0;
};

// Rooted tree with root branching (l-1) and inner branching l, to `depth`.
inline TreeShape descent_tree(u64 ell, int depth) {
  TreeShape t;
  t.level.push_back(0);
  t.parent.push_back(-1);
  t.children.push_back({});
  std::vector<int> frontier{0};
  for (int d = 1; d <= depth; ++d) {
    std::vector<int> next;
    for (int p : frontier) {
      u64 br = d == 1 ? ell - 1 : ell;
      for (u64 j = 0; j < br; ++j) {
        int id = static_cast<int>(t.level.size());
        t.level.push_back(d);
        t.parent.push_back(p);
        t.children.push_back({});
        t.children[p].push_back(id);
        next.push_back(id);
      }
    }
    frontier = std::move(next);
  }
  t.count = static_cast<int>(t.level.size());
  return t;
}

}  // namespace detail

struct ValidationReport;
ValidationReport validate_bileveled(const LeveledGraph& g, const BiLeveledParams& p);

inline LeveledGraph synth_bileveled_unchecked(const BiLeveledParams& p) {
  if (p.depth < 0 || p.ell < 2) throw InvalidParams("bad bi-leveled parameters");
  auto H = detail::AbelianGroup::from_relations(p.relation_matrix);
  auto tree = detail::descent_tree(p.ell, p.depth);
  long long nH = H.order();
  int T = tree.count;

  LeveledGraph g;
  g.kind = "bileveled";
  auto vid = [&](long long h, int t1, int t2) {
    return static_cast<int>((h * T + t1) * T + t2);
  };
  for (long long h = 0; h < nH; ++h)
    for (int t1 = 0; t1 < T; ++t1)
      for (int t2 = 0; t2 < T; ++t2) {
        auto el = H.element(h);
        std::string cls = (t1 == 0 && t2 == 0)
                              ? std::to_string(el.first) + "+" + std::to_string(el.second)
                              : "";
        int id = g.add_vertex({tree.level[t1], tree.level[t2]}, std::nullopt, cls);
        check(id == vid(h, t1, t2), "vertex numbering drifted");
      }

  std::pair<long long, long long> gens[2] = {H.reduce(1, 0), H.reduce(0, 1)};
  for (long long h = 0; h < nH; ++h) {
    auto el = H.element(h);
    for (int t1 = 0; t1 < T; ++t1)
      for (int t2 = 0; t2 < T; ++t2) {
        int v = vid(h, t1, t2);
        for (int dir = 0; dir < 2; ++dir) {
          int tcur = dir == 0 ? t1 : t2;
          std::string label = dir == 0 ? "l1" : "l2";
          auto mk = [&](long long hh, int tt) {
            return dir == 0 ? vid(hh, tt, t2) : vid(hh, t1, tt);
          };
          if (tcur == 0) {
            long long hp = H.index(H.add(el, gens[dir]));
            long long hm = H.index(H.add(el, H.neg(gens[dir])));
            g.add_edge(v, mk(hp, 0), label);
            g.add_edge(v, mk(hm, 0), label);
          } else {
            g.add_edge(v, mk(h, tree.parent[tcur]), label);
          }
          for (int c : tree.children[tcur]) g.add_edge(v, mk(h, c), label);
        }
      }
  }
  for (auto& v : g.vertices)
    v.expanded = v.levels[0] < p.depth && v.levels[1] < p.depth;
  g.sort_edges();
  return g;
}

// ---------------------------------------------------------------------------
// validation

struct ClauseResult {
  std::string name;
  bool pass = true;
  std::string witness;
};

struct ValidationReport {
  std::vector<ClauseResult> clauses;

  bool all_pass() const {
    for (auto& c : clauses)
      if (!c.pass) return false;
    return true;
  }
  std::string str() const {
    std::string s;
    for (auto& c : clauses) {
      s += (c.pass ? "[pass] " : "[FAIL] ") + c.name;
      if (!c.pass && !c.witness.empty()) s += " (witness: " + c.witness + ")";
      s += "\n";
    }
    return s;
  }
  std::string to_json() const {
    std::string s = "{\"clauses\":[";
    for (size_t i = 0; i < clauses.size(); ++i) {
      if (i) s += ",";
      s += "{\"name\":\"" + clauses[i].name + "\",\"pass\":" + (clauses[i].pass ? "true" : "false");
      if (!clauses[i].witness.empty()) s += ",\"witness\":\"" + clauses[i].witness + "\"";
      s += "}";
    }
    return s + "],\"all_pass\":" + (all_pass() ? "true" : "false") + "}";
  }
};

enum class SizeCheck { none, absolute, ratio };

// Mechanical checks of the leveled-volcano clauses: level sizes or ratios,
// one simple ascending edge per deep vertex, regular descending bundles,
// horizontal structure at the surface only, and the descend-then-ascend
// shift identity when a shift map is available.
inline ValidationReport validate_volcano(const LeveledGraph& g, const VolcanoParams& p,
                                         SizeCheck sizes = SizeCheck::absolute,
                                         bool require_undirected = false,
                                         bool mult_exact = false) {
  ValidationReport rep;
  detail::VolcanoShape shape = detail::volcano_shape(p, {});
  int depth = p.depth;

  auto level_count = [&](int i) {
    return static_cast<long long>(g.vertices_at_level({i}).size());
  };
  auto level_fully_expanded = [&](int i) {
    for (int v : g.vertices_at_level({i}))
      if (!g.vertices[v].expanded) return false;
    return !g.vertices_at_level({i}).empty();
  };

  {
    ClauseResult c{"level-sizes"};
    if (sizes == SizeCheck::absolute) {
      for (int i = 0; i <= depth; ++i)
        if (level_count(i) != shape.sizes[i]) {
          c.pass = false;
          c.witness = "level " + std::to_string(i) + " has " + std::to_string(level_count(i)) +
                      " vertices, expected " + std::to_string(shape.sizes[i]);
          break;
        }
    } else if (sizes == SizeCheck::ratio) {
      for (int i = 0; i < depth; ++i) {
        if (!level_fully_expanded(i)) break;
        long long a = level_count(i), b = level_count(i + 1);
        if (b != a * shape.branch[i]) {
          c.pass = false;
          c.witness = "levels " + std::to_string(i) + ":" + std::to_string(i + 1) + " sized " +
                      std::to_string(a) + ":" + std::to_string(b);
          break;
        }
      }
    }
    rep.clauses.push_back(c);
  }

  {
    ClauseResult c{"unique-ascending-edge"};
    for (auto& v : g.vertices) {
      if (!v.expanded || v.levels[0] == 0) continue;
      int count = 0, mult = 0;
      for (auto* e : g.out_edges(v.id))
        if (g.vertices[e->to].levels[0] == v.levels[0] - 1) {
          ++count;
          mult = e->mult;
        }
      if (count != 1 || mult != 1) {
        c.pass = false;
        c.witness = "vertex " + std::to_string(v.id);
        break;
      }
    }
    rep.clauses.push_back(c);
  }

  {
    ClauseResult c{"descending-degree"};
    for (auto& v : g.vertices) {
      if (!v.expanded) continue;
      int i = v.levels[0];
      if (i >= depth) continue;
      long long distinct = 0;
      bool mult_ok = true;
      for (auto* e : g.out_edges(v.id))
        if (g.vertices[e->to].levels[0] == i + 1) {
          ++distinct;
          if (e->mult != shape.units[i]) mult_ok = false;
        }
      if (distinct != shape.branch[i] || !mult_ok) {
        c.pass = false;
        c.witness = "vertex " + std::to_string(v.id) + " has " + std::to_string(distinct) +
                    " descending bundles";
        break;
      }
    }
    rep.clauses.push_back(c);
  }

  {
    ClauseResult c{"horizontal-structure"};
    int want = p.symbol_in_K == 1 ? 2 : p.symbol_in_K == 0 ? 1 : 0;
    for (auto& v : g.vertices) {
      if (!v.expanded) continue;
      int horiz = 0;
      for (auto* e : g.out_edges(v.id))
        if (g.vertices[e->to].levels[0] == v.levels[0]) horiz += e->mult;
      int expect = v.levels[0] == 0 ? want : 0;
      if (horiz != expect) {
        c.pass = false;
        c.witness = "vertex " + std::to_string(v.id) + " has " + std::to_string(horiz) +
                    " horizontal multiplicity";
        break;
      }
    }
    rep.clauses.push_back(c);
  }

  if (!g.shift_map.empty()) {
    ClauseResult c{"descend-then-ascend-shift"};
    for (auto& e : g.edges) {
      const auto& a = g.vertices[e.from];
      const auto& b = g.vertices[e.to];
      if (!a.expanded || !b.expanded) continue;
      if (b.levels[0] != a.levels[0] + 1) continue;
      auto sh = g.shift_map.find(e.from);
      if (sh == g.shift_map.end()) continue;
      int asc_target = -1;
      for (auto* be : g.out_edges(e.to))
        if (g.vertices[be->to].levels[0] == a.levels[0]) asc_target = be->to;
      if (asc_target != sh->second) {
        c.pass = false;
        c.witness = "descending edge " + std::to_string(e.from) + "->" + std::to_string(e.to);
        break;
      }
    }
    rep.clauses.push_back(c);
  }

  if (require_undirected) {
    ClauseResult c{"undirected"};
    for (auto& e : g.edges) {
      if (!g.vertices[e.from].expanded || !g.vertices[e.to].expanded) continue;
      int back = 0;
      for (auto& f : g.edges)
        if (f.from == e.to && f.to == e.from) back += f.mult;
      bool ok = mult_exact ? back == e.mult : back > 0;
      if (!ok) {
        c.pass = false;
        c.witness = "edge " + std::to_string(e.from) + "->" + std::to_string(e.to);
        break;
      }
    }
    rep.clauses.push_back(c);
  }

  return rep;
}

// The four characterizing clauses of the bi-leveled graph: per-label
// volcano decomposition, cross-level invariance, Cayley level blocks, and
// the commuting-path property.
inline ValidationReport validate_bileveled(const LeveledGraph& g, const BiLeveledParams& p) {
  ValidationReport rep;
  auto H = detail::AbelianGroup::from_relations(p.relation_matrix);
  int ord_gen[2] = {H.element_order(H.reduce(1, 0)), H.element_order(H.reduce(0, 1))};
  long long l = static_cast<long long>(p.ell);

  auto label_of = [](int dir) { return dir == 0 ? std::string("l1") : std::string("l2"); };

  // (i) per-label subgraphs are disjoint unions of l-volcanoes
  for (int dir = 0; dir < 2; ++dir) {
    ClauseResult c{"volcano-decomposition-" + label_of(dir)};
    // component structure via union-find over dir-labeled edges
    std::vector<int> comp(g.vertices.size());
    std::iota(comp.begin(), comp.end(), 0);
    std::function<int(int)> find = [&](int x) { return comp[x] == x ? x : comp[x] = find(comp[x]); };
    for (auto& e : g.edges)
      if (e.label == label_of(dir)) comp[find(e.from)] = find(e.to);

    for (auto& v : g.vertices) {
      int lv = v.levels[dir];
      int asc = 0, desc = 0, horiz = 0;
      for (auto* e : g.out_edges(v.id)) {
        if (e->label != label_of(dir)) continue;
        int wl = g.vertices[e->to].levels[dir];
        if (g.vertices[e->to].levels[1 - dir] != v.levels[1 - dir]) {
          c.pass = false;
          c.witness = "cross-level edge at vertex " + std::to_string(v.id);
          break;
        }
        if (wl == lv - 1)
          asc += e->mult;
        else if (wl == lv + 1)
          desc += e->mult;
        else if (wl == lv)
          horiz += e->mult;
        else {
          c.pass = false;
          c.witness = "level jump at vertex " + std::to_string(v.id);
        }
      }
      if (!c.pass) break;
      bool truncated = v.levels[dir] >= p.depth;
      if (lv == 0) {
        if (asc != 0 || horiz != 2 || (!truncated && desc != l - 1)) {
          c.pass = false;
          c.witness = "surface vertex " + std::to_string(v.id);
          break;
        }
      } else {
        if (asc != 1 || horiz != 0 || (!truncated && desc != l)) {
          c.pass = false;
          c.witness = "deep vertex " + std::to_string(v.id);
          break;
        }
      }
    }
    rep.clauses.push_back(c);
  }

  // (ii) an l_i-edge preserves the other level
  {
    ClauseResult c{"cross-level-invariance"};
    for (auto& e : g.edges) {
      int other = e.label == "l1" ? 1 : 0;
      if (g.vertices[e.from].levels[other] != g.vertices[e.to].levels[other]) {
        c.pass = false;
        c.witness = "edge " + std::to_string(e.from) + "->" + std::to_string(e.to);
        break;
      }
    }
    rep.clauses.push_back(c);
  }

  // (iii) level blocks are Cayley graphs: (0,0) is connected of size |H|
  // with the generator degrees; (m,0)/(0,n) blocks split into cycles of the
  // generator order; deep blocks carry no internal edges
  {
    ClauseResult c{"cayley-level-blocks"};
    int maxl = p.depth;
    for (int m = 0; m <= maxl && c.pass; ++m)
      for (int n = 0; n <= maxl && c.pass; ++n) {
        auto block = g.vertices_at_level({m, n});
        if (block.empty()) continue;
        std::set<int> in_block(block.begin(), block.end());
        // edges internal to the block
        long long internal = 0;
        for (auto& e : g.edges)
          if (in_block.count(e.from) && in_block.count(e.to) &&
              g.vertices[e.from].levels == g.vertices[e.to].levels &&
              g.vertices[e.to].levels == g.vertices[block[0]].levels)
            internal += e.mult;
        if (m > 0 && n > 0) {
          if (internal != 0) {
            c.pass = false;
            c.witness = "deep block (" + std::to_string(m) + "," + std::to_string(n) +
                        ") has internal edges";
          }
          continue;
        }
        int dir = (m == 0 && n == 0) ? -1 : (m > 0 ? 1 : 0);
        if (dir == -1) {
          if (static_cast<long long>(block.size()) != H.order()) {
            c.pass = false;
            c.witness = "surface block size " + std::to_string(block.size());
          }
          continue;
        }
        // cosets of <g_dir>: every component must be a cycle of ord_gen[dir]
        long long cyc = ord_gen[dir];
        if (block.size() % cyc != 0) {
          c.pass = false;
          c.witness = "block (" + std::to_string(m) + "," + std::to_string(n) + ")";
          continue;
        }
        for (int v : block) {
          int horiz = 0;
          for (auto* e : g.out_edges(v))
            if (e->label == label_of(dir) && g.vertices[e->to].levels == g.vertices[v].levels)
              horiz += e->mult;
          if (horiz != 2) {
            c.pass = false;
            c.witness = "vertex " + std::to_string(v) + " in block (" + std::to_string(m) + "," +
                        std::to_string(n) + ")";
            break;
          }
        }
      }
    rep.clauses.push_back(c);
  }

  // (iv) commuting paths: l1-then-l2 targets equal l2-then-l1 targets.
  // Sources sit inside the depth box, where every second-step edge exists.
  {
    ClauseResult c{"commuting-paths"};
    for (auto& v : g.vertices) {
      if (!v.expanded) continue;
      std::set<int> a, b;
      for (auto* e1 : g.out_edges(v.id)) {
        if (e1->label != "l1") continue;
        for (auto* e2 : g.out_edges(e1->to))
          if (e2->label == "l2") a.insert(e2->to);
      }
      for (auto* e1 : g.out_edges(v.id)) {
        if (e1->label != "l2") continue;
        for (auto* e2 : g.out_edges(e1->to))
          if (e2->label == "l1") b.insert(e2->to);
      }
      if (a != b) {
        c.pass = false;
        c.witness = "vertex " + std::to_string(v.id);
        break;
      }
    }
    rep.clauses.push_back(c);
  }

  return rep;
}

inline LeveledGraph synth_bileveled(const BiLeveledParams& p) {
  LeveledGraph g = synth_bileveled_unchecked(p);
  ValidationReport rep = validate_bileveled(g, p);
  if (!rep.all_pass()) throw ValidationFailed("bi-leveled construction: " + rep.str());
  return g;
}

// Uniform out-degree check for pasted graphs, on interior vertices.
inline ValidationReport validate_regular_outdegree(const LeveledGraph& g, int expected) {
  ValidationReport rep;
  ClauseResult c{"regular-out-degree"};
  bool any = false;
  for (auto& v : g.vertices) {
    int d = g.out_degree(v.id);
    if (d == 0) continue;  // non-interior vertices carry no pasted edges
    any = true;
    if (d != expected) {
      c.pass = false;
      c.witness = "vertex " + std::to_string(v.id) + " has out-degree " + std::to_string(d);
      break;
    }
  }
  if (!any) {
    c.pass = false;
    c.witness = "no interior vertices";
  }
  rep.clauses.push_back(c);
  return rep;
}

// ---------------------------------------------------------------------------
// (l,l)-pasting of l-graphs

namespace detail {

inline bool interior_vertex(const LeveledGraph& g, int v) {
  if (!g.vertices[v].expanded) return false;
  for (auto* e : g.out_edges(v))
    if (!g.vertices[e->to].expanded) return false;
  return true;
}

}  // namespace detail

// Reinterpret an l-graph as an (l,l)-graph.  Inert: labels change and
// nothing else.  Ramified: the square of the graph, with l parallel copies
// of each vertex's projection composite removed.  Split: one edge per
// ordered l1-then-l2 path.  Output edges exist only for interior vertices.
inline LeveledGraph paste_ll_graph(const LeveledGraph& g, SplitType symbol, u64 ell) {
  LeveledGraph out;
  out.kind = "ll-pasted";
  for (auto& v : g.vertices) {
    out.add_vertex(v.levels, v.order, v.class_label);
    out.vertices.back().expanded = v.expanded;
  }

  if (symbol == SplitType::inert) {
    for (auto& e : g.edges)
      if (detail::interior_vertex(g, e.from)) out.add_edge(e.from, e.to, "ll", e.mult);
    out.sort_edges();
    return out;
  }

  if (symbol == SplitType::ramified) {
    if (g.shift_map.empty())
      throw InputShapeMismatch("ramified pasting needs the (l O_0)-shift classes");
    for (auto& v : g.vertices) {
      if (!detail::interior_vertex(g, v.id)) continue;
      std::map<int, int> sq;
      for (auto* e1 : g.out_edges(v.id))
        for (auto* e2 : g.out_edges(e1->to)) sq[e2->to] += e1->mult * e2->mult;
      auto sh = g.shift_map.find(v.id);
      if (sh == g.shift_map.end())
        throw InputShapeMismatch("missing shift class for vertex " + std::to_string(v.id));
      auto it = sq.find(sh->second);
      check(it != sq.end() && it->second >= static_cast<int>(ell) + 1,
            "projection composite is not over-counted as expected");
      it->second -= static_cast<int>(ell);
      for (auto& [to, m] : sq)
        if (m > 0) out.add_edge(v.id, to, "ll", m);
    }
    out.sort_edges();
    return out;
  }

  // split: ordered l1-then-l2 paths
  bool has_l2 = false;
  for (auto& e : g.edges)
    if (e.label == "l2") has_l2 = true;
  if (!has_l2) throw InputShapeMismatch("split pasting needs a bi-labeled input graph");
  for (auto& v : g.vertices) {
    if (!detail::interior_vertex(g, v.id)) continue;
    std::map<int, int> sq;
    for (auto* e1 : g.out_edges(v.id)) {
      if (e1->label != "l1") continue;
      for (auto* e2 : g.out_edges(e1->to))
        if (e2->label == "l2") sq[e2->to] += e1->mult * e2->mult;
    }
    for (auto& [to, m] : sq) out.add_edge(v.id, to, "ll", m);
  }
  out.sort_edges();
  return out;
}

}  // namespace isovolc
