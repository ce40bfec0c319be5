#pragma once

#include "isovolc/goingup.hpp"

namespace isovolc {

// Brute-force counterparts of the neighbor machinery.  These deliberately
// take different routes from the production code (exhaustive subspace
// enumeration plus filters) so the two sides can check each other.

namespace oracle {

// All canonical reduced-row-echelon 2x4 matrices over F_l, one per plane.
inline std::vector<std::array<std::array<u64, 4>, 2>> all_planes_mod_ell(u64 l) {
  std::vector<std::array<std::array<u64, 4>, 2>> out;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      // pivots at columns i and j
      std::vector<int> free0, free1;
      for (int c = i + 1; c < 4; ++c)
        if (c != j) free0.push_back(c);
      for (int c = j + 1; c < 4; ++c) free1.push_back(c);
      u64 count = 1;
      for (size_t t = 0; t < free0.size() + free1.size(); ++t) count *= l;
      for (u64 v = 0; v < count; ++v) {
        std::array<std::array<u64, 4>, 2> m{};
        m[0][i] = 1;
        m[1][j] = 1;
        u64 x = v;
        for (int c : free0) {
          m[0][c] = x % l;
          x /= l;
        }
        for (int c : free1) {
          m[1][c] = x % l;
          x /= l;
        }
        out.push_back(m);
      }
    }
  u64 l2 = l * l;
  check(out.size() == (l2 + 1) * (l2 + l + 1), "plane enumeration count drifted");
  return out;
}

// Filter all planes of Lambda/l Lambda by isotropy.  skip_isotropy_filter
// exists for fault-injection tests.
inline std::vector<SubspaceModEll> brute_isotropic_planes(const SymplecticLattice& L,
                                                          const FormRef& form,
                                                          bool skip_isotropy_filter = false) {
  const ResidueRing& R = L.space->ring();
  u64 l = R.ell;
  ResidueMatrix w = reduced_symplectic_gram(L, form);
  std::vector<SubspaceModEll> out;
  for (auto& m : all_planes_mod_ell(l)) {
    u64 pair01 = 0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) pair01 = (pair01 + m[0][a] * w(a, b) % l * m[1][b]) % l;
    if (!skip_isotropy_filter && pair01 != 0) continue;
    out.push_back(SubspaceModEll{L, m, 2});
  }
  std::sort(out.begin(), out.end());
  return out;
}

// All intermediate lattices between l_i Lambda and Lambda of index N(l_i),
// filtered by stability under the real order.
inline std::vector<SymplecticLattice> brute_l_neighbors(const SymplecticLattice& L,
                                                        int prime_index) {
  const LocalCMAlgebra& A = *L.space->algebra;
  const ResidueRing& R = A.ring;
  const auto& p = A.real_primes.at(prime_index);
  u64 l = R.ell;
  int f = p.residue_degree;

  ResidueMatrix ub = A.mult_matrix(p.uniformizer) * L.basis;
  u64 d = det(L.basis);
  int dv = R.valuation(d);
  u64 iu = R.inv(R.div_ell_pow(d, dv));
  ResidueMatrix cmat = (adjugate(L.basis).scaled(iu) * ub).shifted(-dv);
  ResidueMatrix ch = normal_form_basis(cmat);
  std::vector<int> positions;
  for (int i = 0; i < 4; ++i) {
    int v = R.valuation(ch(i, i));
    check(v == 0 || v == 1, "quotient by a real prime must be elementary");
    if (v == 1) positions.push_back(i);
  }
  check(static_cast<int>(positions.size()) == 2 * f, "quotient rank mismatch");

  // dim-f subspaces of F_l^(2f), canonical echelon generators
  std::vector<std::vector<std::vector<u64>>> subspaces;
  int n = 2 * f;
  if (f == 1) {
    for (int lead = 0; lead < n; ++lead) {
      u64 count = 1;
      for (int t = lead + 1; t < n; ++t) count *= l;
      for (u64 v = 0; v < count; ++v) {
        std::vector<u64> g(n, 0);
        g[lead] = 1;
        u64 x = v;
        for (int t = lead + 1; t < n; ++t) {
          g[t] = x % l;
          x /= l;
        }
        subspaces.push_back({g});
      }
    }
  } else {
    for (auto& m : all_planes_mod_ell(l)) {
      std::vector<std::vector<u64>> gens(2, std::vector<u64>(4));
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 4; ++c) gens[r][c] = m[r][c];
      subspaces.push_back(gens);
    }
  }

  ResidueMatrix omega_mat = A.mult_matrix(A.omega());
  std::set<SymplecticLattice> out;
  for (auto& gens : subspaces) {
    // lift generators into basis coordinates supported on the quotient digits
    ResidueMatrix cols(R, 4, 4 + 2 * static_cast<int>(gens.size()));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) cols(i, j) = ub(i, j);
    bool stable = true;
    for (size_t gi = 0; gi < gens.size(); ++gi) {
      std::vector<u64> y(4, 0);
      for (size_t t = 0; t < positions.size(); ++t) y[positions[t]] = gens[gi][t];
      std::vector<u64> wv = L.basis.apply(y);
      std::vector<u64> ww = omega_mat.apply(wv);
      for (int i = 0; i < 4; ++i) {
        cols(i, 4 + 2 * static_cast<int>(gi)) = wv[i];
        cols(i, 5 + 2 * static_cast<int>(gi)) = ww[i];
      }
    }
    SymplecticLattice cand = normalize_lattice(L.space, cols, L.scale_exp);
    // stability filter: omega maps every generator into the candidate
    for (size_t gi = 0; gi < gens.size() && stable; ++gi) {
      std::vector<u64> y(4, 0);
      for (size_t t = 0; t < positions.size(); ++t) y[positions[t]] = gens[gi][t];
      std::vector<u64> ww = omega_mat.apply(L.basis.apply(y));
      if (!lattice_contains(cand.basis, ww)) stable = false;
    }
    if (!stable) continue;
    // index filter: the subgroup spanned must have order N(l), i.e. the
    // candidate has index N(l) in Lambda (scale-aware)
    int iv = 4 * (cand.scale_exp - L.scale_exp) + R.valuation(det(cand.basis)) -
             R.valuation(det(L.basis));
    if (iv != f) continue;
    out.insert(cand);
  }
  return std::vector<SymplecticLattice>(out.begin(), out.end());
}

// |(O_f / l_i O_f)^x| / |(O_0/l_i)^x| by exhaustive unit enumeration in the
// finite quotient ring; this is the simply-transitive orbit size behind the
// descending-neighbor count.
inline u64 unit_quotient_size(std::shared_ptr<const LocalCMAlgebra> alg, const RealIdeal& f,
                              int prime_index) {
  const LocalCMAlgebra& A = *alg;
  const ResidueRing& R = A.ring;
  OrderLattice O = order_from_conductor(alg, f);
  const auto& p = A.real_primes.at(prime_index);
  ResidueMatrix ub = A.mult_matrix(p.uniformizer) * O.basis;
  u64 d = det(O.basis);
  int dv = R.valuation(d);
  u64 iu = R.inv(R.div_ell_pow(d, dv));
  ResidueMatrix cmat = (adjugate(O.basis).scaled(iu) * ub).shifted(-dv);
  ResidueMatrix ch = normal_form_basis(cmat);
  std::array<int, 4> digits{};
  u64 total = 1;
  for (int i = 0; i < 4; ++i) {
    digits[i] = R.valuation(ch(i, i));
    total *= R.ell_pow(digits[i]);
  }
  check(total == p.norm * p.norm, "order quotient size mismatch");

  auto coords_of = [&](u64 t) {
    std::vector<u64> y(4, 0);
    for (int i = 0; i < 4; ++i) {
      u64 m = R.ell_pow(digits[i]);
      y[i] = t % m;
      t /= m;
    }
    return y;
  };
  auto element_of = [&](const std::vector<u64>& y) {
    std::vector<u64> c = O.basis.apply(y);
    return A.element({c[0], c[1], c[2], c[3]});
  };
  // canonical coset index of an element of O against the quotient lattice,
  // by back-reduction through the lower-triangular quotient columns
  auto index_of = [&](const AlgebraElement& x) -> u64 {
    auto sol = solve_in_lattice(O.basis, {x.coords[0], x.coords[1], x.coords[2], x.coords[3]});
    check(sol.has_value(), "product left the order");
    auto red = *sol;
    for (int j = 3; j >= 0; --j) {
      u64 piv = ch(j, j);
      if (piv == 0) continue;
      u64 q = red[j] / piv;
      for (int r = 0; r < 4; ++r) red[r] = R.sub(red[r], R.mul(q, ch(r, j)));
    }
    u64 idx = 0, mul = 1;
    for (int i = 0; i < 4; ++i) {
      u64 m = R.ell_pow(digits[i]);
      idx += (red[i] % m) * mul;
      mul *= m;
    }
    return idx;
  };

  u64 units = 0;
  for (u64 a = 0; a < total; ++a) {
    AlgebraElement xa = element_of(coords_of(a));
    bool unit = false;
    for (u64 b = 0; b < total && !unit; ++b) {
      AlgebraElement xb = element_of(coords_of(b));
      AlgebraElement prod = A.mul(xa, xb);
      if (index_of(prod) == index_of(A.one())) unit = true;
    }
    if (unit) ++units;
  }
  u64 denom = p.norm - 1;
  check(units % denom == 0, "unit count not divisible by the residue units");
  return units / denom;
}

// L_i applied to every member of L_j(Lambda), as a sorted deduplicated set.
inline std::vector<SymplecticLattice> composed_l_neighbors(const SymplecticLattice& L, int first,
                                                           int second) {
  std::set<SymplecticLattice> out;
  for (auto& mid : l_neighbors(L, first))
    for (auto& g : l_neighbors(mid, second)) out.insert(g);
  return std::vector<SymplecticLattice>(out.begin(), out.end());
}

struct OracleCheck {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct OracleReport {
  std::vector<OracleCheck> checks;
  bool all_pass() const {
    for (auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

struct OracleOptions {
  bool fault_skip_isotropy = false;
};

inline std::vector<SplittingSymbol> validated_symbols(u64 ell) {
  std::vector<SplittingSymbol> syms;
  auto kinds = {SplitType::inert, SplitType::split, SplitType::ramified};
  for (auto rs : {SplitType::inert, SplitType::ramified})
    for (auto u1 : kinds) {
      if (ell == 2 && u1 == SplitType::ramified) continue;
      syms.push_back({rs, {u1}});
    }
  for (auto u1 : kinds)
    for (auto u2 : kinds) {
      if (ell == 2 && (u1 == SplitType::ramified || u2 == SplitType::ramified)) continue;
      syms.push_back({SplitType::split, {u1, u2}});
    }
  return syms;
}

// The desk-scale counting-theorem suite: every check pairs the production
// enumeration against an independent brute-force route.
inline OracleReport run_suite(u64 ell, int precision, const OracleOptions& opts = {}) {
  if (ell != 2 && ell != 3) throw InvalidParams("the oracle suite runs at l in {2, 3}");
  OracleReport rep;
  u64 l = ell;

  for (auto& sym : validated_symbols(ell)) {
    auto alg = build_algebra(ell, sym, precision);
    auto sp = build_space(alg);
    auto L = standard_selfdual_lattice(sp);
    FormRef form = make_form(*sp, FormTwist::trivial(*alg));
    std::string tag = "l=" + std::to_string(ell) + " " + sym.str();

    {
      OracleCheck c{"isotropic-plane count [" + tag + "]"};
      auto fast = enumerate_isotropic_planes(L, form);
      auto brute = brute_isotropic_planes(L, form, opts.fault_skip_isotropy);
      std::vector<SubspaceModEll> fs = fast;
      std::sort(fs.begin(), fs.end());
      if (fs.size() != l * l * l + l * l + l + 1 || fs.size() != brute.size()) {
        c.pass = false;
        c.detail = "counts " + std::to_string(fs.size()) + " vs " + std::to_string(brute.size());
      } else {
        for (size_t i = 0; i < fs.size(); ++i)
          if (!(fs[i] == brute[i])) {
            c.pass = false;
            c.detail = "set mismatch";
            break;
          }
      }
      rep.checks.push_back(c);
    }

    {
      OracleCheck c{"l-neighbor partition [" + tag + "]"};
      for (int pi = 0; pi < alg->real_prime_count() && c.pass; ++pi) {
        std::vector<RealIdeal> conductors;
        int np = alg->real_prime_count();
        for (int e = 0; e <= 2; ++e) {
          std::vector<int> v(np, 0);
          v[pi] = e;
          conductors.push_back(RealIdeal(v));
        }
        for (auto& f : conductors) {
          OrderLattice O = order_from_conductor(alg, f);
          SymplecticLattice lat = normalize_lattice(sp, O.basis, 0);
          auto cls = classify_l_neighbors(lat, pi);
          auto brute = brute_l_neighbors(lat, pi);
          std::vector<SymplecticLattice> fast;
          for (auto& n : cls) fast.push_back(n.neighbor);
          std::sort(fast.begin(), fast.end());
          if (fast.size() != alg->real_primes[pi].norm + 1 || fast != brute) {
            c.pass = false;
            c.detail = "neighbor sets differ at conductor " + f.str();
            break;
          }
          int asc = 0, hor = 0, desc = 0;
          for (auto& n : cls) {
            if (n.kind == NeighborKind::l_ascending) ++asc;
            if (n.kind == NeighborKind::l_horizontal) ++hor;
            if (n.kind == NeighborKind::l_descending) ++desc;
          }
          u64 N = alg->real_primes[pi].norm;
          int want_asc, want_hor;
          if (f.exponents[pi] > 0) {
            want_asc = 1;
            want_hor = 0;
          } else {
            want_asc = 0;
            want_hor = alg->real_primes[pi].upper == SplitType::split      ? 2
                       : alg->real_primes[pi].upper == SplitType::ramified ? 1
                                                                           : 0;
          }
          int want_desc = static_cast<int>(N) + 1 - want_asc - want_hor;
          if (asc != want_asc || hor != want_hor || desc != want_desc) {
            c.pass = false;
            c.detail = "partition (" + std::to_string(asc) + "," + std::to_string(hor) + "," +
                       std::to_string(desc) + ") at conductor " + f.str();
            break;
          }
          u64 orbit = unit_quotient_size(alg, f, pi);
          if (orbit != static_cast<u64>(desc)) {
            c.pass = false;
            c.detail = "unit orbit " + std::to_string(orbit) + " vs descending " +
                       std::to_string(desc);
            break;
          }
        }
      }
      rep.checks.push_back(c);
    }

    {
      OracleCheck c{"RM-preserving kernel count [" + tag + "]"};
      auto cls = classify_ll_neighbors(L, form);
      std::set<SymplecticLattice> preserving;
      for (auto& n : cls)
        if (n.kind != NeighborKind::rm_descending) preserving.insert(n.neighbor);
      u64 want = sym.real == SplitType::inert   ? l * l + 1
                 : sym.real == SplitType::split ? (l + 1) * (l + 1)
                                                : l * l + l + 1;
      std::set<SymplecticLattice> route;
      if (sym.real == SplitType::inert) {
        for (auto& g : l_neighbors(L, 0)) route.insert(g);
      } else if (sym.real == SplitType::split) {
        for (auto& g : composed_l_neighbors(L, 1, 0)) route.insert(g);
      } else {
        for (auto& g : composed_l_neighbors(L, 0, 0)) route.insert(g);
      }
      if (preserving.size() != want || preserving != route) {
        c.pass = false;
        c.detail = "preserving " + std::to_string(preserving.size()) + ", route " +
                   std::to_string(route.size());
      }
      rep.checks.push_back(c);
    }

    {
      OracleCheck c{"positive-level kernel split [" + tag + "]"};
      SurfaceState st = make_surface_state(sp);
      auto planes = enumerate_isotropic_planes(st.lattice, st.form());
      for (auto& h : planes) {
        auto cand = scaled_lattice(lattice_from_plane(st.lattice, h), -1);
        if (real_multiplier_order(cand) == 1) {
          st = step_ll(st, h);
          break;
        }
      }
      for (int lvl = 1; lvl <= 2 && c.pass; ++lvl) {
        auto cls = classify_ll_neighbors(st.lattice, st.form());
        int asc = 0, hor = 0, desc = 0;
        for (auto& n : cls) {
          if (n.kind == NeighborKind::rm_ascending) ++asc;
          if (n.kind == NeighborKind::rm_horizontal) ++hor;
          if (n.kind == NeighborKind::rm_descending) ++desc;
        }
        if (asc != 1 || hor != static_cast<int>(l * l + l) || desc != static_cast<int>(l * l * l)) {
          c.pass = false;
          c.detail = "(" + std::to_string(asc) + "," + std::to_string(hor) + "," +
                     std::to_string(desc) + ") at level " + std::to_string(lvl);
        }
        if (lvl == 1) {
          // push one level deeper
          auto planes2 = enumerate_isotropic_planes(st.lattice, st.form());
          for (auto& h : planes2) {
            auto cand = scaled_lattice(lattice_from_plane(st.lattice, h), -1);
            if (real_multiplier_order(cand) == lvl + 1) {
              st = step_ll(st, h);
              break;
            }
          }
        }
      }
      rep.checks.push_back(c);
    }

    if (sym.real == SplitType::split) {
      OracleCheck c{"split-composition commutation [" + tag + "]"};
      auto a = composed_l_neighbors(L, 0, 1);
      auto b = composed_l_neighbors(L, 1, 0);
      if (a != b) {
        c.pass = false;
        c.detail = "composition order changed the set";
      }
      rep.checks.push_back(c);
    }

    if (sym.real == SplitType::ramified) {
      OracleCheck c{"ramified double-step composition [" + tag + "]"};
      auto mids = l_neighbors(L, 0);
      SymplecticLattice shifted = element_image(L, alg->real_primes[0].uniformizer);
      for (size_t i = 0; i < mids.size() && c.pass; ++i)
        for (size_t j = i + 1; j < mids.size() && c.pass; ++j) {
          std::set<SymplecticLattice> a, b, meet;
          for (auto& g : l_neighbors(mids[i], 0)) a.insert(g);
          for (auto& g : l_neighbors(mids[j], 0)) b.insert(g);
          for (auto& g : a)
            if (b.count(g)) meet.insert(g);
          if (meet.size() != 1 || !(*meet.begin() == shifted)) {
            c.pass = false;
            c.detail = "pairwise intersection is not {l Lambda}";
          }
        }
      rep.checks.push_back(c);
    }
  }
  return rep;
}

}  // namespace oracle
}  // namespace isovolc
