#pragma once

#include <sstream>

#include "isovolc/symplectic.hpp"

namespace isovolc {

// A principally polarized surface in the lattice model: a lattice that is
// self-dual for the base pairing multiplied by l^ell_exp * prod u_i^e_i.
// Every (l,l)-step rescales the form by l, keeping the invariant.
struct SurfaceState {
  SymplecticLattice lattice;
  FormTwist twist;
  int precision_budget = 0;

  FormRef form() const { return make_form(*lattice.space, twist); }
};

inline SurfaceState make_surface_state(std::shared_ptr<const SymplecticSpace> sp) {
  SurfaceState s;
  s.lattice = standard_selfdual_lattice(sp);
  s.twist = FormTwist::trivial(*sp->algebra);
  s.precision_budget = sp->ring().precision - 4;
  check(dual(s.lattice, s.form()) == s.lattice, "standard state is not self-dual");
  return s;
}

// State with multiplier order O_0 + f O_K.  The order lattice is self-dual
// for the pairing twisted by the inverse of the conductor generator, which
// realizes every parity class in the model.
inline SurfaceState surface_state_from_conductor(std::shared_ptr<const SymplecticSpace> sp,
                                                 const RealIdeal& f) {
  OrderLattice O = order_from_conductor(sp->algebra, f);
  SurfaceState s;
  s.lattice = normalize_lattice(sp, O.basis, 0);
  s.twist = FormTwist::trivial(*sp->algebra);
  for (size_t i = 0; i < f.exponents.size(); ++i) s.twist.prime_exps[i] = -f.exponents[i];
  s.precision_budget = sp->ring().precision - 4;
  int total = 0;
  for (int e : f.exponents) total += e;
  s.precision_budget -= 2 * total;
  if (s.precision_budget <= 0) throw PrecisionExhausted("conductor too deep for the precision");
  if (dual(s.lattice, s.form()) != s.lattice)
    throw NotSelfDual("conductor state failed the self-duality assertion");
  return s;
}

struct Obstruction {
  int n0 = 0;
  std::vector<int> nl;
};

// e - max{eps : beta * Lambda <= l^eps Lambda}, computed on the lattice and
// cross-checked against the real level of the multiplier order; the two
// must agree (an l-adic restatement of the conductor-valuation identity).
inline int obstruction_n0(const SurfaceState& s, const AlgebraElement& beta, int e) {
  const LocalCMAlgebra& A = *s.lattice.space->algebra;
  const ResidueRing& R = A.ring;
  const ResidueMatrix& B = s.lattice.basis;
  u64 d = det(B);
  int dv = R.valuation(d);
  u64 iu = R.inv(R.div_ell_pow(d, dv));
  ResidueMatrix num = (adjugate(B).scaled(iu) * A.mult_matrix(beta)) * B;
  ResidueMatrix y = num.shifted(-dv);  // integral because beta*Lambda <= Lambda for e >= n
  int eps = y.min_valuation();
  int torsion_route = e - std::min(e, eps);
  int order_route = real_multiplier_order(s.lattice);
  check(torsion_route == order_route,
        "torsion obstruction disagrees with the conductor valuation");
  return torsion_route;
}

inline AlgebraElement default_beta(const LocalCMAlgebra& A, int e) {
  return A.real_element(0, A.ring.ell_pow(e));  // l^e * omega
}

inline int obstruction_n0(const SurfaceState& s, int e) {
  return obstruction_n0(s, default_beta(*s.lattice.space->algebra, e), e);
}

// Conductor valuation at the given real prime; defined at maximal real
// multiplication only.
inline int obstruction_nl(const SurfaceState& s, int prime_index) {
  OrderDescriptor d = lattice_order_descriptor(s.lattice);
  if (d.real_level != 0)
    throw MaxRMRequired("the prime obstruction is defined at maximal real multiplication");
  return d.conductor->exponents.at(prime_index);
}

inline SurfaceState step_ll(const SurfaceState& s, const SubspaceModEll& plane) {
  if (s.precision_budget <= 0) throw PrecisionExhausted("no precision budget left for a step");
  // membership: the plane must be one of the isotropic planes of the state
  {
    auto planes = enumerate_isotropic_planes(s.lattice, s.form());
    bool found = false;
    for (auto& h : planes)
      if (h.generators == plane.generators) found = true;
    if (!found) throw NotIsotropic("plane is not isotropic for the current state");
  }
  SurfaceState next = s;
  next.lattice = scaled_lattice(lattice_from_plane(s.lattice, plane), -1);
  next.twist.ell_exp += 1;
  next.precision_budget -= 1;
  // (L, l^2 * form) and (l*L, form) are the same polarized state; keep the
  // exponent bounded so precision does not leak into the Gram numerator
  if (next.twist.ell_exp >= 2) {
    int a = next.twist.ell_exp / 2;
    next.twist.ell_exp -= 2 * a;
    next.lattice = scaled_lattice(next.lattice, a);
  }
  check(dual(next.lattice, next.form()) == next.lattice, "step broke self-duality");
  return next;
}

namespace detail {

// beta(A[l^m]) as a lattice: l^-m * (beta Lambda + l^m Lambda).
inline SymplecticLattice beta_torsion_image(const SurfaceState& s, const AlgebraElement& beta,
                                            int m) {
  const LocalCMAlgebra& A = *s.lattice.space->algebra;
  ResidueMatrix cols = hconcat(A.mult_matrix(beta) * s.lattice.basis, s.lattice.basis.shifted(m));
  return normalize_lattice(s.lattice.space, cols, s.lattice.scale_exp - m);
}

inline bool plane_meets_beta_image(const SurfaceState& s, const SubspaceModEll& plane,
                                   const SymplecticLattice& image) {
  SymplecticLattice kernel = scaled_lattice(lattice_from_plane(s.lattice, plane), -1);
  SymplecticLattice meet = lattice_intersect(kernel, image);
  // both contain Lambda; a nontrivial intersection of the subgroups means
  // the meet properly contains Lambda
  return meet != s.lattice;
}

}  // namespace detail

struct PathStep {
  std::string step;  // "ll" or "cyclic"
  std::array<std::array<u64, 4>, 2> plane{};
  int n0 = 0;
  std::vector<int> nl;
};

inline std::vector<int> conductor_or_empty(const SurfaceState& s) {
  OrderDescriptor d = lattice_order_descriptor(s.lattice);
  if (d.real_level != 0) return {};
  return d.conductor->exponents;
}

inline PathStep record_step(const SurfaceState& s, const std::string& kind,
                            const std::array<std::array<u64, 4>, 2>& plane) {
  PathStep p;
  p.step = kind;
  p.plane = plane;
  p.n0 = real_multiplier_order(s.lattice);
  p.nl = conductor_or_empty(s);
  return p;
}

// Algorithm: while the real level is positive, scan the isotropic planes
// filtered by the beta-torsion condition and take the first step that
// strictly decreases the obstruction.  The filter provably keeps the unique
// ascending plane; if a model ever produced an empty filtered scan, the
// unfiltered list is retried before declaring a bug.
inline SurfaceState surface_to_max_rm(SurfaceState s, const AlgebraElement& beta, int e,
                                      std::vector<PathStep>* path = nullptr,
                                      bool* filter_fallback = nullptr) {
  while (true) {
    int n0 = obstruction_n0(s, beta, e);
    if (n0 == 0) return s;
    auto planes = enumerate_isotropic_planes(s.lattice, s.form());
    SymplecticLattice image = detail::beta_torsion_image(s, beta, e - n0 + 1);
    bool advanced = false;
    for (int pass = 0; pass < 2 && !advanced; ++pass) {
      for (auto& h : planes) {
        if (pass == 0 && !detail::plane_meets_beta_image(s, h, image)) continue;
        SurfaceState cand = step_ll(s, h);
        if (obstruction_n0(cand, beta, e) < n0) {
          if (path) path->push_back(record_step(cand, "ll", h.generators));
          s = cand;
          advanced = true;
          break;
        }
      }
      if (!advanced && pass == 0 && filter_fallback) *filter_fallback = true;
    }
    if (!advanced)
      throw NoDecreasingNeighbor("no (l,l)-step decreases the real obstruction");
  }
}

inline SurfaceState surface_to_max_rm(SurfaceState s, int e, std::vector<PathStep>* path = nullptr) {
  return surface_to_max_rm(std::move(s), default_beta(*s.lattice.space->algebra, e), e, path);
}

namespace detail {

// First (l,l)-step whose target has maximal real multiplication and the
// requested conductor exponents; nullopt when none exists.
inline std::optional<SurfaceState> step_to_conductor(const SurfaceState& s,
                                                     const std::vector<int>& want,
                                                     std::vector<PathStep>* path) {
  auto planes = enumerate_isotropic_planes(s.lattice, s.form());
  for (auto& h : planes) {
    SurfaceState cand = step_ll(s, h);
    if (real_multiplier_order(cand.lattice) != 0) continue;
    OrderDescriptor d = lattice_order_descriptor(cand.lattice);
    if (d.conductor->exponents == want) {
      if (path) path->push_back(record_step(cand, "ll", h.generators));
      return cand;
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Split-case navigation: rebalance the two conductor exponents to within
// one, strip the common part, then attempt the final unbalanced step.
inline SurfaceState navigate_split(SurfaceState s, std::vector<PathStep>* path = nullptr) {
  const LocalCMAlgebra& A = *s.lattice.space->algebra;
  check(A.symbol.real == SplitType::split, "split navigation needs a split real prime");
  if (real_multiplier_order(s.lattice) != 0)
    throw MaxRMRequired("navigate_split runs after surfacing");

  while (true) {
    std::vector<int> f = conductor_or_empty(s);
    int n1 = f[0], n2 = f[1];
    if (n1 == 0 && n2 == 0) return s;
    if (std::abs(n1 - n2) > 1) {
      int hi = n1 >= n2 ? 0 : 1;
      std::vector<int> want = f;
      want[hi] -= 1;
      want[1 - hi] += 1;
      auto next = detail::step_to_conductor(s, want, path);
      check(next.has_value(), "rebalancing step missing");
      s = *next;
      continue;
    }
    if (std::min(n1, n2) > 0) {
      std::vector<int> want = {n1 - 1, n2 - 1};
      auto next = detail::step_to_conductor(s, want, path);
      check(next.has_value(), "common-divisor descent step missing");
      s = *next;
      continue;
    }
    // exponents are (1,0) or (0,1): the direct finish exists iff the
    // exponent-zero prime is not inert; otherwise move the obstruction to
    // the other prime, which can finish unless it is inert too
    auto next = detail::step_to_conductor(s, {0, 0}, path);
    if (next) return *next;
    int hi = f[0] == 1 ? 0 : 1;
    check(A.real_primes[1 - hi].upper == SplitType::inert,
          "finishing step missing although the opposite prime is not inert");
    if (A.real_primes[hi].upper == SplitType::inert) return s;  // both inert: stuck
    std::vector<int> swapped(2, 0);
    swapped[1 - hi] = 1;
    auto sw = detail::step_to_conductor(s, swapped, path);
    check(sw.has_value(), "obstruction transfer step missing");
    auto fin = detail::step_to_conductor(*sw, {0, 0}, path);
    check(fin.has_value(), "transfer finish missing although the prime is not inert");
    return *fin;
  }
}

struct Parity {
  int bit = 0;
};

// Iterate the RM-predecessor to the maximal real level, then read the
// square class of the norm of the conductor.
inline Parity parity(const SurfaceState& state) {
  SurfaceState s = state;
  while (real_multiplier_order(s.lattice) > 0) {
    auto planes = enumerate_isotropic_planes(s.lattice, s.form());
    SymplecticLattice up = rm_predecessor(s.lattice);
    bool advanced = false;
    for (auto& h : planes) {
      SymplecticLattice cand = lattice_from_plane(s.lattice, h);
      if (cand == up) {
        s = step_ll(s, h);
        advanced = true;
        break;
      }
    }
    check(advanced, "RM-predecessor is not among the (l,l)-neighbors");
  }
  const LocalCMAlgebra& A = *s.lattice.space->algebra;
  std::vector<int> f = conductor_or_empty(s);
  int e = 0;
  for (size_t i = 0; i < f.size(); ++i) e += f[i] * A.real_primes[i].residue_degree;
  Parity p;
  p.bit = e % 2;
  return p;
}

struct GoingUpOptions {
  bool allow_cyclic = false;
  bool l_principal_narrow = false;
  int beta_exponent = -1;  // -1: derive from the state
};

struct ReachabilityReport {
  bool reachable_max = false;
  std::vector<OrderDescriptor> largest_orders;
  std::string exceptional_case;  // "", "split-both-inert", "ramified-inert"
  std::vector<PathStep> path;
  bool used_cyclic = false;
  bool filter_fallback = false;

  std::string to_json() const {
    std::ostringstream o;
    o << "{\"reachable_max\":" << (reachable_max ? "true" : "false");
    o << ",\"exceptional\":";
    if (exceptional_case.empty())
      o << "null";
    else
      o << "\"" << exceptional_case << "\"";
    o << ",\"largest_orders\":[";
    for (size_t i = 0; i < largest_orders.size(); ++i) {
      if (i) o << ",";
      o << "\"" << largest_orders[i].str() << "\"";
    }
    o << "],\"path\":[";
    for (size_t i = 0; i < path.size(); ++i) {
      if (i) o << ",";
      o << "{\"step\":\"" << path[i].step << "\",\"plane\":[";
      for (int r = 0; r < 2; ++r) {
        if (r) o << ",";
        o << "[";
        for (int c = 0; c < 4; ++c) {
          if (c) o << ",";
          o << path[i].plane[r][c];
        }
        o << "]";
      }
      o << "],\"n0\":" << path[i].n0 << ",\"nl\":{";
      for (size_t j = 0; j < path[i].nl.size(); ++j) {
        if (j) o << ",";
        o << "\"" << j << "\":" << path[i].nl[j];
      }
      o << "}}";
    }
    o << "]}";
    return o.str();
  }
};

inline OrderDescriptor descriptor_for_conductor(const LocalCMAlgebra& A, std::vector<int> exps) {
  OrderDescriptor d;
  d.real_level = 0;
  d.conductor = RealIdeal(std::move(exps));
  (void)A;
  return d;
}

// The full pipeline: surface to maximal real multiplication, navigate the
// conductor down by symbol, and optionally finish through one ascending
// cyclic step when the (l,l)-graph alone cannot reach the maximal order.
inline ReachabilityReport going_up(SurfaceState s, const GoingUpOptions& opts = {}) {
  const LocalCMAlgebra& A = *s.lattice.space->algebra;
  ReachabilityReport rep;

  int n0 = real_multiplier_order(s.lattice);
  int e = opts.beta_exponent >= 0 ? opts.beta_exponent : n0 + 2;
  check(e >= n0, "beta exponent below the real level");
  s = surface_to_max_rm(std::move(s), default_beta(A, e), e, &rep.path, &rep.filter_fallback);

  auto finish_max = [&](const SurfaceState& st) {
    rep.reachable_max = true;
    rep.largest_orders = {lattice_order_descriptor(st.lattice)};
  };

  switch (A.symbol.real) {
    case SplitType::inert: {
      while (true) {
        std::vector<int> f = conductor_or_empty(s);
        if (f[0] == 0) break;
        auto next = detail::step_to_conductor(s, {f[0] - 1}, &rep.path);
        check(next.has_value(), "inert descent step missing");
        s = *next;
      }
      finish_max(s);
      break;
    }
    case SplitType::ramified: {
      while (true) {
        std::vector<int> f = conductor_or_empty(s);
        if (f[0] >= 2) {
          auto next = detail::step_to_conductor(s, {f[0] - 2}, &rep.path);
          check(next.has_value(), "ramified double-descent step missing");
          s = *next;
          continue;
        }
        if (f[0] == 0) {
          finish_max(s);
          break;
        }
        // exponent 1: a finishing step exists iff the prime is not inert above
        auto next = detail::step_to_conductor(s, {0}, &rep.path);
        if (next) {
          finish_max(*next);
          break;
        }
        check(A.real_primes[0].upper == SplitType::inert,
              "finishing step missing although the prime is not inert");
        if (opts.allow_cyclic && opts.l_principal_narrow) {
          SymplecticLattice up = l_predecessor(s.lattice, 0);
          rep.path.push_back(PathStep{"cyclic", {}, 0, {}});
          rep.used_cyclic = true;
          OrderDescriptor d = lattice_order_descriptor(up);
          check(d.conductor && d.conductor->is_trivial(), "cyclic step missed the maximal order");
          rep.reachable_max = true;
          rep.largest_orders = {d};
        } else {
          rep.reachable_max = false;
          rep.exceptional_case = "ramified-inert";
          rep.largest_orders = {descriptor_for_conductor(A, {1})};
        }
        break;
      }
      break;
    }
    case SplitType::split: {
      s = navigate_split(std::move(s), &rep.path);
      std::vector<int> f = conductor_or_empty(s);
      if (f[0] == 0 && f[1] == 0) {
        finish_max(s);
        break;
      }
      check(f[0] + f[1] == 1, "split navigation halted away from the boundary");
      check(A.real_primes[0].upper == SplitType::inert &&
                A.real_primes[1].upper == SplitType::inert,
            "split navigation stuck although an upper prime splits or ramifies");
      if (opts.allow_cyclic && opts.l_principal_narrow) {
        int idx = f[0] == 1 ? 0 : 1;
        SymplecticLattice up = l_predecessor(s.lattice, idx);
        rep.path.push_back(PathStep{"cyclic", {}, 0, {}});
        rep.used_cyclic = true;
        OrderDescriptor d = lattice_order_descriptor(up);
        check(d.conductor && d.conductor->is_trivial(), "cyclic step missed the maximal order");
        rep.reachable_max = true;
        rep.largest_orders = {d};
      } else {
        rep.reachable_max = false;
        rep.exceptional_case = "split-both-inert";
        rep.largest_orders = {descriptor_for_conductor(A, {1, 0}),
                              descriptor_for_conductor(A, {0, 1})};
      }
      break;
    }
  }
  return rep;
}

}  // namespace isovolc
