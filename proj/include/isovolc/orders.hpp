#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "isovolc/algebra.hpp"

namespace isovolc {

// Ideal of the real maximal order supported above l, as exponents at each
// real prime.
struct RealIdeal {
  std::vector<int> exponents;

  RealIdeal() = default;
  explicit RealIdeal(std::vector<int> e) : exponents(std::move(e)) {}
  static RealIdeal trivial(const LocalCMAlgebra& a) {
    return RealIdeal(std::vector<int>(a.real_primes.size(), 0));
  }

  bool is_trivial() const {
    for (int e : exponents)
      if (e != 0) return false;
    return true;
  }
  bool operator==(const RealIdeal& o) const { return exponents == o.exponents; }
  bool operator!=(const RealIdeal& o) const { return !(*this == o); }
  bool operator<(const RealIdeal& o) const { return exponents < o.exponents; }

  std::string str() const {
    std::string s = "[";
    for (size_t i = 0; i < exponents.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(exponents[i]);
    }
    return s + "]";
  }
};

// A multiplier ring given extensionally as a lattice basis (column normal
// form) in the quartic algebra.
struct OrderLattice {
  std::shared_ptr<const LocalCMAlgebra> algebra;
  ResidueMatrix basis;

  bool operator==(const OrderLattice& o) const { return basis == o.basis; }
};

struct OrderDescriptor {
  int real_level = 0;
  std::optional<RealIdeal> conductor;  // present iff real_level == 0

  bool operator==(const OrderDescriptor& o) const {
    return real_level == o.real_level && conductor == o.conductor;
  }
  bool operator!=(const OrderDescriptor& o) const { return !(*this == o); }

  std::string str() const {
    if (real_level > 0) return "n=" + std::to_string(real_level);
    return "f=" + (conductor ? conductor->str() : std::string("?"));
  }
};

namespace detail {

// Rows of the integral system expressing "x * (each basis vector) lies in
// the lattice": adj(B) * M(v_j) stacked, with det(B) = unit * l^D.
struct MembershipSystem {
  ResidueMatrix rows;  // (4k) x 4
  int det_val = 0;
};

inline MembershipSystem membership_system(const LocalCMAlgebra& alg, const ResidueMatrix& basis) {
  const ResidueRing& R = alg.ring;
  u64 d = det(basis);
  int dv = R.valuation(d);
  if (d == 0 || dv > R.precision - 2) throw PrecisionExhausted("lattice determinant too small");
  u64 unit = R.div_ell_pow(d, dv);
  u64 iu = R.inv(unit);
  ResidueMatrix adj = adjugate(basis).scaled(iu);  // adj*B = l^D * I
  MembershipSystem sys;
  sys.det_val = dv;
  sys.rows = ResidueMatrix(R, 0, 4);
  std::vector<ResidueMatrix> blocks;
  for (int j = 0; j < 4; ++j) {
    AlgebraElement v = alg.element({basis(0, j), basis(1, j), basis(2, j), basis(3, j)});
    blocks.push_back(adj * alg.mult_matrix(v));
  }
  ResidueMatrix stacked(R, 16, 4);
  for (int b = 0; b < 4; ++b)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) stacked(b * 4 + i, j) = blocks[b](i, j);
  sys.rows = stacked;
  return sys;
}

}  // namespace detail

// { x in K_l : x * L <= L } as a lattice basis in column normal form.
inline ResidueMatrix multiplier_lattice(const LocalCMAlgebra& alg, const ResidueMatrix& basis) {
  auto sys = detail::membership_system(alg, basis);
  if (sys.det_val == 0) return ResidueMatrix::identity(alg.ring, 4);
  ResidueMatrix sol = solution_lattice_mod(sys.rows, sys.det_val);
  ResidueMatrix h = normal_form_basis(sol);
  if (alg.ring.valuation(det(h)) > alg.ring.precision - 4)
    throw PrecisionExhausted("multiplier order too deep for the working precision");
  return h;
}

// Real level n with (multiplier of L) intersect K_0 = Z_l + l^n O_0.
inline int real_level_of_lattice(const LocalCMAlgebra& alg, const ResidueMatrix& basis) {
  const ResidueRing& R = alg.ring;
  auto sys = detail::membership_system(alg, basis);
  if (sys.det_val == 0) return 0;
  ResidueMatrix restricted = sys.rows * alg.real_embed;  // unknowns (a, b) for a + b*omega
  ResidueMatrix sol = solution_lattice_mod(restricted, sys.det_val);
  ResidueMatrix h = normal_form_basis(sol);
  // contains (1, 0); the second elementary divisor is l^n
  check(h(0, 0) == 1 && h(0, 1) == 0, "real intersection lattice lost the unit");
  int n = R.valuation(h(1, 1));
  check(n < R.precision, "real intersection degenerate");
  return n;
}

inline bool lattice_is_order(const LocalCMAlgebra& alg, const ResidueMatrix& basis) {
  if (det(basis) == 0) return false;
  if (alg.ring.valuation(det(basis)) > alg.ring.precision - 4)
    throw PrecisionExhausted("closure test needs more headroom than the precision leaves");
  std::vector<u64> one{1, 0, 0, 0};
  if (!lattice_contains(basis, one)) return false;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      AlgebraElement a = alg.element({basis(0, i), basis(1, i), basis(2, i), basis(3, i)});
      AlgebraElement b = alg.element({basis(0, j), basis(1, j), basis(2, j), basis(3, j)});
      AlgebraElement p = alg.mul(a, b);
      if (!lattice_contains(basis, {p.coords[0], p.coords[1], p.coords[2], p.coords[3]}))
        return false;
    }
  return true;
}

// O_0 + f O_K as a lattice, f given by its exponents at the real primes.
inline OrderLattice order_from_conductor(std::shared_ptr<const LocalCMAlgebra> alg,
                                         const RealIdeal& f) {
  const LocalCMAlgebra& A = *alg;
  const ResidueRing& R = A.ring;
  check(f.exponents.size() == A.real_primes.size(), "conductor arity mismatch");
  int total = 0;
  for (int e : f.exponents) {
    if (e < 0) throw InvalidParams("conductor exponents must be >= 0");
    total += e;
  }
  if (total > R.precision - 4)
    throw PrecisionExhausted("conductor exponents too large for working precision");

  AlgebraElement g = A.one();
  for (size_t i = 0; i < A.real_primes.size(); ++i)
    for (int t = 0; t < f.exponents[i]; ++t) g = A.mul(g, A.real_primes[i].uniformizer);

  ResidueMatrix cols(R, 4, 6);
  cols(0, 0) = 1;  // 1
  cols(1, 1) = 1;  // omega
  ResidueMatrix gm = A.mult_matrix(g);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) cols(i, 2 + j) = gm(i, j);
  ResidueMatrix h = normal_form_basis(cols);
  ResidueMatrix b(R, 4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) b(i, j) = h(i, j);

  OrderLattice O{alg, b};
  check(lattice_is_order(A, b), "conductor construction produced a non-order");
  return O;
}

// Largest-real-suborder level, plus the conductor when the real order is
// maximal.  The minimal f with O_0 + f O_K <= O is asserted to reproduce O
// exactly; a mismatch would contradict the classification and is a bug.
inline OrderDescriptor conductor_of_order(const OrderLattice& O) {
  const LocalCMAlgebra& A = *O.algebra;
  if (!lattice_is_order(A, O.basis)) throw NotAnOrder("conductor_of_order: not an order");
  OrderDescriptor d;
  d.real_level = real_level_of_lattice(A, O.basis);
  if (d.real_level > 0) return d;

  int nprimes = static_cast<int>(A.real_primes.size());
  int cap = (A.ring.precision - 4) / nprimes;
  std::vector<int> c(nprimes, 0);
  for (int i = 0; i < nprimes; ++i) {
    int lo = 0;
    // containment is monotone in the exponent; find the smallest that fits
    while (lo <= cap) {
      std::vector<int> probe(nprimes, 0);
      for (int j = 0; j < nprimes; ++j) probe[j] = (j == i) ? lo : cap;
      OrderLattice sub = order_from_conductor(O.algebra, RealIdeal(probe));
      if (lattice_contains_lattice(O.basis, sub.basis)) break;
      ++lo;
    }
    if (lo > cap) throw PrecisionExhausted("conductor exponent exceeds working precision");
    c[i] = lo;
  }
  RealIdeal f(c);
  OrderLattice rebuilt = order_from_conductor(O.algebra, f);
  check(rebuilt.basis == O.basis,
        "order with maximal real multiplication is not of conductor form");
  d.conductor = f;
  return d;
}

inline ResidueMatrix dagger_image(const LocalCMAlgebra& alg, const ResidueMatrix& basis) {
  return normal_form_basis(alg.dagger * basis);
}

// O stable under the involution; cross-checked against the real-trace
// criterion (O cap K0 == (O + O^dagger) cap K0).
inline bool dagger_stable(const OrderLattice& O) {
  const LocalCMAlgebra& A = *O.algebra;
  if (!lattice_is_order(A, O.basis)) throw NotAnOrder("dagger_stable: not an order");
  bool direct = dagger_image(A, O.basis) == normal_form_basis(O.basis);

  // criterion route: compare the real intersections of O and O + O^dagger
  auto real_intersection = [&](const ResidueMatrix& basis) {
    const ResidueRing& R = A.ring;
    u64 d = det(basis);
    int dv = R.valuation(d);
    u64 iu = R.inv(R.div_ell_pow(d, dv));
    ResidueMatrix adj = adjugate(basis).scaled(iu);
    ResidueMatrix restricted = adj * A.real_embed;
    ResidueMatrix sol = solution_lattice_mod(restricted, dv);
    return normal_form_basis(sol);
  };
  ResidueMatrix sum = normal_form_basis(hconcat(O.basis, A.dagger * O.basis));
  ResidueMatrix sum4(A.ring, 4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) sum4(i, j) = sum(i, j);
  bool criterion = real_intersection(O.basis) == real_intersection(sum4);
  check(direct == criterion, "dagger stability criterion disagrees with direct comparison");
  return direct;
}

inline u64 ideal_norm(const LocalCMAlgebra& alg, const RealIdeal& f) {
  u64 n = 1;
  for (size_t i = 0; i < alg.real_primes.size(); ++i)
    for (int t = 0; t < f.exponents[i]; ++t) n *= alg.real_primes[i].norm;
  return n;
}

}  // namespace isovolc
