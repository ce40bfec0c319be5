#pragma once

#include <algorithm>
#include <array>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "isovolc/orders.hpp"

namespace isovolc {

// Ambient symplectic structure: the trace pairing <u,v> = Tr(delta u v+)
// on the model basis.  Antisymmetry, unimodularity and the compatibility
// <x u, v> = <u, x+ v> are asserted at construction.
struct SymplecticSpace {
  std::shared_ptr<const LocalCMAlgebra> algebra;
  ResidueMatrix gram;

  const ResidueRing& ring() const { return algebra->ring; }
};

inline std::shared_ptr<const SymplecticSpace> build_space(
    std::shared_ptr<const LocalCMAlgebra> alg) {
  const LocalCMAlgebra& A = *alg;
  const ResidueRing& R = A.ring;
  auto sp = std::make_shared<SymplecticSpace>();
  sp->algebra = alg;

  // The trace pairing divides by l^delta_den, so compute it in a twin of
  // the same model carrying delta_den extra digits; entries are then exact
  // mod l^N.
  std::shared_ptr<const LocalCMAlgebra> hi = alg;
  if (A.delta_den > 0) {
    AlgebraConfig twin;
    twin.ell = A.ell;
    twin.precision = A.precision + A.delta_den;
    twin.symbol = A.symbol;
    twin.pi = A.pi_coords;
    hi = build_algebra(twin);
    check(hi->delta_den == A.delta_den, "twin algebra model drifted");
  }
  const LocalCMAlgebra& H = *hi;
  ResidueMatrix g(R, 4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      std::array<u64, 4> ei{0, 0, 0, 0}, ej{0, 0, 0, 0};
      ei[i] = 1;
      ej[j] = 1;
      AlgebraElement prod = H.mul(H.delta_scaled, H.mul(H.element(ei), H.conj(H.element(ej))));
      g(i, j) = H.ring.div_ell_pow(H.trace(prod), H.delta_den) % R.modulus;
    }
  sp->gram = g;

  for (int i = 0; i < 4; ++i) {
    check(g(i, i) == 0, "trace pairing is not alternating");
    for (int j = 0; j < 4; ++j) check(g(i, j) == R.neg(g(j, i)), "trace pairing is not antisymmetric");
  }
  if (!R.is_unit(det(g))) throw NotSelfDual("model Gram matrix is not unimodular");
  for (int k = 0; k < 4; ++k) {
    std::array<u64, 4> ek{0, 0, 0, 0};
    ek[k] = 1;
    ResidueMatrix mk = A.mult_matrix(A.element(ek));
    ResidueMatrix mkd = A.mult_matrix(A.conj(A.element(ek)));
    check(mk.transpose() * g == g * mkd, "pairing is not compatible with the involution");
  }
  return sp;
}

// Form multiplier l^ell_exp * prod(u_i^prime_exps[i]) applied to the base
// pairing; negative exponents are carried as an l-power denominator.
struct FormTwist {
  int ell_exp = 0;
  std::vector<int> prime_exps;

  static FormTwist trivial(const LocalCMAlgebra& a) {
    FormTwist t;
    t.prime_exps.assign(a.real_primes.size(), 0);
    return t;
  }
  bool is_trivial() const {
    if (ell_exp != 0) return false;
    for (int e : prime_exps)
      if (e) return false;
    return true;
  }
};

struct FormRef {
  const SymplecticSpace* space = nullptr;
  ResidueMatrix gnum;
  int den_exp = 0;
};

inline FormRef make_form(const SymplecticSpace& sp, const FormTwist& twist) {
  const LocalCMAlgebra& A = *sp.algebra;
  const ResidueRing& R = A.ring;
  FormRef f;
  f.space = &sp;
  if (twist.is_trivial()) {
    f.gnum = sp.gram;
    f.den_exp = 0;
    return f;
  }
  AlgebraElement num = A.one();
  int den = 0;
  if (twist.ell_exp >= 0)
    num = A.scale(R.ell_pow(twist.ell_exp), num);
  else
    den += -twist.ell_exp;
  for (size_t i = 0; i < twist.prime_exps.size(); ++i) {
    int e = twist.prime_exps[i];
    const auto& p = A.real_primes[i];
    if (e >= 0) {
      for (int t = 0; t < e; ++t) num = A.mul(num, p.uniformizer);
    } else {
      // u^-1 = (complementary factor)/l per real splitting type
      for (int t = 0; t < -e; ++t) {
        switch (A.symbol.real) {
          case SplitType::inert:
            den += 1;  // u = l
            break;
          case SplitType::ramified:
            num = A.mul(num, A.omega());
            den += 1;
            break;
          case SplitType::split:
            num = A.mul(num, A.real_primes[1 - i].uniformizer);
            den += 1;
            break;
        }
      }
    }
  }
  f.gnum = A.mult_matrix(num).transpose() * sp.gram;
  f.den_exp = den;
  return f;
}

// Full-rank lattice l^scale_exp * col(basis), basis in column normal form
// with unit content.  Two lattices are equal iff their canonical data match.
struct SymplecticLattice {
  std::shared_ptr<const SymplecticSpace> space;
  ResidueMatrix basis;
  int scale_exp = 0;

  bool operator==(const SymplecticLattice& o) const {
    return basis == o.basis && scale_exp == o.scale_exp;
  }
  bool operator!=(const SymplecticLattice& o) const { return !(*this == o); }
  bool operator<(const SymplecticLattice& o) const {
    if (scale_exp != o.scale_exp) return scale_exp < o.scale_exp;
    return basis.data < o.basis.data;
  }

  // deduplication key ignoring l-power homothety (graph vertices)
  std::string homothety_key() const {
    std::string s;
    for (u64 x : basis.data) s += std::to_string(x) + ",";
    return s;
  }
  std::string exact_key() const { return std::to_string(scale_exp) + ";" + homothety_key(); }
};

inline SymplecticLattice normalize_lattice(std::shared_ptr<const SymplecticSpace> sp,
                                           const ResidueMatrix& raw, int scale) {
  const ResidueRing& R = sp->ring();
  ResidueMatrix pre = raw;
  int c = pre.min_valuation();
  if (c >= R.precision) throw PrecisionExhausted("lattice basis vanished at working precision");
  if (c > 0) pre = pre.shifted(-c);
  ResidueMatrix h = normal_form_basis(pre);
  ResidueMatrix b(R, 4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) b(i, j) = h(i, j);
  u64 d = det(b);
  if (d == 0 || R.valuation(d) > R.precision - 4)
    throw PrecisionExhausted("lattice basis too close to the precision floor");
  int c2 = b.min_valuation();
  if (c2 > 0) b = b.shifted(-c2);
  SymplecticLattice L;
  L.space = std::move(sp);
  L.basis = b;
  L.scale_exp = scale + c + c2;
  return L;
}

inline SymplecticLattice standard_selfdual_lattice(std::shared_ptr<const SymplecticSpace> sp) {
  SymplecticLattice L;
  L.basis = ResidueMatrix::identity(sp->ring(), 4);
  L.scale_exp = 0;
  L.space = std::move(sp);
  return L;
}

inline SymplecticLattice scaled_lattice(const SymplecticLattice& L, int k) {
  SymplecticLattice s = L;
  s.scale_exp += k;
  return s;
}

inline SymplecticLattice dual(const SymplecticLattice& L, const FormRef& form) {
  const ResidueRing& R = L.space->ring();
  ResidueMatrix m = L.basis.transpose() * form.gnum.transpose();
  u64 d = det(m);
  int dv = R.valuation(d);
  if (d == 0 || dv > R.precision - 4) throw PrecisionExhausted("dual: determinant too small");
  u64 iu = R.inv(R.div_ell_pow(d, dv));
  ResidueMatrix raw = adjugate(m).scaled(iu);
  return normalize_lattice(L.space, raw, form.den_exp - L.scale_exp - dv);
}

inline SymplecticLattice dual(const SymplecticLattice& L) {
  FormRef f;
  f.space = L.space.get();
  f.gnum = L.space->gram;
  f.den_exp = 0;
  return dual(L, f);
}

inline SymplecticLattice lattice_sum(const SymplecticLattice& a, const SymplecticLattice& b) {
  int s = std::min(a.scale_exp, b.scale_exp);
  ResidueMatrix wide = hconcat(a.basis.shifted(a.scale_exp - s), b.basis.shifted(b.scale_exp - s));
  return normalize_lattice(a.space, wide, s);
}

inline SymplecticLattice lattice_intersect(const SymplecticLattice& a, const SymplecticLattice& b) {
  // (A cap B)* = A* + B* for any fixed nondegenerate pairing
  SymplecticLattice da = dual(a), db = dual(b);
  return dual(lattice_sum(da, db));
}

inline bool lattice_subset(const SymplecticLattice& a, const SymplecticLattice& b) {
  // a <= b
  int s = std::min(a.scale_exp, b.scale_exp);
  ResidueMatrix ba = a.basis.shifted(a.scale_exp - s);
  ResidueMatrix bb = b.basis.shifted(b.scale_exp - s);
  return lattice_contains_lattice(normal_form_basis(bb), ba);
}

inline OrderLattice multiplier_order(const SymplecticLattice& L) {
  return OrderLattice{L.space->algebra, multiplier_lattice(*L.space->algebra, L.basis)};
}

inline int real_multiplier_order(const SymplecticLattice& L) {
  return real_level_of_lattice(*L.space->algebra, L.basis);
}

// Unimodular Gram of the lattice basis for the (possibly twisted) pairing,
// reduced mod l.  Fails with NotSelfDual when no l-power rescaling of the
// form makes the lattice self-dual.
inline ResidueMatrix reduced_symplectic_gram(const SymplecticLattice& L, const FormRef& form) {
  const ResidueRing& R = L.space->ring();
  ResidueMatrix x = L.basis.transpose() * form.gnum * L.basis;
  int v = x.min_valuation();
  if (v >= R.precision) throw NotSelfDual("degenerate pairing on lattice");
  ResidueMatrix eff = x.shifted(-v);
  if (!R.is_unit(det(eff))) throw NotSelfDual("lattice is not self-dual up to scale");
  ResidueMatrix w(R, 4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) w(i, j) = eff(i, j) % R.ell;
  return w;
}

inline bool is_selfdual_up_to_scale(const SymplecticLattice& L, const FormRef& form) {
  try {
    reduced_symplectic_gram(L, form);
    return true;
  } catch (const NotSelfDual&) {
    return false;
  }
}

// F_l planes in Lambda/l Lambda, stored as canonical reduced row echelon
// generators in basis coordinates.
struct SubspaceModEll {
  SymplecticLattice lattice;
  std::array<std::array<u64, 4>, 2> generators{};
  int dim = 2;

  bool operator==(const SubspaceModEll& o) const { return generators == o.generators; }
  bool operator<(const SubspaceModEll& o) const { return generators < o.generators; }
};

namespace detail {

inline std::optional<std::array<std::array<u64, 4>, 2>> rref_plane(u64 l,
                                                                   std::array<u64, 4> a,
                                                                   std::array<u64, 4> b) {
  auto invp = [&](u64 x) {
    for (u64 y = 1; y < l; ++y)
      if ((x * y) % l == 1) return y;
    throw AssertionFailure("inverse mod l");
  };
  std::array<std::array<u64, 4>, 2> m{a, b};
  int r = 0;
  for (int c = 0; c < 4 && r < 2; ++c) {
    int pr = -1;
    for (int i = r; i < 2; ++i)
      if (m[i][c] % l != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    std::swap(m[r], m[pr]);
    u64 iv = invp(m[r][c] % l);
    for (int j = 0; j < 4; ++j) m[r][j] = (m[r][j] * iv) % l;
    for (int i = 0; i < 2; ++i) {
      if (i == r) continue;
      u64 f = m[i][c] % l;
      if (!f) continue;
      for (int j = 0; j < 4; ++j) m[i][j] = (m[i][j] + (l - f) * m[r][j]) % l;
    }
    ++r;
  }
  if (r != 2) return std::nullopt;
  return m;
}

inline std::vector<std::array<u64, 4>> projective_line_reps(u64 l) {
  std::vector<std::array<u64, 4>> reps;
  for (int lead = 0; lead < 4; ++lead) {
    std::array<u64, 4> v{0, 0, 0, 0};
    v[lead] = 1;
    // free coordinates after the leading 1
    int nfree = 3 - lead;
    u64 count = 1;
    for (int i = 0; i < nfree; ++i) count *= l;
    for (u64 t = 0; t < count; ++t) {
      u64 x = t;
      for (int i = lead + 1; i < 4; ++i) {
        v[i] = x % l;
        x /= l;
      }
      reps.push_back(v);
    }
  }
  return reps;
}

}  // namespace detail

// All maximal isotropic planes of Lambda/l Lambda: for each line, the l+1
// planes between the line and its perp.  Count asserted against
// l^3 + l^2 + l + 1.
inline std::vector<SubspaceModEll> enumerate_isotropic_planes(const SymplecticLattice& L,
                                                              const FormRef& form) {
  const ResidueRing& R = L.space->ring();
  u64 l = R.ell;
  ResidueMatrix w = reduced_symplectic_gram(L, form);

  std::set<std::array<std::array<u64, 4>, 2>> seen;
  for (auto& v : detail::projective_line_reps(l)) {
    // perp of v: kernel of the single row v^T W mod l
    ResidueMatrix row(R, 1, 4);
    for (int j = 0; j < 4; ++j) {
      u64 acc = 0;
      for (int i = 0; i < 4; ++i) acc = (acc + v[i] * w(i, j)) % l;
      row(0, j) = acc;
    }
    ResidueMatrix ker = kernel_mod_ell(row);
    check(ker.cols == 3, "perp of a line must have dimension 3");
    // planes spanned by v and any vector of perp outside the line
    u64 l3 = l * l * l;
    for (u64 t = 1; t < l3; ++t) {
      u64 x = t;
      std::array<u64, 4> u{0, 0, 0, 0};
      for (int c = 0; c < 3; ++c) {
        u64 coef = x % l;
        x /= l;
        if (!coef) continue;
        for (int i = 0; i < 4; ++i) u[i] = (u[i] + coef * ker(i, c)) % l;
      }
      auto plane = detail::rref_plane(l, v, u);
      if (plane) seen.insert(*plane);
    }
  }
  u64 expect = l * l * l + l * l + l + 1;
  check(seen.size() == expect, "isotropic plane count mismatch");
  std::vector<SubspaceModEll> out;
  for (auto& g : seen) out.push_back(SubspaceModEll{L, g, 2});
  return out;
}

inline std::vector<SubspaceModEll> enumerate_isotropic_planes(const SymplecticLattice& L) {
  return enumerate_isotropic_planes(L, make_form(*L.space, FormTwist::trivial(*L.space->algebra)));
}

// Lattice attached to a plane H: l*Lambda + (lifted generators).
inline SymplecticLattice lattice_from_plane(const SymplecticLattice& L, const SubspaceModEll& h) {
  const ResidueRing& R = L.space->ring();
  ResidueMatrix cols(R, 4, 6);
  for (int g = 0; g < 2; ++g) {
    std::vector<u64> w(4);
    for (int i = 0; i < 4; ++i) w[i] = h.generators[g][i];
    std::vector<u64> x = L.basis.apply(w);
    for (int i = 0; i < 4; ++i) cols(i, g) = x[i];
  }
  ResidueMatrix lb = L.basis.shifted(1);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) cols(i, 2 + j) = lb(i, j);
  return normalize_lattice(L.space, cols, L.scale_exp);
}

inline std::vector<SymplecticLattice> ll_neighbors(const SymplecticLattice& L,
                                                   const FormRef& form) {
  auto planes = enumerate_isotropic_planes(L, form);
  std::vector<SymplecticLattice> out;
  out.reserve(planes.size());
  for (auto& h : planes) out.push_back(lattice_from_plane(L, h));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<SymplecticLattice> ll_neighbors(const SymplecticLattice& L) {
  return ll_neighbors(L, make_form(*L.space, FormTwist::trivial(*L.space->algebra)));
}

// Sublattice u * Lambda for an algebra element u.
inline SymplecticLattice element_image(const SymplecticLattice& L, const AlgebraElement& x) {
  return normalize_lattice(L.space, L.space->algebra->mult_matrix(x) * L.basis, L.scale_exp);
}

// The N(l_i)+1 neighbors through lines of Lambda/l_i Lambda over the real
// residue field.  Requires maximal real multiplication.
inline std::vector<SymplecticLattice> l_neighbors(const SymplecticLattice& L, int prime_index) {
  const LocalCMAlgebra& A = *L.space->algebra;
  const ResidueRing& R = A.ring;
  if (real_multiplier_order(L) != 0)
    throw MaxRMRequired("l-neighbors are defined only at maximal real multiplication");
  const auto& p = A.real_primes.at(prime_index);
  ResidueMatrix ub = A.mult_matrix(p.uniformizer) * L.basis;

  // quotient representatives in basis coordinates
  u64 d = det(L.basis);
  int dv = R.valuation(d);
  u64 iu = R.inv(R.div_ell_pow(d, dv));
  ResidueMatrix cmat = (adjugate(L.basis).scaled(iu) * ub).shifted(-dv);
  ResidueMatrix ch = normal_form_basis(cmat);
  std::array<int, 4> digits{};
  for (int i = 0; i < 4; ++i) {
    digits[i] = R.valuation(ch(i, i));
    check(digits[i] < R.precision, "degenerate quotient in l-neighbor enumeration");
  }
  ResidueMatrix omega_mat = A.mult_matrix(A.omega());

  std::set<SymplecticLattice> found;
  u64 total = 1;
  for (int i = 0; i < 4; ++i) total *= R.ell_pow(digits[i]);
  for (u64 t = 1; t < total; ++t) {
    u64 x = t;
    std::vector<u64> y(4, 0);
    for (int i = 0; i < 4; ++i) {
      u64 m = R.ell_pow(digits[i]);
      y[i] = x % m;
      x /= m;
    }
    std::vector<u64> w = L.basis.apply(y);
    std::vector<u64> ww = omega_mat.apply(w);
    ResidueMatrix cols(R, 4, 6);
    for (int i = 0; i < 4; ++i) {
      cols(i, 0) = w[i];
      cols(i, 1) = ww[i];
      for (int j = 0; j < 4; ++j) cols(i, 2 + j) = ub(i, j);
    }
    found.insert(normalize_lattice(L.space, cols, L.scale_exp));
  }
  check(found.size() == p.norm + 1, "l-neighbor count differs from N(l)+1");
  return std::vector<SymplecticLattice>(found.begin(), found.end());
}

enum class NeighborKind {
  l_ascending,
  l_descending,
  l_horizontal,
  rm_ascending,
  rm_horizontal,
  rm_descending,
};

inline std::string to_string(NeighborKind k) {
  switch (k) {
    case NeighborKind::l_ascending: return "l-ascending";
    case NeighborKind::l_descending: return "l-descending";
    case NeighborKind::l_horizontal: return "l-horizontal";
    case NeighborKind::rm_ascending: return "rm-ascending";
    case NeighborKind::rm_horizontal: return "rm-horizontal";
    case NeighborKind::rm_descending: return "rm-descending";
  }
  return "?";
}

struct NeighborClassification {
  SymplecticLattice neighbor;
  NeighborKind kind;
  OrderDescriptor resulting_order;
};

inline OrderDescriptor lattice_order_descriptor(const SymplecticLattice& L) {
  OrderLattice O = multiplier_order(L);
  return conductor_of_order(O);
}

inline std::vector<NeighborClassification> classify_l_neighbors(const SymplecticLattice& L,
                                                                int prime_index) {
  OrderDescriptor src = lattice_order_descriptor(L);
  check(src.real_level == 0, "classify_l_neighbors requires maximal real multiplication");
  std::vector<NeighborClassification> out;
  for (auto& nb : l_neighbors(L, prime_index)) {
    OrderDescriptor d = lattice_order_descriptor(nb);
    check(d.real_level == 0, "l-neighbor left the maximal-real-multiplication stratum");
    for (size_t i = 0; i < d.conductor->exponents.size(); ++i)
      if (static_cast<int>(i) != prime_index)
        check(d.conductor->exponents[i] == src.conductor->exponents[i],
              "l-neighbor changed the conductor away from its prime");
    int dv = d.conductor->exponents[prime_index];
    int sv = src.conductor->exponents[prime_index];
    NeighborKind k = dv < sv   ? NeighborKind::l_ascending
                     : dv > sv ? NeighborKind::l_descending
                               : NeighborKind::l_horizontal;
    check(std::abs(dv - sv) <= 1, "l-neighbor moved the conductor by more than one step");
    out.push_back({nb, k, d});
  }
  return out;
}

inline std::vector<NeighborClassification> classify_ll_neighbors(const SymplecticLattice& L,
                                                                 const FormRef& form) {
  int n = real_multiplier_order(L);
  std::vector<NeighborClassification> out;
  for (auto& nb : ll_neighbors(L, form)) {
    int m = real_multiplier_order(nb);
    check(std::abs(m - n) <= 1, "(l,l)-neighbor moved the real level by more than one");
    NeighborKind k = m < n   ? NeighborKind::rm_ascending
                     : m > n ? NeighborKind::rm_descending
                             : NeighborKind::rm_horizontal;
    OrderDescriptor d;
    if (m == 0)
      d = lattice_order_descriptor(nb);
    else
      d.real_level = m;
    out.push_back({nb, k, d});
  }
  return out;
}

inline std::vector<NeighborClassification> classify_ll_neighbors(const SymplecticLattice& L) {
  return classify_ll_neighbors(L, make_form(*L.space, FormTwist::trivial(*L.space->algebra)));
}

// l * O_{n-1} * Lambda: the unique neighbor raising the real level.
inline SymplecticLattice rm_predecessor(const SymplecticLattice& L) {
  const LocalCMAlgebra& A = *L.space->algebra;
  const ResidueRing& R = A.ring;
  int n = real_multiplier_order(L);
  if (n == 0) throw AlreadyMaxRM("lattice already has maximal real multiplication");
  AlgebraElement gen = A.real_element(0, R.ell_pow(n - 1));  // l^{n-1} omega
  ResidueMatrix cols = hconcat(L.basis, A.mult_matrix(gen) * L.basis);
  return normalize_lattice(L.space, cols, L.scale_exp + 1);
}

// The unique ascending l-neighbor l * O_{l^-1 f} * Lambda.
inline SymplecticLattice l_predecessor(const SymplecticLattice& L, int prime_index) {
  const LocalCMAlgebra& A = *L.space->algebra;
  OrderDescriptor d = lattice_order_descriptor(L);
  if (d.real_level != 0) throw MaxRMRequired("l-predecessor requires maximal real multiplication");
  RealIdeal f = *d.conductor;
  if (f.exponents.at(prime_index) == 0)
    throw NoAscendingNeighbor("the prime does not divide the conductor");
  f.exponents[prime_index] -= 1;
  OrderLattice up = order_from_conductor(L.space->algebra, f);
  ResidueMatrix cols(A.ring, 4, 16);
  for (int j = 0; j < 4; ++j) {
    AlgebraElement b = A.element({up.basis(0, j), up.basis(1, j), up.basis(2, j), up.basis(3, j)});
    ResidueMatrix img = A.mult_matrix(b) * L.basis;
    for (int i = 0; i < 4; ++i)
      for (int c = 0; c < 4; ++c) cols(i, 4 * j + c) = img(i, c);
  }
  SymplecticLattice span = normalize_lattice(L.space, cols, L.scale_exp);
  return element_image(span, A.real_primes[prime_index].uniformizer);
}

inline bool frobenius_stable(const SymplecticLattice& L, int n) {
  const LocalCMAlgebra& A = *L.space->algebra;
  if (!A.frobenius) throw NoFrobeniusConfigured("algebra carries no Frobenius element");
  ResidueMatrix img = L.basis;
  ResidueMatrix pim = A.mult_matrix(*A.frobenius);
  for (int i = 0; i < n; ++i) img = pim * img;
  return lattice_contains_lattice(L.basis, img);
}

inline std::string lattice_to_json(const SymplecticLattice& L) {
  std::string s = "{\"scale_exp\":" + std::to_string(L.scale_exp) + ",\"basis\":[";
  for (int i = 0; i < 4; ++i) {
    if (i) s += ",";
    s += "[";
    for (int j = 0; j < 4; ++j) {
      if (j) s += ",";
      s += std::to_string(L.basis(i, j));
    }
    s += "]";
  }
  return s + "]}";
}

}  // namespace isovolc
