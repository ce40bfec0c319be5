#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "isovolc/matrix.hpp"

namespace isovolc {

enum class SplitType { inert, split, ramified };

inline std::string to_string(SplitType t) {
  switch (t) {
    case SplitType::inert: return "inert";
    case SplitType::split: return "split";
    case SplitType::ramified: return "ramified";
  }
  return "?";
}

inline SplitType split_type_from_string(const std::string& s) {
  if (s == "inert") return SplitType::inert;
  if (s == "split") return SplitType::split;
  if (s == "ramified") return SplitType::ramified;
  throw InvalidSymbol("unknown splitting type: " + s);
}

// Behavior of l in the real quadratic algebra, and of each real prime in
// the quartic extension.
struct SplittingSymbol {
  SplitType real = SplitType::inert;
  std::vector<SplitType> upper;  // one entry per real prime above l

  void validate() const {
    size_t expect = real == SplitType::split ? 2 : 1;
    if (upper.size() != expect)
      throw InvalidSymbol("symbol needs " + std::to_string(expect) + " upper entries");
  }

  std::string str() const {
    std::string s = to_string(real) + "/";
    for (size_t i = 0; i < upper.size(); ++i) {
      if (i) s += ",";
      s += to_string(upper[i]);
    }
    return s;
  }
};

struct LocalCMAlgebra;

struct AlgebraElement {
  const LocalCMAlgebra* algebra = nullptr;
  std::array<u64, 4> coords{0, 0, 0, 0};
};

// Concrete model of the quartic algebra K_l = K (x) Q_l with involution.
// Basis e1..e4 spans the maximal order; e1 = 1, e2 generates the real
// maximal order over Z_l.
struct AlgebraConfig;

struct LocalCMAlgebra {
  ResidueRing ring;
  SplittingSymbol symbol;
  u64 ell = 0;
  int precision = 0;
  std::optional<std::array<long long, 4>> pi_coords;
  u64 mult_table[4][4][4] = {};  // e_i e_j = sum_k c[i][j][k] e_k
  ResidueMatrix dagger;          // columns are images of the basis
  ResidueMatrix real_embed;      // 4x2, columns are coords of 1 and omega
  std::array<u64, 4> trace_vec{};

  struct RealPrime {
    AlgebraElement uniformizer;      // generator of the prime of the real order
    int residue_degree = 1;          // 1 or 2
    u64 norm = 0;                    // l^residue_degree
    SplitType upper = SplitType::inert;
    std::vector<AlgebraElement> upper_uniformizers;
  };
  std::vector<RealPrime> real_primes;

  std::optional<AlgebraElement> frobenius;

  // delta_scaled / l^delta_den generates the codifferent and is skewed by
  // the involution; it pins the trace pairing of the symplectic layer.
  AlgebraElement delta_scaled;
  int delta_den = 0;

  AlgebraElement element(std::array<u64, 4> c) const {
    AlgebraElement e;
    e.algebra = this;
    for (auto& x : c) x %= ring.modulus;
    e.coords = c;
    return e;
  }
  AlgebraElement element_i(std::array<long long, 4> c) const {
    return element({ring.reduce(c[0]), ring.reduce(c[1]), ring.reduce(c[2]), ring.reduce(c[3])});
  }
  AlgebraElement one() const { return element({1, 0, 0, 0}); }
  AlgebraElement omega() const { return element({0, 1, 0, 0}); }
  AlgebraElement real_element(u64 a, u64 b) const { return element({a, b, 0, 0}); }

  AlgebraElement mul(const AlgebraElement& x, const AlgebraElement& y) const {
    AlgebraElement z = element({0, 0, 0, 0});
    for (int i = 0; i < 4; ++i) {
      if (x.coords[i] == 0) continue;
      for (int j = 0; j < 4; ++j) {
        if (y.coords[j] == 0) continue;
        u64 xy = ring.mul(x.coords[i], y.coords[j]);
        for (int k = 0; k < 4; ++k)
          if (mult_table[i][j][k])
            z.coords[k] = ring.add(z.coords[k], ring.mul(xy, mult_table[i][j][k]));
      }
    }
    return z;
  }

  AlgebraElement add(const AlgebraElement& x, const AlgebraElement& y) const {
    AlgebraElement z = x;
    for (int k = 0; k < 4; ++k) z.coords[k] = ring.add(z.coords[k], y.coords[k]);
    return z;
  }

  AlgebraElement sub(const AlgebraElement& x, const AlgebraElement& y) const {
    AlgebraElement z = x;
    for (int k = 0; k < 4; ++k) z.coords[k] = ring.sub(z.coords[k], y.coords[k]);
    return z;
  }

  AlgebraElement scale(u64 c, const AlgebraElement& x) const {
    AlgebraElement z = x;
    for (auto& v : z.coords) v = ring.mul(v, c);
    return z;
  }

  AlgebraElement conj(const AlgebraElement& x) const {
    AlgebraElement z = element({0, 0, 0, 0});
    for (int j = 0; j < 4; ++j) {
      if (x.coords[j] == 0) continue;
      for (int i = 0; i < 4; ++i)
        z.coords[i] = ring.add(z.coords[i], ring.mul(dagger(i, j), x.coords[j]));
    }
    return z;
  }

  // Matrix of multiplication by x on the basis (columns are x*e_i).
  ResidueMatrix mult_matrix(const AlgebraElement& x) const {
    ResidueMatrix m(ring, 4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        if (x.coords[j] == 0) continue;
        for (int k = 0; k < 4; ++k)
          if (mult_table[j][i][k])
            m(k, i) = ring.add(m(k, i), ring.mul(x.coords[j], mult_table[j][i][k]));
      }
    return m;
  }

  u64 trace(const AlgebraElement& x) const {
    u64 t = 0;
    for (int j = 0; j < 4; ++j) t = ring.add(t, ring.mul(x.coords[j], trace_vec[j]));
    return t;
  }

  AlgebraElement pow(const AlgebraElement& x, int e) const {
    AlgebraElement r = one();
    for (int i = 0; i < e; ++i) r = mul(r, x);
    return r;
  }

  int real_prime_count() const { return static_cast<int>(real_primes.size()); }
};

namespace detail {

// Arithmetic in the residue field F_q of the real algebra factor, q = l or
// l^2, with reduction polynomial x^2 = p1 x + p0 when q = l^2.
struct Fq {
  u64 l;
  bool quadratic;
  u64 p1, p0;

  using El = std::pair<u64, u64>;

  El mul(El a, El b) const {
    u64 ac = (a.first * b.first) % l;
    u64 ad = (a.first * b.second) % l;
    u64 bc = (a.second * b.first) % l;
    u64 bd = (a.second * b.second) % l;
    // (a + b x)(c + d x) = ac + bd p0 + (ad + bc + bd p1) x
    return {(ac + bd * p0) % l, (ad + bc + bd * p1) % l};
  }
  El add(El a, El b) const { return {(a.first + b.first) % l, (a.second + b.second) % l}; }
  bool is_zero(El a) const { return a.first == 0 && a.second == 0; }
  u64 q() const { return quadratic ? l * l : l; }

  std::vector<El> all() const {
    std::vector<El> v;
    for (u64 a = 0; a < l; ++a) {
      if (!quadratic) {
        v.push_back({a, 0});
        continue;
      }
      for (u64 b = 0; b < l; ++b) v.push_back({a, b});
    }
    return v;
  }

  // x^2 - q1 x - q0 irreducible over F_q: no root among the q elements.
  bool irreducible(El q1, El q0) const {
    for (El z : all()) {
      El z2 = mul(z, z);
      El rhs = add(mul(q1, z), q0);
      if (z2 == rhs) return false;
    }
    return true;
  }
};

}  // namespace detail

// Configuration record for building algebras, shared with the CLI.
struct AlgebraConfig {
  u64 ell = 2;
  int precision = 32;
  SplittingSymbol symbol;
  std::optional<std::array<long long, 4>> pi;
};

std::shared_ptr<const LocalCMAlgebra> build_algebra(const AlgebraConfig& cfg, u64 seed = 0);

inline std::shared_ptr<const LocalCMAlgebra> build_algebra(u64 ell, const SplittingSymbol& symbol,
                                                           int precision, u64 seed = 0) {
  AlgebraConfig cfg;
  cfg.ell = ell;
  cfg.precision = precision;
  cfg.symbol = symbol;
  return build_algebra(cfg, seed);
}

namespace detail {

// First (q1, q0) with small coordinates such that x^2 - q1 x - q0 is
// irreducible over the residue field and has unit discriminant.  Finds
// x^2 - c for odd l and an Artin-Schreier model at l = 2.
inline std::pair<std::pair<u64, u64>, std::pair<u64, u64>> inert_model(const Fq& f) {
  u64 l = f.l;
  for (u64 q1b = 0; q1b < (f.quadratic ? l : 1); ++q1b)
    for (u64 q1a = 0; q1a < l; ++q1a)
      for (u64 q0b = 0; q0b < (f.quadratic ? l : 1); ++q0b)
        for (u64 q0a = 0; q0a < l; ++q0a) {
          Fq::El q1{q1a, q1b}, q0{q0a, q0b};
          // disc = q1^2 + 4 q0 must be a unit mod l
          Fq::El disc = f.add(f.mul(q1, q1), f.mul({4 % l, 0}, q0));
          if (f.is_zero(disc)) continue;
          if (f.irreducible(q1, q0)) return {{q1a, q1b}, {q0a, q0b}};
        }
  throw AssertionFailure("no irreducible quadratic model found");
}

}  // namespace detail

inline std::shared_ptr<const LocalCMAlgebra> build_algebra_impl(const AlgebraConfig& cfg) {
  const u64 ell = cfg.ell;
  cfg.symbol.validate();
  for (SplitType u : cfg.symbol.upper)
    if (ell == 2 && u == SplitType::ramified)
      throw UnsupportedConfig("l = 2 with a ramified upper prime is outside the validated matrix");

  auto alg = std::make_shared<LocalCMAlgebra>();
  LocalCMAlgebra& A = *alg;
  A.ring = ResidueRing(ell, cfg.precision);
  A.symbol = cfg.symbol;
  A.ell = ell;
  A.precision = cfg.precision;
  A.pi_coords = cfg.pi;
  const ResidueRing& R = A.ring;

  auto set_product = [&](int i, int j, std::array<u64, 4> c) {
    for (int k = 0; k < 4; ++k) {
      A.mult_table[i][j][k] = c[k] % R.modulus;
      A.mult_table[j][i][k] = c[k] % R.modulus;
    }
  };
  // identity row/column
  for (int i = 0; i < 4; ++i) {
    std::array<u64, 4> c{0, 0, 0, 0};
    c[i] = 1;
    set_product(0, i, c);
  }

  ResidueMatrix dag(R, 4, 4);
  dag(0, 0) = 1;
  dag(1, 1) = 1;

  if (cfg.symbol.real == SplitType::split) {
    // K_0 = Q_l x Q_l with omega = (1,0); each factor carries its own
    // quadratic step eta_i, with e3 = (eta_1, 0), e4 = (0, eta_2).
    detail::Fq f{ell, false, 0, 0};
    std::array<std::pair<u64, u64>, 2> q{};  // (q1, q0) per factor, scalar coords
    for (int i = 0; i < 2; ++i) {
      switch (cfg.symbol.upper[i]) {
        case SplitType::inert: {
          auto m = detail::inert_model(f);
          q[i] = {m.first.first, m.second.first};
          break;
        }
        case SplitType::split:
          q[i] = {1, 0};
          break;
        case SplitType::ramified:
          q[i] = {0, ell};
          break;
      }
    }
    u64 q11 = q[0].first, q10 = q[0].second, q21 = q[1].first, q20 = q[1].second;
    set_product(1, 1, {0, 1, 0, 0});                   // omega^2 = omega
    set_product(1, 2, {0, 0, 1, 0});                   // omega * e3 = e3
    set_product(1, 3, {0, 0, 0, 0});                   // omega * e4 = 0
    set_product(2, 2, {0, q10 % R.modulus, q11 % R.modulus, 0});
    set_product(2, 3, {0, 0, 0, 0});
    set_product(3, 3, {q20 % R.modulus, R.neg(q20 % R.modulus), 0, q21 % R.modulus});

    dag(1, 2) = q11 % R.modulus;  // e3 -> q11*omega - e3
    dag(2, 2) = R.neg(1);
    dag(0, 3) = q21 % R.modulus;  // e4 -> q21*(1-omega) - e4
    dag(1, 3) = R.neg(q21 % R.modulus);
    dag(3, 3) = R.neg(1);
    A.dagger = dag;

    LocalCMAlgebra::RealPrime p1, p2;
    p1.uniformizer = A.element_i({1, static_cast<long long>(ell) - 1, 0, 0});  // (l, 1)
    p2.uniformizer = A.element_i({static_cast<long long>(ell), 1 - static_cast<long long>(ell), 0, 0});
    p1.residue_degree = p2.residue_degree = 1;
    p1.norm = p2.norm = ell;
    p1.upper = cfg.symbol.upper[0];
    p2.upper = cfg.symbol.upper[1];
    A.real_primes = {p1, p2};

    // delta = w1/D1 + w2/D2 with w_i = 2 eta_i - q_i1 in its factor
    AlgebraElement w1 = A.element_i({0, -static_cast<long long>(q11), 2, 0});
    AlgebraElement w2 = A.element_i({-static_cast<long long>(q21), static_cast<long long>(q21), 0, 2});
    long long d1 = static_cast<long long>(q11 * q11 + 4 * q10);
    long long d2 = static_cast<long long>(q21 * q21 + 4 * q20);
    int m1 = R.valuation(R.reduce(d1)), m2 = R.valuation(R.reduce(d2));
    int m = std::max(m1, m2);
    u64 s1 = R.mul(R.ell_pow(m - m1), R.inv(R.div_ell_pow(R.reduce(d1), m1)));
    u64 s2 = R.mul(R.ell_pow(m - m2), R.inv(R.div_ell_pow(R.reduce(d2), m2)));
    A.delta_scaled = A.add(A.scale(s1, w1), A.scale(s2, w2));
    A.delta_den = m;
  } else {
    // Tower layout: real factor F = Z_l[omega], omega^2 = p1 omega + p0,
    // upper step eta over F with eta^2 = q1 eta + q0, e4 = omega*eta.
    u64 p1 = 0, p0 = 0;
    if (cfg.symbol.real == SplitType::inert) {
      detail::Fq f{ell, false, 0, 0};
      auto m = detail::inert_model(f);
      p1 = m.first.first;
      p0 = m.second.first;
    } else {
      p1 = 0;
      p0 = ell;  // omega = sqrt(l); Z_l[omega] is maximal for every l
    }
    detail::Fq fbig{ell, true, p1 % ell, p0 % ell};

    std::pair<u64, u64> q1c{0, 0}, q0c{0, 0};  // coords (a, b) for a + b*omega
    switch (cfg.symbol.upper[0]) {
      case SplitType::inert: {
        auto m = detail::inert_model(fbig);
        q1c = m.first;
        q0c = m.second;
        break;
      }
      case SplitType::split:
        q1c = {1, 0};
        q0c = {0, 0};
        break;
      case SplitType::ramified:
        // uniformizer of F: l when F is unramified, omega when ramified
        if (cfg.symbol.real == SplitType::inert)
          q0c = {ell, 0};
        else
          q0c = {0, 1};
        q1c = {0, 0};
        break;
    }

    // F-arithmetic helpers on coordinate pairs mod l^N
    auto fmul = [&](std::pair<u64, u64> a, std::pair<u64, u64> b) -> std::pair<u64, u64> {
      u64 ac = R.mul(a.first, b.first), ad = R.mul(a.first, b.second);
      u64 bc = R.mul(a.second, b.first), bd = R.mul(a.second, b.second);
      return {R.add(ac, R.mul(bd, p0 % R.modulus)),
              R.add(R.add(ad, bc), R.mul(bd, p1 % R.modulus))};
    };
    auto fadd = [&](std::pair<u64, u64> a, std::pair<u64, u64> b) -> std::pair<u64, u64> {
      return {R.add(a.first, b.first), R.add(a.second, b.second)};
    };
    auto finv = [&](std::pair<u64, u64> a) -> std::pair<u64, u64> {
      // conj = a1 + a2 p1 - a2 omega; norm = a * conj
      std::pair<u64, u64> cj{R.add(a.first, R.mul(a.second, p1 % R.modulus)), R.neg(a.second)};
      std::pair<u64, u64> n = fmul(a, cj);
      check(n.second == 0, "norm not scalar in F inversion");
      u64 ni = R.inv(n.first);
      return {R.mul(cj.first, ni), R.mul(cj.second, ni)};
    };
    std::pair<u64, u64> omega_pair{0, 1};

    set_product(1, 1, {p0 % R.modulus, p1 % R.modulus, 0, 0});
    set_product(1, 2, {0, 0, 0, 1});
    set_product(1, 3, {0, 0, p0 % R.modulus, p1 % R.modulus});
    set_product(2, 2, {q0c.first, q0c.second, q1c.first, q1c.second});
    {
      auto wq0 = fmul(omega_pair, q0c);
      auto wq1 = fmul(omega_pair, q1c);
      set_product(2, 3, {wq0.first, wq0.second, wq1.first, wq1.second});
      auto s = fmul(omega_pair, omega_pair);  // omega^2 as an F-pair
      auto sq0 = fmul(s, q0c);
      auto sq1 = fmul(s, q1c);
      set_product(3, 3, {sq0.first, sq0.second, sq1.first, sq1.second});
    }

    // dagger: eta -> q1 - eta, omega*eta -> omega*q1 - omega*eta
    dag(0, 2) = q1c.first;
    dag(1, 2) = q1c.second;
    dag(2, 2) = R.neg(1);
    {
      auto wq1 = fmul(omega_pair, q1c);
      dag(0, 3) = wq1.first;
      dag(1, 3) = wq1.second;
      dag(3, 3) = R.neg(1);
    }
    A.dagger = dag;

    LocalCMAlgebra::RealPrime p;
    p.residue_degree = cfg.symbol.real == SplitType::inert ? 2 : 1;
    p.norm = p.residue_degree == 2 ? ell * ell : ell;
    p.upper = cfg.symbol.upper[0];
    p.uniformizer = cfg.symbol.real == SplitType::ramified
                        ? A.element({0, 1, 0, 0})
                        : A.element({ell % R.modulus, 0, 0, 0});
    A.real_primes = {p};

    // delta = delta_F * w / D with w = 2 eta - q1, D = q1^2 + 4 q0
    AlgebraElement w = A.element_i({-static_cast<long long>(q1c.first),
                                    -static_cast<long long>(q1c.second), 2, 0});
    auto disc = fadd(fmul(q1c, q1c), fmul({4 % R.modulus, 0}, q0c));
    if (cfg.symbol.real == SplitType::inert) {
      if (cfg.symbol.upper[0] == SplitType::ramified) {
        // D = 4l: delta_scaled = w/4, denominator l
        A.delta_scaled = A.scale(R.inv(4 % R.modulus), w);
        A.delta_den = 1;
      } else {
        auto di = finv(disc);
        AlgebraElement dinv = A.element({di.first, di.second, 0, 0});
        A.delta_scaled = A.mul(dinv, w);
        A.delta_den = 0;
      }
    } else {  // real ramified; delta_F = omega/(2l)
      if (cfg.symbol.upper[0] == SplitType::ramified) {
        // delta = omega*w/(2l * 4omega) = w/(8l)
        A.delta_scaled = A.scale(R.inv(8 % R.modulus), w);
        A.delta_den = 1;
      } else if (ell == 2) {
        // delta = omega*w/(4 D): denominator l^2
        auto di = finv(disc);
        AlgebraElement dinv = A.element({di.first, di.second, 0, 0});
        A.delta_scaled = A.mul(A.mul(dinv, A.omega()), w);
        A.delta_den = 2;
      } else {
        auto di = finv(disc);
        AlgebraElement dinv = A.element({di.first, di.second, 0, 0});
        A.delta_scaled = A.scale(R.inv(2 % R.modulus), A.mul(A.mul(dinv, A.omega()), w));
        A.delta_den = 1;
      }
    }
  }

  // upper uniformizers per real prime
  {
    auto idem_complement = [&](const AlgebraElement& e) { return A.sub(A.one(), e); };
    for (size_t pi = 0; pi < A.real_primes.size(); ++pi) {
      auto& p = A.real_primes[pi];
      AlgebraElement u = p.uniformizer;
      switch (p.upper) {
        case SplitType::inert:
          p.upper_uniformizers = {u};
          break;
        case SplitType::ramified: {
          AlgebraElement eta = A.element({0, 0, 0, 0});
          if (cfg.symbol.real == SplitType::split)
            eta.coords[pi == 0 ? 2 : 3] = 1;
          else
            eta.coords[2] = 1;
          eta.algebra = alg.get();
          p.upper_uniformizers = {eta};
          break;
        }
        case SplitType::split: {
          // eta is a primitive idempotent of the factor; its two primes are
          // (u on the eta-slice, 1 elsewhere) and the mirror image
          AlgebraElement eta = A.element({0, 0, 0, 0});
          if (cfg.symbol.real == SplitType::split)
            eta.coords[pi == 0 ? 2 : 3] = 1;
          else
            eta.coords[2] = 1;
          AlgebraElement base = cfg.symbol.real == SplitType::split
                                    ? (pi == 0 ? A.omega() : A.sub(A.one(), A.omega()))
                                    : A.one();
          AlgebraElement co = A.sub(base, eta);
          AlgebraElement rest = idem_complement(base);
          AlgebraElement g1 = A.add(A.add(A.mul(u, eta), co), rest);
          AlgebraElement g2 = A.add(A.add(eta, A.mul(u, co)), rest);
          p.upper_uniformizers = {g1, g2};
          break;
        }
      }
    }
  }

  A.real_embed = ResidueMatrix(R, 4, 2);
  A.real_embed(0, 0) = 1;
  A.real_embed(1, 1) = 1;

  for (int j = 0; j < 4; ++j) {
    u64 t = 0;
    for (int i = 0; i < 4; ++i) t = R.add(t, A.mult_table[j][i][i]);
    A.trace_vec[j] = t;
  }

  if (cfg.pi) {
    A.frobenius = A.element_i(*cfg.pi);
  }

  // structural checks: unital, commutative, associative, involutive dagger
  {
    auto basis = [&](int i) {
      std::array<u64, 4> c{0, 0, 0, 0};
      c[i] = 1;
      return A.element(c);
    };
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
          AlgebraElement lhs = A.mul(A.mul(basis(i), basis(j)), basis(k));
          AlgebraElement rhs = A.mul(basis(i), A.mul(basis(j), basis(k)));
          check(lhs.coords == rhs.coords, "multiplication table is not associative");
        }
    for (int i = 0; i < 4; ++i) {
      AlgebraElement b = basis(i);
      check(A.conj(A.conj(b)).coords == b.coords, "dagger is not an involution");
      for (int j = 0; j < 4; ++j) {
        AlgebraElement lhs = A.conj(A.mul(basis(i), basis(j)));
        AlgebraElement rhs = A.mul(A.conj(basis(i)), A.conj(basis(j)));
        check(lhs.coords == rhs.coords, "dagger is not multiplicative");
      }
    }
    check(A.conj(A.omega()).coords == A.omega().coords, "dagger moves the real generator");
    // product of real uniformizers has the valuation pattern of l*O_0
    AlgebraElement prod = A.one();
    for (auto& p : A.real_primes) {
      AlgebraElement f = p.uniformizer;
      int e = (A.real_primes.size() == 1 && cfg.symbol.real == SplitType::ramified) ? 2 : 1;
      for (int t = 0; t < e; ++t) prod = A.mul(prod, f);
    }
    // prod = l * unit: l^{-1} prod must be a unit of the order
    AlgebraElement unit = A.element({R.div_ell_pow(prod.coords[0], 1), R.div_ell_pow(prod.coords[1], 1),
                                     R.div_ell_pow(prod.coords[2], 1), R.div_ell_pow(prod.coords[3], 1)});
    check(R.is_unit(det(A.mult_matrix(unit))), "real uniformizers do not factor l");
    // delta is skewed by dagger
    AlgebraElement ds = A.delta_scaled;
    AlgebraElement minus = A.sub(A.element({0, 0, 0, 0}), ds);
    check(A.conj(ds).coords == minus.coords, "delta is not dagger-skewed");
  }

  return alg;
}

inline std::shared_ptr<const LocalCMAlgebra> build_algebra(const AlgebraConfig& cfg, u64 /*seed*/) {
  return build_algebra_impl(cfg);
}

inline AlgebraElement conjugate(const AlgebraElement& x) {
  check(x.algebra != nullptr, "element without algebra");
  return x.algebra->conj(x);
}

}  // namespace isovolc
