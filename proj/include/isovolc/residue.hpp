#pragma once

#include <cstdint>
#include <string>

#include "isovolc/errors.hpp"

namespace isovolc {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Truncated l-adic integers: Z/l^N standing in for Z_l at working
// precision N.  Representatives live in [0, l^N) with l^N < 2^63 so that
// products fit a 128-bit intermediate.
struct ResidueRing {
  u64 ell = 0;
  int precision = 0;
  u64 modulus = 0;

  ResidueRing() = default;

  ResidueRing(u64 ell_, int precision_) : ell(ell_), precision(precision_) {
    if (precision < 1) throw InvalidParams("precision must be >= 1");
    if (!is_prime(ell)) throw InvalidParams("ell must be prime, got " + std::to_string(ell));
    modulus = 1;
    const u64 limit = ~u64(0) >> 1;  // l^N must stay below 2^63
    for (int i = 0; i < precision; ++i) {
      if (modulus > limit / ell)
        throw InvalidParams("l^N exceeds the 63-bit value range; lower the precision");
      modulus *= ell;
    }
  }

  static bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

  bool operator==(const ResidueRing& o) const {
    return ell == o.ell && precision == o.precision;
  }
  bool operator!=(const ResidueRing& o) const { return !(*this == o); }

  u64 reduce(long long x) const {
    long long m = static_cast<long long>(modulus);
    long long r = x % m;
    if (r < 0) r += m;
    return static_cast<u64>(r);
  }

  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    if (s >= modulus) s -= modulus;
    return s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + (modulus - b); }
  u64 neg(u64 a) const { return a == 0 ? 0 : modulus - a; }
  u64 mul(u64 a, u64 b) const { return static_cast<u64>((u128(a) * b) % modulus); }

  u64 pow(u64 a, u64 e) const {
    u64 r = 1 % modulus;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  u64 ell_pow(int k) const {
    check(k >= 0 && k <= precision, "ell_pow exponent out of range");
    u64 r = 1;
    for (int i = 0; i < k; ++i) r *= ell;
    return r;
  }

  // Valuation of the representative; 0 reports the precision floor N.
  int valuation(u64 a) const {
    if (a == 0) return precision;
    int v = 0;
    while (a % ell == 0) {
      a /= ell;
      ++v;
    }
    return v;
  }

  bool is_unit(u64 a) const { return a % ell != 0; }

  // Inverse of a unit via extended Euclid on the representative.
  u64 inv(u64 a) const {
    if (!is_unit(a)) throw PrecisionExhausted("inverse of a non-unit residue");
    long long t = 0, newt = 1;
    long long r = static_cast<long long>(modulus), newr = static_cast<long long>(a);
    while (newr != 0) {
      long long q = r / newr;
      long long tmp = t - q * newt;
      t = newt;
      newt = tmp;
      tmp = r - q * newr;
      r = newr;
      newr = tmp;
    }
    check(r == 1, "gcd != 1 in unit inversion");
    return reduce(t);
  }

  // Exact division by l^k.  The quotient is well defined mod l^(N-k); the
  // canonical representative returned here is its minimal lift.
  u64 div_ell_pow(u64 a, int k) const {
    if (k == 0) return a;
    if (k >= precision && a != 0)
      throw PrecisionExhausted("division by l^" + std::to_string(k) + " at precision " +
                               std::to_string(precision));
    u64 p = ell_pow(k);
    if (a % p != 0) throw PrecisionExhausted("inexact division by l^" + std::to_string(k));
    return a / p;
  }
};

// Valuation with an explicit floor marker for zero-at-precision values.
struct Valuation {
  int v = 0;
  bool at_floor = false;

  bool operator==(const Valuation& o) const { return v == o.v && at_floor == o.at_floor; }
  std::string str() const { return at_floor ? (">= " + std::to_string(v)) : std::to_string(v); }
};

struct ResidueInt {
  ResidueRing ring;
  u64 value = 0;

  ResidueInt() = default;
  ResidueInt(const ResidueRing& r, long long x) : ring(r), value(r.reduce(x)) {}

  Valuation valuation() const {
    int v = ring.valuation(value);
    return Valuation{v, value == 0};
  }

  ResidueInt operator+(const ResidueInt& o) const { return make(ring.add(value, o.value)); }
  ResidueInt operator-(const ResidueInt& o) const { return make(ring.sub(value, o.value)); }
  ResidueInt operator*(const ResidueInt& o) const { return make(ring.mul(value, o.value)); }
  ResidueInt operator-() const { return make(ring.neg(value)); }
  bool operator==(const ResidueInt& o) const { return ring == o.ring && value == o.value; }

  bool is_zero() const { return value == 0; }
  bool is_unit() const { return ring.is_unit(value); }
  ResidueInt inverse() const { return make(ring.inv(value)); }

 private:
  ResidueInt make(u64 v) const {
    ResidueInt x;
    x.ring = ring;
    x.value = v;
    return x;
  }
};

inline Valuation valuation(const ResidueInt& x) { return x.valuation(); }

}  // namespace isovolc
