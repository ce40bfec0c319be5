#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "isovolc/residue.hpp"

using namespace isovolc;

TEST_CASE("valuation of residues") {
  ResidueRing r2(2, 8);
  CHECK(ResidueInt(r2, 12).valuation().v == 2);  // 12 = 4*3
  CHECK(ResidueInt(r2, 7).valuation().v == 0);

  ResidueRing r3(3, 5);
  Valuation z = ResidueInt(r3, 0).valuation();
  CHECK(z.v == 5);
  CHECK(z.at_floor);
  CHECK(z.str() == ">= 5");
}

TEST_CASE("valuation is multiplicative away from the floor") {
  std::mt19937_64 rng(42);
  for (u64 ell : {2ull, 3ull, 5ull}) {
    ResidueRing r(ell, 12);
    for (int t = 0; t < 200; ++t) {
      ResidueInt x(r, static_cast<long long>(rng() % r.modulus));
      ResidueInt y(r, static_cast<long long>(rng() % r.modulus));
      ResidueInt p = x * y;
      Valuation vx = x.valuation(), vy = y.valuation(), vp = p.valuation();
      if (vx.at_floor || vy.at_floor) continue;
      int expect = std::min(vx.v + vy.v, r.precision);
      if (vp.at_floor)
        CHECK(vx.v + vy.v >= r.precision);
      else
        CHECK(vp.v == expect);
    }
  }
}

TEST_CASE("ring construction guards") {
  CHECK_THROWS_AS(ResidueRing(4, 3), InvalidParams);
  CHECK_THROWS_AS(ResidueRing(2, 0), InvalidParams);
  CHECK_THROWS_AS(ResidueRing(5, 40), InvalidParams);  // 5^40 overflows the value range
  CHECK_NOTHROW(ResidueRing(2, 32));
  CHECK_NOTHROW(ResidueRing(5, 27));
}

TEST_CASE("unit inversion and exact division") {
  ResidueRing r(3, 6);
  for (u64 a = 1; a < 50; ++a) {
    if (!r.is_unit(a)) continue;
    CHECK(r.mul(a, r.inv(a)) == 1);
  }
  CHECK(r.div_ell_pow(27, 3) == 1);
  CHECK(r.div_ell_pow(54, 3) == 2);
  CHECK_THROWS_AS(r.div_ell_pow(10, 1), PrecisionExhausted);
  CHECK_THROWS_AS(ResidueInt(r, 3).inverse(), PrecisionExhausted);
}
