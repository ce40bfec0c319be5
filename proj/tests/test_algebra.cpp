#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "isovolc/io.hpp"
#include "isovolc/oracle.hpp"

using namespace isovolc;

TEST_CASE("building algebras across the validated symbol matrix") {
  for (u64 ell : {2ull, 3ull, 5ull}) {
    for (auto& sym : oracle::validated_symbols(ell == 5 ? 3 : ell)) {
      if (ell == 5) {
        bool ramified_upper = false;
        for (auto u : sym.upper) ramified_upper |= u == SplitType::ramified;
        (void)ramified_upper;
      }
      auto alg = build_algebra(ell, sym, ell == 5 ? 16 : 24);
      CHECK(alg->real_prime_count() == (sym.real == SplitType::split ? 2 : 1));
      for (auto& p : alg->real_primes)
        CHECK(p.norm == (p.residue_degree == 2 ? ell * ell : ell));
    }
  }
}

TEST_CASE("l = 2 with a ramified upper prime is rejected") {
  CHECK_THROWS_AS(build_algebra(2, SplittingSymbol{SplitType::inert, {SplitType::ramified}}, 16),
                  UnsupportedConfig);
  CHECK_THROWS_AS(
      build_algebra(2, SplittingSymbol{SplitType::split, {SplitType::split, SplitType::ramified}}, 16),
      UnsupportedConfig);
}

TEST_CASE("symbol arity is validated") {
  CHECK_THROWS_AS(build_algebra(3, SplittingSymbol{SplitType::split, {SplitType::inert}}, 16),
                  InvalidSymbol);
  CHECK_THROWS_AS(
      build_algebra(3, SplittingSymbol{SplitType::inert, {SplitType::inert, SplitType::split}}, 16),
      InvalidSymbol);
}

TEST_CASE("associativity on all basis triples") {
  auto alg = build_algebra(3, SplittingSymbol{SplitType::ramified, {SplitType::ramified}}, 20);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) {
        std::array<u64, 4> ci{}, cj{}, ck{};
        ci[i] = cj[j] = ck[k] = 1;
        auto a = alg->element(ci), b = alg->element(cj), c = alg->element(ck);
        CHECK(alg->mul(alg->mul(a, b), c).coords == alg->mul(a, alg->mul(b, c)).coords);
      }
}

TEST_CASE("conjugation is an involution fixing the real subalgebra") {
  std::mt19937_64 rng(11);
  for (u64 ell : {2ull, 3ull}) {
    for (auto& sym : oracle::validated_symbols(ell)) {
      auto alg = build_algebra(ell, sym, 20);
      CHECK(conjugate(alg->one()).coords == alg->one().coords);
      for (int t = 0; t < 20; ++t) {
        AlgebraElement x = alg->element({rng() % alg->ring.modulus, rng() % alg->ring.modulus,
                                         rng() % alg->ring.modulus, rng() % alg->ring.modulus});
        CHECK(conjugate(conjugate(x)).coords == x.coords);
        // x + x^dagger lies in the real subalgebra: solvable against real_embed
        AlgebraElement s = alg->add(x, conjugate(x));
        CHECK(s.coords[2] == 0);
        CHECK(s.coords[3] == 0);
      }
    }
  }
}

TEST_CASE("real uniformizers factor l with the right pattern") {
  // l = 2 split: two uniformizers with u1 u2 = 2 * unit
  auto alg = build_algebra(2, SplittingSymbol{SplitType::split, {SplitType::inert, SplitType::inert}}, 20);
  auto prod = alg->mul(alg->real_primes[0].uniformizer, alg->real_primes[1].uniformizer);
  CHECK(prod.coords == alg->scale(2, alg->one()).coords);

  // ramified: the uniformizer squares to l
  auto alg2 = build_algebra(3, SplittingSymbol{SplitType::ramified, {SplitType::inert}}, 20);
  auto sq = alg2->mul(alg2->real_primes[0].uniformizer, alg2->real_primes[0].uniformizer);
  CHECK(sq.coords == alg2->scale(3, alg2->one()).coords);
}

TEST_CASE("upper uniformizers generate primes above each real prime") {
  // split upper: the two generators multiply to u * unit
  auto alg = build_algebra(3, SplittingSymbol{SplitType::inert, {SplitType::split}}, 20);
  const auto& p = alg->real_primes[0];
  REQUIRE(p.upper_uniformizers.size() == 2);
  auto prod = alg->mul(p.upper_uniformizers[0], p.upper_uniformizers[1]);
  // prod = u * unit: dividing by the uniformizer (here l = 3) leaves a unit
  ResidueMatrix m = alg->mult_matrix(prod);
  CHECK(alg->ring.valuation(det(m)) == alg->ring.valuation(det(alg->mult_matrix(p.uniformizer))));
}

TEST_CASE("algebra config serializes to and from JSON") {
  AlgebraConfig cfg;
  cfg.ell = 3;
  cfg.precision = 24;
  cfg.symbol = {SplitType::split, {SplitType::inert, SplitType::ramified}};
  cfg.pi = std::array<long long, 4>{3, 0, 1, 0};
  auto j = algebra_config_to_json(cfg);
  AlgebraConfig back = algebra_config_from_json(j);
  CHECK(back.ell == 3);
  CHECK(back.precision == 24);
  CHECK(back.symbol.real == SplitType::split);
  CHECK(back.symbol.upper == cfg.symbol.upper);
  REQUIRE(back.pi.has_value());
  CHECK(*back.pi == *cfg.pi);
  auto alg = build_algebra(back);
  REQUIRE(alg->frobenius.has_value());
}
