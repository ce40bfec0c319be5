#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "isovolc/oracle.hpp"

using namespace isovolc;

namespace {

SurfaceState state_at_level(std::shared_ptr<const SymplecticSpace> sp, int n,
                            std::mt19937_64& rng) {
  SurfaceState st = make_surface_state(sp);
  for (int k = 0; k < n; ++k) {
    auto planes = enumerate_isotropic_planes(st.lattice, st.form());
    std::vector<SubspaceModEll> descending;
    for (auto& h : planes) {
      auto cand = scaled_lattice(lattice_from_plane(st.lattice, h), -1);
      if (real_multiplier_order(cand) == k + 1) descending.push_back(h);
    }
    REQUIRE(!descending.empty());
    st = step_ll(st, descending[rng() % descending.size()]);
  }
  return st;
}

}  // namespace

TEST_CASE("isotropic plane counts at l = 2, 3, 5") {
  struct Row {
    u64 ell;
    int prec;
    size_t want;
  };
  for (Row row : {Row{2, 24, 15}, Row{3, 24, 40}, Row{5, 16, 156}}) {
    SplittingSymbol sym{SplitType::inert, {SplitType::inert}};
    auto sp = build_space(build_algebra(row.ell, sym, row.prec));
    auto L = standard_selfdual_lattice(sp);
    auto planes = enumerate_isotropic_planes(L);
    CHECK(planes.size() == row.want);
  }
}

TEST_CASE("plane enumeration agrees with the brute subspace filter") {
  for (u64 ell : {2ull, 3ull}) {
    for (auto& sym : oracle::validated_symbols(ell)) {
      auto sp = build_space(build_algebra(ell, sym, 24));
      auto L = standard_selfdual_lattice(sp);
      FormRef form = make_form(*sp, FormTwist::trivial(*sp->algebra));
      auto fast = enumerate_isotropic_planes(L, form);
      auto brute = oracle::brute_isotropic_planes(L, form);
      std::sort(fast.begin(), fast.end());
      REQUIRE(fast.size() == brute.size());
      for (size_t i = 0; i < fast.size(); ++i) CHECK(fast[i] == brute[i]);
    }
  }
}

TEST_CASE("non-self-dual lattices are rejected by the plane machinery") {
  // a neighbor at a split real prime has odd index, so no l-power rescaling
  // of the form makes it self-dual
  auto sp = build_space(
      build_algebra(2, SplittingSymbol{SplitType::split, {SplitType::inert, SplitType::inert}}, 24));
  auto L = standard_selfdual_lattice(sp);
  auto nb = l_neighbors(L, 0).front();
  CHECK_THROWS_AS(enumerate_isotropic_planes(nb), NotSelfDual);
}

TEST_CASE("l-neighbor counts follow the residue norm") {
  // l = 2 inert: N(l) = 4, 5 neighbors; split: N = 2, 3 neighbors per prime
  auto spi = build_space(build_algebra(2, SplittingSymbol{SplitType::inert, {SplitType::inert}}, 24));
  CHECK(l_neighbors(standard_selfdual_lattice(spi), 0).size() == 5);
  auto sps = build_space(
      build_algebra(2, SplittingSymbol{SplitType::split, {SplitType::inert, SplitType::inert}}, 24));
  CHECK(l_neighbors(standard_selfdual_lattice(sps), 0).size() == 3);
  CHECK(l_neighbors(standard_selfdual_lattice(sps), 1).size() == 3);
}

TEST_CASE("l-neighbors demand maximal real multiplication") {
  std::mt19937_64 rng(5);
  auto sp = build_space(build_algebra(2, SplittingSymbol{SplitType::inert, {SplitType::inert}}, 28));
  SurfaceState st = state_at_level(sp, 1, rng);
  CHECK_THROWS_AS(l_neighbors(st.lattice, 0), MaxRMRequired);
}

TEST_CASE("l = 3 inert in K0, split above: 2 horizontal and 8 descending") {
  auto sp = build_space(build_algebra(3, SplittingSymbol{SplitType::inert, {SplitType::split}}, 24));
  auto cls = classify_l_neighbors(standard_selfdual_lattice(sp), 0);
  int asc = 0, hor = 0, desc = 0;
  for (auto& c : cls) {
    if (c.kind == NeighborKind::l_ascending) ++asc;
    if (c.kind == NeighborKind::l_horizontal) ++hor;
    if (c.kind == NeighborKind::l_descending) ++desc;
  }
  CHECK(asc == 0);
  CHECK(hor == 2);
  CHECK(desc == 8);
  // the horizontal targets are the images under the upper uniformizers
  std::set<SymplecticLattice> horiz;
  for (auto& c : cls)
    if (c.kind == NeighborKind::l_horizontal) horiz.insert(c.neighbor);
  std::set<SymplecticLattice> images;
  auto L = standard_selfdual_lattice(sp);
  for (auto& g : sp->algebra->real_primes[0].upper_uniformizers)
    images.insert(element_image(L, g));
  CHECK(horiz == images);
}

TEST_CASE("when the prime divides the conductor: one ascending, N descending") {
  auto alg = build_algebra(2, SplittingSymbol{SplitType::inert, {SplitType::inert}}, 24);
  auto sp = build_space(alg);
  OrderLattice O = order_from_conductor(alg, RealIdeal({1}));
  SymplecticLattice lat = normalize_lattice(sp, O.basis, 0);
  auto cls = classify_l_neighbors(lat, 0);
  int asc = 0, desc = 0;
  SymplecticLattice asc_target = lat;
  for (auto& c : cls) {
    if (c.kind == NeighborKind::l_ascending) {
      ++asc;
      asc_target = c.neighbor;
    }
    if (c.kind == NeighborKind::l_descending) ++desc;
  }
  CHECK(asc == 1);
  CHECK(desc == 4);
  CHECK(asc_target == l_predecessor(lat, 0));
}

TEST_CASE("descending counts match the unit-orbit oracle at l = 2") {
  auto alg = build_algebra(2, SplittingSymbol{SplitType::ramified, {SplitType::split}}, 24);
  auto sp = build_space(alg);
  for (int e = 0; e <= 2; ++e) {
    OrderLattice O = order_from_conductor(alg, RealIdeal({e}));
    SymplecticLattice lat = normalize_lattice(sp, O.basis, 0);
    int desc = 0;
    for (auto& c : classify_l_neighbors(lat, 0))
      if (c.kind == NeighborKind::l_descending) ++desc;
    CHECK(oracle::unit_quotient_size(alg, RealIdeal({e}), 0) == static_cast<u64>(desc));
  }
}

TEST_CASE("RM-level classification at positive level: (1, l^2+l, l^3)") {
  std::mt19937_64 rng(7);
  for (u64 ell : {2ull, 3ull}) {
    auto sp = build_space(
        build_algebra(ell, SplittingSymbol{SplitType::split, {SplitType::split, SplitType::inert}}, 28));
    for (int level = 1; level <= 2; ++level) {
      SurfaceState st = state_at_level(sp, level, rng);
      auto cls = classify_ll_neighbors(st.lattice, st.form());
      int asc = 0, hor = 0, desc = 0;
      SymplecticLattice asc_target = st.lattice;
      for (auto& c : cls) {
        if (c.kind == NeighborKind::rm_ascending) {
          ++asc;
          asc_target = c.neighbor;
        }
        if (c.kind == NeighborKind::rm_horizontal) ++hor;
        if (c.kind == NeighborKind::rm_descending) ++desc;
      }
      CHECK(asc == 1);
      CHECK(hor == static_cast<int>(ell * ell + ell));
      CHECK(desc == static_cast<int>(ell * ell * ell));
      // the unique ascending neighbor is l O_{n-1} Lambda
      CHECK(asc_target == rm_predecessor(st.lattice));
    }
  }
}

TEST_CASE("classification is homothety invariant") {
  auto sp = build_space(build_algebra(2, SplittingSymbol{SplitType::ramified, {SplitType::split}}, 24));
  auto L = standard_selfdual_lattice(sp);
  FormRef form = make_form(*sp, FormTwist::trivial(*sp->algebra));
  auto base = classify_ll_neighbors(L, form);
  auto scaled = classify_ll_neighbors(scaled_lattice(L, 1), form);
  REQUIRE(base.size() == scaled.size());
  for (size_t i = 0; i < base.size(); ++i) {
    CHECK(base[i].kind == scaled[i].kind);
    CHECK(scaled_lattice(base[i].neighbor, 1) == scaled[i].neighbor);
  }
}

TEST_CASE("RM-preserving sets compose from the l-routes") {
  for (u64 ell : {2ull, 3ull}) {
    struct Case {
      SplittingSymbol sym;
      u64 want;
    };
    std::vector<Case> cases = {
        {{SplitType::inert, {SplitType::split}}, ell * ell + 1},
        {{SplitType::split, {SplitType::inert, SplitType::split}}, (ell + 1) * (ell + 1)},
        {{SplitType::ramified, {SplitType::inert}}, ell * ell + ell + 1},
    };
    for (auto& cs : cases) {
      auto sp = build_space(build_algebra(ell, cs.sym, 24));
      auto L = standard_selfdual_lattice(sp);
      FormRef form = make_form(*sp, FormTwist::trivial(*sp->algebra));
      auto cls = classify_ll_neighbors(L, form);
      CHECK(cls.size() == ell * ell * ell + ell * ell + ell + 1);
      std::set<SymplecticLattice> preserving;
      for (auto& c : cls)
        if (c.kind != NeighborKind::rm_descending) preserving.insert(c.neighbor);
      CHECK(preserving.size() == cs.want);
      for (auto& c : cls)
        if (c.kind == NeighborKind::rm_descending) CHECK(c.resulting_order.real_level == 1);
    }
  }
}

TEST_CASE("split composition commutes") {
  for (u64 ell : {2ull, 3ull}) {
    auto sp = build_space(
        build_algebra(ell, SplittingSymbol{SplitType::split, {SplitType::split, SplitType::split}}, 24));
    auto L = standard_selfdual_lattice(sp);
    CHECK(oracle::composed_l_neighbors(L, 0, 1) == oracle::composed_l_neighbors(L, 1, 0));
  }
}

TEST_CASE("ramified double-step intersections collapse to l Lambda") {
  auto sp = build_space(build_algebra(2, SplittingSymbol{SplitType::ramified, {SplitType::inert}}, 24));
  auto L = standard_selfdual_lattice(sp);
  auto mids = l_neighbors(L, 0);
  SymplecticLattice lshift = element_image(L, sp->algebra->real_primes[0].uniformizer);
  for (size_t i = 0; i < mids.size(); ++i)
    for (size_t j = i + 1; j < mids.size(); ++j) {
      std::set<SymplecticLattice> a, meet;
      for (auto& g : l_neighbors(mids[i], 0)) a.insert(g);
      for (auto& g : l_neighbors(mids[j], 0))
        if (a.count(g)) meet.insert(g);
      REQUIRE(meet.size() == 1);
      CHECK(*meet.begin() == lshift);
    }
}

TEST_CASE("predecessors iterate back to maximal structures") {
  std::mt19937_64 rng(11);
  auto sp = build_space(build_algebra(2, SplittingSymbol{SplitType::inert, {SplitType::split}}, 28));
  SurfaceState st = state_at_level(sp, 3, rng);
  SymplecticLattice cur = st.lattice;
  for (int n = 3; n > 0; --n) {
    CHECK(real_multiplier_order(cur) == n);
    cur = rm_predecessor(cur);
  }
  CHECK(real_multiplier_order(cur) == 0);
  CHECK_THROWS_AS(rm_predecessor(cur), AlreadyMaxRM);
}

TEST_CASE("descend then l-predecessor returns the shifted class") {
  auto sp = build_space(build_algebra(2, SplittingSymbol{SplitType::split, {SplitType::split, SplitType::inert}}, 24));
  auto L = standard_selfdual_lattice(sp);
  const auto& u = sp->algebra->real_primes[0].uniformizer;
  for (auto& c : classify_l_neighbors(L, 0)) {
    if (c.kind != NeighborKind::l_descending) continue;
    SymplecticLattice back = l_predecessor(c.neighbor, 0);
    CHECK(back == element_image(L, u));
    // two descents then two predecessors land on the l^2-shifted class
    for (auto& c2 : classify_l_neighbors(c.neighbor, 0)) {
      if (c2.kind != NeighborKind::l_descending) continue;
      SymplecticLattice back2 = l_predecessor(l_predecessor(c2.neighbor, 0), 0);
      CHECK(back2 == element_image(element_image(L, u), u));
      break;
    }
    break;
  }
  CHECK_THROWS_AS(l_predecessor(L, 0), NoAscendingNeighbor);
}

TEST_CASE("the lifting square commutes on RM-horizontal neighbors") {
  std::mt19937_64 rng(13);
  auto sp = build_space(build_algebra(2, SplittingSymbol{SplitType::ramified, {SplitType::split}}, 28));
  SurfaceState st = state_at_level(sp, 1, rng);
  SymplecticLattice up = rm_predecessor(st.lattice);
  auto up_nbs = ll_neighbors(up, make_form(*sp, st.twist));
  std::set<SymplecticLattice> up_set(up_nbs.begin(), up_nbs.end());
  int horizontal = 0;
  for (auto& c : classify_ll_neighbors(st.lattice, st.form())) {
    if (c.kind != NeighborKind::rm_horizontal) continue;
    ++horizontal;
    // l O_{n-1} Gamma is an (l,l)-neighbor of l O_{n-1} Lambda
    SymplecticLattice lifted = rm_predecessor(c.neighbor);
    CHECK(up_set.count(lifted) == 1);
  }
  CHECK(horizontal == 6);
}
