#include <doctest.h>

#include "bce/oracles.hpp"

using namespace bce;

// The oracles are checked on hand-computed cases before anything trusts them.

TEST_CASE("hom_nonzero between interval modules") {
  CHECK(oracle::hom_nonzero(Bar(1, 3), Bar(0, 2)));
  CHECK(oracle::hom_nonzero(Bar(1, 3), Bar(1, 3)));
  CHECK_FALSE(oracle::hom_nonzero(Bar(0, 2), Bar(1, 3)));
  CHECK_FALSE(oracle::hom_nonzero(Bar(1, 2), Bar(3, 4)));
  CHECK(oracle::hom_nonzero(Bar(1, kInf), Bar(0, kInf)));
  CHECK(oracle::hom_nonzero(Bar(1, kInf), Bar(0, 5)));
  CHECK(oracle::hom_nonzero(Bar(1, 5), Bar(0, kInf)) == false);
}

TEST_CASE("interleaving oracle on hand cases") {
  Barcode a{Bar(0, 2)}, b{Bar(0, 1)};
  CHECK_FALSE(oracle::interleaving_exists(a, b, 0.9));
  CHECK(oracle::interleaving_exists(a, b, 1.0));
  CHECK(oracle::interleaving_exists(a, Barcode{}, 1.0));
  CHECK_FALSE(oracle::interleaving_exists(a, Barcode{}, 0.5));
  CHECK(oracle::interleaving_exists(Barcode{Bar(0, kInf)}, Barcode{Bar(1, kInf)}, 1.0));
  CHECK_FALSE(oracle::interleaving_exists(Barcode{Bar(0, kInf)}, Barcode{}, 100.0));
  // two bars swapped against each other
  Barcode c{Bar(0, 4), Bar(1, 2)}, d{Bar(0.5, 4), Bar(1, 2.5)};
  CHECK(oracle::interleaving_distance(c, d, {0.0, 0.25, 0.5, 1.0}) == 0.5);
  CHECK_THROWS_AS(oracle::interleaving_exists(Barcode{Bar(0, 1), Bar(0, 1), Bar(0, 1), Bar(0, 1)}, Barcode{}, 1.0), CapabilityError);
}

TEST_CASE("brute-force filtration helpers") {
  oracle::Filtration<double> f{{1.0, 3.0, 2.0}};
  CHECK_FALSE(f.norm(0).has_value());
  CHECK(*f.norm(0b101) == 2.0);
  CHECK(f.orthogonal({0b001, 0b010}));
  CHECK_FALSE(f.orthogonal({0b011, 0b010}));
  CHECK(oracle::independent({0b01, 0b10}));
  CHECK_FALSE(oracle::independent({0b01, 0b10, 0b11}));
  CHECK(oracle::apply({0b01, 0b11}, 0b10) == 0b11);
}

TEST_CASE("svd oracle on hand cases") {
  OrthoSpace c({"z"}, {2.0}), d({"y"}, {1.0});
  F2Vec col(1);
  col.set(0);
  auto r = oracle::svd_gaps(FilteredMap(c, d, {col}));
  REQUIRE(r.gap_multisets.size() == 1);
  CHECK(r.gap_multisets[0] == std::vector<double>{1.0});
  // zero map: only the empty multiset
  auto z = oracle::svd_gaps(FilteredMap(OrthoSpace({"a", "b"}, {0.0, 1.0}), d, {F2Vec(1), F2Vec(1)}));
  REQUIRE(z.gap_multisets.size() == 1);
  CHECK(z.gap_multisets[0].empty());
}

TEST_CASE("rank-function oracle on hand cases") {
  // x(0), y(1), z(2), ∂z = y
  OrthoSpace s({"x", "y", "z"}, {0.0, 1.0, 2.0});
  std::vector<F2Vec> bnd(3, s.zero());
  bnd[2].set(1);
  CHECK(same_bars(oracle::rank_function_barcode(FilteredComplex(s, bnd)), Barcode{Bar(0, kInf), Bar(1, 2)}));
  // two cycles killed at once by one chain
  OrthoSpace t({"a", "b", "c"}, {0.0, 0.0, 3.0});
  std::vector<F2Vec> bt(3, t.zero());
  bt[2].set(0);
  bt[2].set(1);
  CHECK(same_bars(oracle::rank_function_barcode(FilteredComplex(t, bt)), Barcode{Bar(0, kInf), Bar(0, 3)}));
}
