#include <doctest.h>

#include "bce/filtered_complex.hpp"
#include "bce/generators.hpp"
#include "bce/io.hpp"
#include "bce/oracles.hpp"

using namespace bce;

namespace {

FilteredComplex xyz() {
  return parse_complex("# fcomplex v1\ngen x 0\ngen y 1\ngen z 2\nbnd z = y\n");
}

bool has_kind(const std::vector<ComplexViolation>& v, ComplexViolation::Kind k, const std::string& label) {
  return std::any_of(v.begin(), v.end(), [&](const ComplexViolation& c) { return c.kind == k && c.label == label; });
}

}  // namespace

TEST_CASE("validate examples") {
  CHECK(validate(parse_complex("# fcomplex v1\ngen a 1\ngen b 2\n")).empty());
  auto up = validate(parse_complex("# fcomplex v1\ngen y 3\ngen z 2\nbnd z = y\n"));
  REQUIRE(up.size() == 1);
  CHECK(has_kind(up, ComplexViolation::Kind::ActionIncrease, "z"));
  auto sq = validate(parse_complex("# fcomplex v1\ngen x 0\ngen y 1\ngen z 2\nbnd z = y\nbnd y = x\n"));
  CHECK(has_kind(sq, ComplexViolation::Kind::BoundarySquare, "z"));
  CHECK_FALSE(has_kind(sq, ComplexViolation::Kind::ActionIncrease, "z"));
}

TEST_CASE("barcode_of examples") {
  CHECK(same_bars(barcode_of(xyz()), Barcode{Bar(0, kInf), Bar(1, 2)}));
  CHECK(same_bars(barcode_of(parse_complex("# fcomplex v1\ngen a 1\ngen b 2\n")), Barcode{Bar(1, kInf), Bar(2, kInf)}));
  // zero-gap pair produces no bar
  CHECK(barcode_of(parse_complex("# fcomplex v1\ngen y 1\ngen z 1\nbnd z = y\n")).empty());
  CHECK_THROWS_AS(barcode_of(parse_complex("# fcomplex v1\ngen y 3\ngen z 2\nbnd z = y\n")), PreconditionError);
}

template <class V>
void rank_oracle_agreement(std::uint64_t seed, bool ties) {
  Rng rng(seed);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 1 + rng.index(6);
    auto cw = gen::random_complex<V>(rng, n, -3.0, 3.0, ties);
    CHECK(validate(cw.complex).empty());
    auto got = barcode_of(cw.complex);
    CHECK(same_bars(got, oracle::rank_function_barcode(cw.complex)));
    CHECK(same_bars(got, cw.expected));
  }
}

TEST_CASE("barcode_of agrees with the rank-function oracle (float, distinct)") { rank_oracle_agreement<double>(1, false); }
TEST_CASE("barcode_of agrees with the rank-function oracle (float, ties)") { rank_oracle_agreement<double>(2, true); }
TEST_CASE("barcode_of agrees with the rank-function oracle (rational, ties)") { rank_oracle_agreement<Rational>(3, true); }

TEST_CASE("rank-function oracle on the hand example") {
  CHECK(same_bars(oracle::rank_function_barcode(xyz()), Barcode{Bar(0, kInf), Bar(1, 2)}));
}

TEST_CASE("perturb_actions examples") {
  auto c = xyz();
  auto same = perturb_actions(c, {{"x", 0.0}, {"y", 0.0}, {"z", 0.0}});
  CHECK(same.space().values() == c.space().values());
  CHECK(same.boundary() == c.boundary());
  CHECK_THROWS_AS(perturb_actions(c, {{"y", 1.5}}), PreconditionError);
}

TEST_CASE("constant action shift shifts the barcode") {
  Rng rng(4);
  for (int k = 0; k < 100; ++k) {
    auto cw = gen::random_complex<double>(rng, 1 + rng.index(8), -3.0, 3.0, rng.bernoulli(0.3));
    const double s = rng.uniform(-2, 2);
    std::map<std::string, double> delta;
    for (std::size_t i = 0; i < cw.complex.dim(); ++i) delta[cw.complex.space().label(i)] = s;
    auto shifted = barcode_of(perturb_actions(cw.complex, delta));
    // B(F + c) has endpoints moved by +c, i.e. B[−c]
    CHECK(same_bars(shifted, shift(barcode_of(cw.complex), -s), 1e-12));
  }
}

TEST_CASE("stability under small action perturbations") {
  Rng rng(5);
  int tested = 0;
  for (int k = 0; k < 300 && tested < 100; ++k) {
    auto cw = gen::random_complex<double>(rng, 1 + rng.index(8), -3.0, 3.0);
    std::map<std::string, double> delta;
    double sup = 0.0;
    for (std::size_t i = 0; i < cw.complex.dim(); ++i) {
      double d = rng.uniform(-0.1, 0.1);
      delta[cw.complex.space().label(i)] = d;
      sup = std::max(sup, std::abs(d));
    }
    FilteredComplex p;
    try {
      p = perturb_actions(cw.complex, delta);
    } catch (const PreconditionError&) {
      continue;
    }
    ++tested;
    CHECK(bottleneck(barcode_of(cw.complex), barcode_of(p)) <= sup + 1e-12);
  }
  CHECK(tested >= 50);
}

TEST_CASE("short bars: symmetric case") {
  ShortBarQuery q;
  q.W = OrthoSpace({"a", "b", "c"}, {1.0, 1.2, 3.0});
  std::vector<F2Vec> d(3, q.W.zero());
  d[1].set(0);  // ∂b = a
  q.d_C = d;
  q.d_D = d;
  q.E = 0.0;
  q.eta = 0.5;
  CHECK(short_bar_violations(q).empty());
  auto r = compare_short_bars(q);
  CHECK(r.equal);
  REQUIRE(r.c_bars.size() == 1);
  CHECK(r.c_bars == r.d_bars);
  CHECK(r.c_bars[0].first == 1.0);
  CHECK(r.c_bars[0].second == 1.2);
}

TEST_CASE("short bars: hypothesis (1) violation is reported") {
  ShortBarQuery q;
  q.V1 = OrthoSpace({"v"}, {2.0});
  q.W = OrthoSpace({"w"}, {1.0});
  q.d_C = std::vector<F2Vec>(2, F2Vec(2));
  q.V2 = OrthoSpace{};
  q.d_D = std::vector<F2Vec>(1, F2Vec(1));
  q.E = 1.5;
  q.eta = 0.5;
  CHECK_FALSE(short_bar_violations(q).empty());
  CHECK_THROWS_AS(compare_short_bars(q), PreconditionError);
}

TEST_CASE("short bars: random admissible queries agree") {
  Rng rng(6);
  for (int k = 0; k < 100; ++k) {
    auto q = gen::random_short_bar_query(rng, 0.5);
    CHECK(short_bar_violations(q).empty());
    auto r = compare_short_bars(q);
    CHECK(r.equal);
    for (const auto& [l, rr] : r.c_bars) {
      CHECK(rr - l < 0.5);
      CHECK(l > q.E);
    }
  }
}

TEST_CASE("short bars: hypothesis (2) negative control") {
  Rng rng(7);
  for (int k = 0; k < 20; ++k) {
    auto q = gen::random_short_bar_query(rng, 0.5, true);
    auto v = short_bar_violations(q);
    REQUIRE_FALSE(v.empty());
    CHECK(v.front().rfind("hypothesis (2)", 0) == 0);
    CHECK_THROWS_WITH_AS(compare_short_bars(q), doctest::Contains("hypothesis (2)"), PreconditionError);
  }
}
