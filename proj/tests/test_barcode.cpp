#include <doctest.h>

#include "bce/barcode.hpp"
#include "bce/generators.hpp"
#include "bce/oracles.hpp"

#include <functional>

using namespace bce;

namespace {

// Least cost over every partial matching, infinite bars only to infinite bars.
double brute_bottleneck(const Barcode& a, const Barcode& b) {
  const auto& A = a.bars();
  const auto& B = b.bars();
  double best = kInf;
  std::vector<bool> used(B.size(), false);
  std::function<void(std::size_t, double)> rec = [&](std::size_t i, double cost) {
    if (cost >= best) return;
    if (i == A.size()) {
      double c = cost;
      for (std::size_t j = 0; j < B.size(); ++j)
        if (!used[j]) c = std::max(c, B[j].length() / 2.0);
      best = std::min(best, c);
      return;
    }
    rec(i + 1, std::max(cost, A[i].length() / 2.0));
    for (std::size_t j = 0; j < B.size(); ++j) {
      if (used[j] || A[i].infinite() != B[j].infinite()) continue;
      double c = A[i].infinite() ? std::abs(A[i].left - B[j].left) : std::max(std::abs(A[i].left - B[j].left), std::abs(A[i].right - B[j].right));
      used[j] = true;
      rec(i + 1, std::max(cost, c));
      used[j] = false;
    }
  };
  rec(0, 0.0);
  return best;
}

Barcode grid_barcode(Rng& rng, std::size_t n) {
  // endpoints on a coarse grid so ties and equal costs are common
  Barcode b;
  for (std::size_t i = 0; i < n; ++i) {
    double l = static_cast<double>(rng.index(8)) * 0.5;
    if (rng.bernoulli(0.2))
      b.add(l, kInf);
    else
      b.add(l, l + 0.5 * static_cast<double>(1 + rng.index(6)));
  }
  return b;
}

}  // namespace

TEST_CASE("Bar validation") {
  CHECK_THROWS_AS(Bar(1.0, 1.0), InputError);
  CHECK_THROWS_AS(Bar(2.0, 1.0), InputError);
  CHECK_THROWS_AS(Bar(kInf, kInf), InputError);
  CHECK(Bar(0.0, kInf).infinite());
}

TEST_CASE("shift examples") {
  Barcode b{Bar(1, 2)};
  CHECK(same_bars(shift(b, 0.0), b));
  CHECK(same_bars(shift(b, 1.0), Barcode{Bar(0, 1)}));
  CHECK(same_bars(shift(Barcode{Bar(0, kInf)}, 0.7), Barcode{Bar(-0.7, kInf)}));
}

TEST_CASE("truncate examples") {
  Barcode b{Bar(0, kInf), Bar(1, 2), Bar(3, 3.5)};
  CHECK(same_bars(truncate(b, 3.2), Barcode{Bar(0, 3.2, true), Bar(1, 2), Bar(3, 3.2, true)}));
  CHECK(same_bars(truncate(b, kInf), b));
  CHECK(truncate(b, 0.0).empty());
  CHECK(truncate(b, -1.0).empty());
}

TEST_CASE("reparametrize examples") {
  Barcode b{Bar(2, 4)};
  CHECK(same_bars(reparametrize(b, Reparam::identity()), b));
  CHECK(same_bars(reparametrize(b, Reparam::linear(2.0)), Barcode{Bar(1, 2)}));
  Reparam bad{[](double t) { return -t; }, [](double t) { return -t; }};
  CHECK_THROWS_AS(reparametrize(Barcode{Bar(1, 2), Bar(3, 4)}, bad), InputError);
}

TEST_CASE("n_eps, b_eps, positive_short_bars examples") {
  Barcode b{Bar(0, kInf), Bar(1, 2), Bar(3, 3.5)};
  CHECK(n_eps(Barcode{}, 0.1) == 0);
  CHECK(n_eps(b, 0.7) == 2);
  CHECK(n_eps(b, 0.4) == 3);
  CHECK(b_eps(b, 0.5, -1.0) == 0);
  CHECK(b_eps(Barcode{Bar(0, kInf), Bar(1, 2)}, 0.5, 0.5) == 1);
  CHECK(positive_short_bars(Barcode{Bar(0, 1), Bar(0, kInf)}, 5).empty());
  CHECK(same_bars(positive_short_bars(Barcode{Bar(1, 1.5), Bar(0, 9), Bar(2, kInf)}, 1.0), Barcode{Bar(1, 1.5)}));
  CHECK(same_bars(positive_short_bars(Barcode{Bar(1, 1.5), Bar(0, 9), Bar(2, kInf)}, kInf), Barcode{Bar(1, 1.5), Bar(2, kInf)}));
}

TEST_CASE("b_eps sandwich around n_eps of the truncation") {
  Rng rng(8);
  for (int k = 0; k < 100; ++k) {
    auto b = gen::random_barcode(rng, 1 + rng.index(20), 0.0, 10.0);
    double eps = rng.uniform(0.05, 2.0), T = rng.uniform(0.0, 12.0);
    std::size_t n = n_eps(truncate(b, T), eps);
    CHECK(b_eps(b, eps, T - eps) <= n);
    CHECK(n <= b_eps(b, eps, T));
    CHECK(n == n_eps_truncated(b, eps, T));
  }
}

TEST_CASE("operation algebra") {
  Rng rng(12);
  for (int k = 0; k < 100; ++k) {
    auto b = gen::random_barcode(rng, 1 + rng.index(10), -5.0, 5.0);
    double x = rng.uniform(-2, 2), y = rng.uniform(-2, 2);
    CHECK(same_bars(shift(shift(b, x), y), shift(b, x + y), 1e-12));
    double S = rng.uniform(-5, 6), T = rng.uniform(-5, 6);
    CHECK(same_bars(truncate(truncate(b, S), T), truncate(b, std::min(S, T))));
    // act(act(B, f), g) = act(B, f∘g)
    auto f = Reparam::linear(2.0, 1.0), g = Reparam::linear(0.5, -3.0);
    Reparam fg{[=](double t) { return f.f(g.f(t)); }, [=](double t) { return g.inverse(f.inverse(t)); }};
    CHECK(same_bars(reparametrize(reparametrize(b, f), g), reparametrize(b, fg), 1e-12));
    // n_eps non-increasing in eps, b_eps non-decreasing in T
    CHECK(n_eps(b, x * x) >= n_eps(b, x * x + 0.3));
    CHECK(b_eps(b, 0.2, S) <= b_eps(b, 0.2, S + 1.0));
  }
}

TEST_CASE("classify_bars examples") {
  CHECK(classify_bars(Barcode{}, 0.5, 10) == BarTypes{});
  auto t = classify_bars(Barcode{Bar(0, kInf), Bar(1, 1.2), Bar(2, 15)}, 0.5, 10);
  CHECK(t.nI == 2);
  CHECK(t.nII == 0);
  CHECK(t.nIII == 0);
  CHECK(t.nIV == 1);
}

TEST_CASE("bottleneck examples") {
  Barcode a{Bar(0, 2)}, b{Bar(0, 1)};
  CHECK(bottleneck(a, a) == 0.0);
  CHECK(bottleneck(a, b) == doctest::Approx(1.0));
  CHECK(bottleneck(a, Barcode{}) == doctest::Approx(1.0));
  CHECK(bottleneck(Barcode{Bar(0, kInf)}, Barcode{}) == kInf);
  CHECK(bottleneck(Barcode{Bar(0, kInf)}, Barcode{Bar(0.25, kInf)}) == 0.25);
  CHECK_FALSE(interleaved(a, b, 0.9));
  CHECK(interleaved(a, b, 1.0));
  CHECK(interleaved(a, a, 0.0));
}

TEST_CASE("bottleneck matches brute-force enumeration") {
  Rng rng(31);
  for (int k = 0; k < 500; ++k) {
    auto a = grid_barcode(rng, rng.index(5)), b = grid_barcode(rng, rng.index(5));
    if (k % 2) a = gen::random_barcode(rng, rng.index(5), 0, 4), b = gen::random_barcode(rng, rng.index(5), 0, 4);
    auto r = bottleneck_matching(a, b);
    CHECK(r.distance == brute_bottleneck(a, b));
    if (std::isinf(r.distance)) continue;
    // the matching is a partition realizing the distance
    std::vector<int> seen1(a.size(), 0), seen2(b.size(), 0);
    double cost = 0.0;
    for (auto [i, j] : r.matching.pairs) {
      ++seen1[i];
      ++seen2[j];
      cost = std::max(cost, a[i].infinite() ? std::abs(a[i].left - b[j].left)
                                            : std::max(std::abs(a[i].left - b[j].left), std::abs(a[i].right - b[j].right)));
    }
    for (auto i : r.matching.unmatched1) ++seen1[i], cost = std::max(cost, a[i].length() / 2);
    for (auto j : r.matching.unmatched2) ++seen2[j], cost = std::max(cost, b[j].length() / 2);
    CHECK(std::all_of(seen1.begin(), seen1.end(), [](int x) { return x == 1; }));
    CHECK(std::all_of(seen2.begin(), seen2.end(), [](int x) { return x == 1; }));
    CHECK(cost <= r.distance);
  }
}

TEST_CASE("bottleneck is a pseudometric") {
  Rng rng(41);
  for (int k = 0; k < 200; ++k) {
    auto a = gen::random_barcode(rng, rng.index(7), 0, 5, 0.0);
    auto b = gen::random_barcode(rng, rng.index(7), 0, 5, 0.0);
    auto c = gen::random_barcode(rng, rng.index(7), 0, 5, 0.0);
    CHECK(bottleneck(a, a) == 0.0);
    CHECK(bottleneck(a, b) == bottleneck(b, a));
    CHECK(bottleneck(a, c) <= bottleneck(a, b) + bottleneck(b, c) + 1e-12);
  }
}

TEST_CASE("bottleneck on large near-identical barcodes") {
  Rng rng(2);
  auto a = gen::random_barcode(rng, 20000, 0, 100, 0.01);
  Barcode b;
  for (const auto& bar : a.bars()) b.add(bar.left + 1e-3, bar.infinite() ? kInf : bar.right + 1e-3);
  CHECK(bottleneck(a, a) == 0.0);
  CHECK(bottleneck(a, b) <= 1e-3 + 1e-12);
}

TEST_CASE("bottleneck agrees with the interleaving oracle on small barcodes") {
  std::vector<double> grid;
  for (int k = 0; k <= 16; ++k) grid.push_back(0.25 * k);
  Rng rng(17);
  for (int k = 0; k < 200; ++k) {
    auto a = grid_barcode(rng, rng.index(3)), b = grid_barcode(rng, rng.index(3));
    double d = bottleneck(a, b);
    CHECK(oracle::interleaving_distance(a, b, grid) == d);
  }
}
