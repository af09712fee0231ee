#include <doctest.h>

#include "bce/generators.hpp"
#include "bce/io.hpp"
#include "bce/reeb_model.hpp"

#include <cstdio>
#include <filesystem>
#include <map>

using namespace bce;

namespace {

// h(r) = (r−1)², r0 = 3, T = 4, C = 8; s_h(t) = t + t²/4
RadialProfile square() { return RadialProfile::quadratic(3.0, 4.0); }

BarcodeTemplate single_orbit() {
  BarcodeTemplate t;
  t.betti = 1;
  t.spectrum = ReebSpectrum({{1.0, 1}});
  t.period_bars = Barcode{Bar(0, kInf), Bar(1, kInf), Bar(1, kInf)};
  return t;
}

// endpoint incidences keyed by value
std::map<double, std::size_t> incidences(const Barcode& b) {
  std::map<double, std::size_t> m;
  for (const auto& bar : b.bars()) {
    if (bar.left != 0.0) ++m[bar.left];
    if (!bar.infinite()) ++m[bar.right];
  }
  return m;
}

}  // namespace

TEST_CASE("s_h closed form on the quadratic profile") {
  auto p = square();
  CHECK(p.C() == doctest::Approx(8.0));
  CHECK(p.s_h(0.0) == 0.0);
  CHECK(p.s_h(2.0) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(p.s_h(4.0) == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(p.s_h(1.0) == doctest::Approx(1.25).epsilon(1e-12));
  for (double t = 0.0; t <= 4.0; t += 0.125) CHECK(std::abs(p.s_h(t) - (t + t * t / 4)) < 1e-10);
  CHECK_THROWS_AS(p.s_h(-0.5), DomainError);
  CHECK_THROWS_AS(p.s_h(4.5), DomainError);
  CHECK(p.s_h_inverse(3.0) == doctest::Approx(2.0));
}

TEST_CASE("s_h bounds") {
  auto p = square();
  CHECK(s_h_bounds_check(p, 1.0, 1.0));
  CHECK(s_h_bounds_check(p, 0.0, 4.0));
  double gap = p.s_h(4.0) - p.s_h(0.0);
  CHECK(gap >= 4.0);
  CHECK(gap <= 12.0);
  Rng rng(3);
  for (int k = 0; k < 1000; ++k) {
    auto q = gen::random_profile(rng, rng.uniform(0.5, 20));
    double a = rng.uniform(0, q.T()), b = rng.uniform(0, q.T());
    CHECK(s_h_bounds_check(q, std::min(a, b), std::max(a, b)));
  }
}

TEST_CASE("s_h is strictly increasing and hits C at T") {
  Rng rng(4);
  for (int k = 0; k < 50; ++k) {
    auto q = gen::random_profile(rng, rng.uniform(0.5, 20));
    CHECK(std::abs(q.s_h(q.T()) - q.C()) < 1e-9 * std::max(1.0, q.C()));
    double prev = -1.0;
    for (int i = 0; i <= 40; ++i) {
      double v = q.s_h(q.T() * i / 40.0);
      CHECK(v > prev);
      prev = v;
    }
    CHECK(q.C() == doctest::Approx(q.r0() * q.T() - q.h(q.r0())));
  }
}

TEST_CASE("profile constructors reject bad input") {
  CHECK_THROWS_AS(RadialProfile::quadratic(1.0, 2.0), DomainError);
  CHECK_THROWS_AS(RadialProfile::cosh(2.0, 2.0, 0.0), DomainError);
  CHECK_THROWS_AS(RadialProfile::quartic(2.0, 2.0, -1.0), DomainError);
  CHECK_THROWS_AS(RadialProfile::custom([](double r) { return r; }, [](double) { return 1.0; }, 2.0), InputError);
  auto c = RadialProfile::custom([](double r) { return (r - 1) * (r - 1); }, [](double r) { return 2 * (r - 1); }, 3.0);
  CHECK(c.T() == 4.0);
  CHECK(c.s_h(2.0) == doctest::Approx(3.0));
}

TEST_CASE("build_BH examples") {
  auto bh = build_BH(single_orbit(), square());
  CHECK(same_bars(bh, Barcode{Bar(0, kInf), Bar(1.25, kInf), Bar(1.25, kInf)}));
  CHECK(check_bh_bullets(bh, single_orbit(), square()).empty());
  BarcodeTemplate empty;
  empty.betti = 3;
  empty.period_bars = Barcode{Bar(0, kInf), Bar(0, kInf), Bar(0, kInf)};
  CHECK(same_bars(build_BH(empty, square()), empty.period_bars));
  // endpoint past the slope
  BarcodeTemplate far = single_orbit();
  far.spectrum = ReebSpectrum({{5.0, 1}});
  far.period_bars = Barcode{Bar(0, kInf), Bar(5, kInf), Bar(5, kInf)};
  CHECK_THROWS_AS(build_BH(far, square()), DomainError);
  // slope equal to a period
  BarcodeTemplate on = single_orbit();
  on.spectrum = ReebSpectrum({{1.0, 1}, {4.0, 1}});
  on.period_bars = Barcode{Bar(0, kInf), Bar(1, 4), Bar(1, 4)};
  CHECK_THROWS_AS(build_BH(on, square()), DomainError);
}

TEST_CASE("build_SH and the single-orbit step-4 identity") {
  auto t = single_orbit();
  CHECK(same_bars(build_SH(t), t.period_bars));
  auto r = step4_identity(t, square());
  CHECK(r.equal);
  CHECK(same_bars(r.rhs, Barcode{Bar(0, 4, true), Bar(1, 4, true), Bar(1, 4, true)}));
  CHECK(same_bars(r.lhs, r.rhs));
}

TEST_CASE("step-4 identity and goal sandwich on random pairs") {
  Rng rng(5);
  for (int k = 0; k < 50; ++k) {
    auto spec = gen::random_spectrum(rng, 1 + rng.index(30), 0.3, 12.0);
    auto t = gen_template(spec, 1 + rng.index(3), gen::random_policy(rng));
    auto p = gen::random_profile(rng, gen::random_slope(rng, spec, 1.0, 12.0));
    CHECK(step4_identity(t, p).equal);
    for (double eps : {0.05, 0.2, 0.5, 1.0, 2.0}) CHECK(goal_zero_counts(t, p, eps).holds());
    auto bh = build_BH(restrict_below(t, p.T()), p);
    CHECK(check_bh_bullets(bh, restrict_below(t, p.T()), p).empty());
    // incidence at every s_h(t) is twice the multiplicity
    auto inc = incidences(bh);
    for (const auto& e : spec.entries()) {
      if (e.period >= p.T()) continue;
      double a = p.s_h(e.period);
      std::size_t n = 0;
      for (const auto& [v, c] : inc)
        if (std::abs(v - a) < 1e-9) n += c;
      CHECK(n == 2 * e.mult);
    }
  }
}

TEST_CASE("hyperbolic spectrum growth") {
  auto s = gen_spectrum({SpectrumKind::Hyperbolic, 0.3, 40.0, {}, {}}, 7);
  CHECK(s.oracle_growth == 0.3);
  std::vector<double> x, y;
  for (double T = 10.0; T <= 40.0; T += 1.0) {
    x.push_back(T);
    y.push_back(std::log(static_cast<double>(s.count_below(T))));
  }
  double slope = least_squares(x, y).slope;
  CHECK(slope >= 0.285);
  CHECK(slope <= 0.315);
  // deterministic for a fixed seed
  CHECK(gen_spectrum({SpectrumKind::Hyperbolic, 0.3, 40.0, {}, {}}, 7) == s);
  CHECK_THROWS_AS(gen_spectrum({SpectrumKind::Hyperbolic, -1.0, 40.0, {}, {}}, 7), InputError);
}

TEST_CASE("quasiperiodic and custom spectra") {
  auto q = gen_spectrum({SpectrumKind::Quasiperiodic, 0.0, 100.0, {1.0, std::sqrt(2.0)}, {}}, 0);
  CHECK(q.oracle_growth == 0.0);
  CHECK(q.total() == 99 + 70);
  CHECK(q.count_below(10.0) == 9 + 7);
  // collisions collapse into multiplicities
  auto m = gen_spectrum({SpectrumKind::Quasiperiodic, 0.0, 7.0, {1.0, 2.0}, {}}, 0);
  CHECK(m.count_below(7.0) == 6 + 3);
  CHECK(m.size() == 6);

  auto path = (std::filesystem::temp_directory_path() / "bce_spec_test.json").string();
  write_text_file(path, spectrum_to_json(q));
  SpectrumParams c;
  c.kind = SpectrumKind::Custom;
  c.path = path;
  CHECK(gen_spectrum(c, 0) == q);
  std::remove(path.c_str());
  CHECK_THROWS_AS(gen_spectrum(c, 0), IoError);
}

TEST_CASE("gen_template examples") {
  ReebSpectrum s({{1.0, 1}, {2.0, 1}});
  auto t = gen_template(s, 2, TemplatePolicy{PolicyKind::Nested, 0, 0, 0});
  CHECK(validate_template(t).empty());
  CHECK(t.period_bars.size() == 4);
  auto e = gen_template(ReebSpectrum{}, 2, TemplatePolicy{});
  CHECK(same_bars(e.period_bars, Barcode{Bar(0, kInf), Bar(0, kInf)}));
  CHECK_THROWS_AS(gen_template(s, 0, TemplatePolicy{}), PreconditionError);
  // a bad pairing is caught by the validator
  BarcodeTemplate bad{1, Barcode{Bar(0, kInf), Bar(1, 2)}, s};
  CHECK_FALSE(validate_template(bad).empty());
  CHECK(parse_policy("short-bias") == PolicyKind::ShortBias);
  CHECK_THROWS_AS(parse_policy("greedy"), InputError);
}

TEST_CASE("random policies always give valid templates") {
  Rng rng(6);
  for (int k = 0; k < 100; ++k) {
    auto spec = gen::random_spectrum(rng, rng.index(40), 0.1, 20.0);
    auto t = gen_template(spec, 1 + rng.index(4), gen::random_policy(rng));
    CHECK(validate_template(t).empty());
    std::size_t zero = 0;
    for (const auto& b : t.period_bars.bars()) zero += b.left == 0.0;
    CHECK(zero == t.betti);
  }
}

TEST_CASE("short_bias controls the number of short bars") {
  std::vector<double> periods;
  for (int i = 1; i <= 200; ++i) periods.push_back(0.05 * i);
  auto spec = ReebSpectrum::from_periods(periods);
  auto none = gen_template(spec, 1, TemplatePolicy{PolicyKind::ShortBias, 1, 0.0, 0.5});
  auto all = gen_template(spec, 1, TemplatePolicy{PolicyKind::ShortBias, 1, 1.0, 0.5});
  CHECK(n_eps(all.period_bars, 0.2) < n_eps(none.period_bars, 0.2));
}

TEST_CASE("restrict_below and reshuffle_long_bars") {
  Rng rng(7);
  for (int k = 0; k < 50; ++k) {
    auto spec = gen::random_spectrum(rng, 1 + rng.index(30), 0.2, 10.0);
    auto t = gen_template(spec, 1 + rng.index(3), gen::random_policy(rng));
    double T = gen::random_slope(rng, spec, 0.5, 10.0);
    auto r = restrict_below(t, T);
    CHECK(validate_template(r).empty());
    for (const auto& b : r.period_bars.bars()) CHECK(b.left < T);
    CHECK(r.spectrum.count_below(kInf) == spec.count_below(T));

    double C = rng.uniform(0.2, 3.0);
    auto s = reshuffle_long_bars(t, C, k);
    CHECK(validate_template(s).empty());
    Barcode short_t, short_s;
    for (const auto& b : t.period_bars.bars())
      if (b.length() <= C) short_t.add(b);
    for (const auto& b : s.period_bars.bars())
      if (b.length() <= C) short_s.add(b);
    CHECK(same_bars(short_t, short_s));
    CHECK(s.betti == t.betti);
    CHECK(incidences(s.period_bars) == incidences(t.period_bars));
  }
}

TEST_CASE("morse_perturb model") {
  auto t = single_orbit();
  auto p = square();
  auto bh = build_BH(t, p);
  // spacing is s_h(1) − 0 = 1.25
  CHECK(action_spacing(t, p) == doctest::Approx(1.25));
  CHECK_THROWS_AS(morse_perturb(bh, p, t, 0.5, 1), PreconditionError);
  CHECK_THROWS_AS(morse_perturb(bh, p, t, 0.1, 2), PreconditionError);
  auto m = morse_perturb(bh, p, t, 0.1, 1);
  CHECK(m.size() == bh.size());
  CHECK(bottleneck(m, bh) <= 0.1 + 1e-12);
  auto m5 = morse_perturb(bh, p, t, 0.1, 5);
  CHECK(m5.size() == bh.size() + 2);
}

TEST_CASE("morse_perturb properties on random models") {
  Rng rng(8);
  int tested = 0;
  for (int k = 0; k < 200 && tested < 50; ++k) {
    auto spec = gen::random_spectrum(rng, 1 + rng.index(8), 0.5, 10.0);
    auto p = gen::random_profile(rng, gen::random_slope(rng, spec, 1.0, 11.0));
    auto t = restrict_below(gen_template(spec, 1 + rng.index(3), gen::random_policy(rng)), p.T());
    auto bh = build_BH(t, p);
    double spacing = action_spacing(t, p);
    if (std::isinf(spacing)) spacing = 1.0;  // no orbit below the slope
    double delta = rng.uniform(0.01, 0.33) * spacing;
    std::size_t n_crit = t.betti + 2 * rng.index(3);
    auto m = morse_perturb(bh, p, t, delta, n_crit);
    ++tested;
    CHECK(bottleneck(m, bh) <= delta + 1e-9);
    std::size_t in_unit = 0, betti_left = 0;
    for (const auto& b : m.bars()) {
      if (b.right <= delta + 1e-12) ++in_unit;
      if (b.left <= delta + 1e-12 && b.infinite()) ++betti_left;
      // no bar (s_h(t), s_h(t) + δ]
      for (const auto& e : t.spectrum.entries())
        CHECK_FALSE((std::abs(b.left - p.s_h(e.period)) < 1e-9 && std::abs(b.right - p.s_h(e.period) - delta) < 1e-9));
    }
    CHECK(in_unit == (n_crit - t.betti) / 2);
    // incidences split: mult at s_h(t) and mult at s_h(t) + δ
    auto inc = incidences(m);
    for (const auto& e : t.spectrum.entries()) {
      double a = p.s_h(e.period);
      std::size_t lo = 0, hi = 0;
      for (const auto& [v, c] : inc) {
        if (std::abs(v - a) < 1e-9) lo += c;
        if (std::abs(v - a - delta) < 1e-9) hi += c;
      }
      CHECK(lo == e.mult);
      CHECK(hi == e.mult);
    }
    // shrinking δ: bound δ_i and monotone approach
    double prev = kInf;
    for (int i = 1; i <= 12; ++i) {
      double d = std::ldexp(1.0, -i);
      if (3 * d >= spacing) continue;
      double dist = bottleneck(morse_perturb(bh, p, t, d, n_crit), bh);
      CHECK(dist <= d + 1e-9);
      CHECK(dist <= prev + 1e-12);
      prev = dist;
    }
  }
  CHECK(tested == 50);
}

TEST_CASE("scaling_sequence") {
  ReebSpectrum s({{2.0, 1}, {3.0, 1}, {4.0, 1}});
  auto a = scaling_sequence(s, 1.0, 6);
  REQUIRE(a.size() == 6);
  for (std::size_t i = 0; i < a.size(); ++i) {
    double di = static_cast<double>(i + 1);
    CHECK(a[i] > di - std::ldexp(1.0, -static_cast<int>(i + 1)));
    CHECK(a[i] < di + std::ldexp(1.0, -static_cast<int>(i + 1)));
    CHECK_FALSE(s.contains(a[i] * 1.0));
  }
  CHECK(a[0] == 1.0);
  CHECK(a[1] != 2.0);
}

TEST_CASE("profile scaling") {
  auto p = square().scaled(2.0);
  CHECK(p.T() == doctest::Approx(8.0));
  CHECK(p.C() == doctest::Approx(16.0));
  CHECK(p.r0() == 3.0);
  CHECK(p.s_h(4.0) == doctest::Approx(2.0 * square().s_h(2.0)));
}
