#include "bce/checks.hpp"

#include "bce/entropy.hpp"
#include "bce/generators.hpp"
#include "bce/oracles.hpp"
#include "bce/triangle.hpp"

#include <json.hpp>

#include <atomic>
#include <map>
#include <numbers>
#include <thread>

namespace bce::checks {

using nlohmann::json;
using Outcome = std::optional<std::string>;

std::string to_string(Mode m) { return m == Mode::Float ? "float" : "rational"; }

Mode parse_mode(const std::string& s) {
  if (s == "float") return Mode::Float;
  if (s == "rational") return Mode::Rational;
  throw InputError("unknown mode '" + s + "' (expected float or rational)");
}

std::vector<std::optional<std::string>> parallel_for(std::size_t n, std::size_t jobs,
                                                     const std::function<std::optional<std::string>(std::size_t)>& f) {
  std::vector<std::optional<std::string>> out(n);
  jobs = std::max<std::size_t>(1, std::min(jobs, n));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t j = 0; j < jobs; ++j)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) out[i] = f(i);
    });
  for (auto& t : pool) t.join();
  return out;
}

namespace {

json endpoint(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

json bars_json(const Barcode& b) {
  json a = json::array();
  for (const auto& bar : b.sorted().bars()) a.push_back(json::array({endpoint(bar.left), endpoint(bar.right)}));
  return a;
}

template <class V>
json value_json(const V& v) {
  if constexpr (ValueTraits<V>::exact)
    return format_rational(v);
  else
    return endpoint(v);
}

template <class V>
json values_json(const std::vector<V>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(value_json(v));
  return a;
}

json matrix_json(const std::vector<F2Vec>& cols) {
  json a = json::array();
  for (const auto& c : cols) {
    std::string s;
    for (std::size_t r = 0; r < c.size(); ++r) s += c.test(r) ? '1' : '0';
    a.push_back(s);
  }
  return a;
}

template <class V>
json space_json(const OrthoSpaceT<V>& s) {
  return {{"labels", s.labels()}, {"values", values_json(s.values())}};
}

json profile_json(const RadialProfile& p) { return {{"profile", p.describe()}, {"r0", p.r0()}, {"T", p.T()}, {"C", p.C()}}; }

json template_json(const BarcodeTemplate& t) {
  json e = json::array();
  for (const auto& en : t.spectrum.entries()) e.push_back(json::array({en.period, en.mult}));
  return {{"betti", t.betti}, {"spectrum", e}, {"bars", bars_json(t.period_bars)}};
}

Outcome fail(json j) { return j.dump(); }

// Random template over a small random spectrum.
BarcodeTemplate small_template(Rng& rng, std::size_t max_periods, double hi) {
  auto spec = gen::random_spectrum(rng, 1 + rng.index(max_periods), 0.3, hi);
  std::size_t betti = 1 + rng.index(3);
  return gen_template(spec, betti, gen::random_policy(rng));
}

template <class V>
Outcome svd_instance(Rng& rng) {
  auto A = gen::random_map<V>(rng, 4);
  auto got = svd(A).gaps();
  std::sort(got.begin(), got.end());
  auto ref = oracle::svd_gaps(A);
  bool ok = ref.gap_multisets.size() == 1 && ref.gap_multisets[0].size() == got.size();
  if (ok)
    for (std::size_t i = 0; i < got.size(); ++i) ok = ok && ValueTraits<V>::equal(got[i], ref.gap_multisets[0][i]);
  if (ok) return std::nullopt;
  json alts = json::array();
  for (const auto& g : ref.gap_multisets) alts.push_back(values_json(g));
  return fail({{"domain", space_json(A.domain())}, {"codomain", space_json(A.codomain())}, {"matrix", matrix_json(A.columns())},
               {"svd_gaps", values_json(got)}, {"oracle_gaps", alts}});
}

template <class V>
Outcome spectrum_instance(Rng& rng) {
  const std::size_t n = 1 + rng.index(6);
  OrthoSpaceT<V> s(gen::make_labels("g", n), rng.bernoulli(0.5) ? gen::tied_values<V>(rng, n, 1 + rng.index(n), -5, 5) : gen::distinct_values<V>(rng, n, -5, 5));
  std::vector<F2Vec> standard;
  for (std::size_t i = 0; i < n; ++i) standard.push_back(s.basis(i));
  auto basis = gen::random_orthogonal_basis(rng, s);
  auto a = norm_spectrum(s, standard);
  auto b = norm_spectrum(s, basis);
  bool ok = a.size() == b.size();
  for (std::size_t i = 0; ok && i < a.size(); ++i) ok = ValueTraits<V>::exact ? a[i] == b[i] : a[i] == b[i];
  if (ok) return std::nullopt;
  return fail({{"space", space_json(s)}, {"basis", matrix_json(basis)}, {"standard", values_json(a)}, {"changed", values_json(b)}});
}

// Bars with endpoints in {0,1,2,3,∞}; every multiset of at most two.
std::vector<Barcode> small_barcodes() {
  std::vector<Bar> bars;
  const double ends[] = {0, 1, 2, 3, kInf};
  for (double a : ends)
    for (double b : ends)
      if (std::isfinite(a) && a < b) bars.emplace_back(a, b);
  std::vector<Barcode> out{Barcode{}};
  for (std::size_t i = 0; i < bars.size(); ++i) {
    out.push_back(Barcode{bars[i]});
    for (std::size_t j = i; j < bars.size(); ++j) out.push_back(Barcode{bars[i], bars[j]});
  }
  return out;
}

Outcome isometry_instance(const Barcode& b1, const Barcode& b2) {
  static const std::vector<double> grid = [] {
    std::vector<double> g;
    for (int k = 0; k <= 8; ++k) g.push_back(0.5 * k);
    return g;
  }();
  double bot = bottleneck(b1, b2);
  double itl = oracle::interleaving_distance(b1, b2, grid);
  if (std::isinf(bot) ? bot == itl : std::abs(bot - itl) <= 1e-9) return std::nullopt;
  return fail({{"b1", bars_json(b1)}, {"b2", bars_json(b2)}, {"bottleneck", endpoint(bot)}, {"interleaving", endpoint(itl)}});
}

Outcome stability_instance(Rng& rng) {
  const std::size_t n = 1 + rng.index(8);
  auto c = gen::random_complex<double>(rng, n, -3.0, 3.0, rng.bernoulli(0.3)).complex;
  const double delta = rng.uniform(0.0, 0.1);
  std::map<std::string, double> shift;
  FilteredComplex p;
  bool valid = false;
  for (int attempt = 0; attempt < 20 && !valid; ++attempt) {
    for (const auto& l : c.space().labels()) shift[l] = rng.uniform(-delta, delta);
    try {
      p = perturb_actions(c, shift);
      valid = true;
    } catch (const PreconditionError&) {
    }
  }
  if (!valid) {
    // Equal shifts on each action level, sorted by level, keep ∂ action-decreasing.
    const auto& ord = c.space().order();
    std::vector<double> d;
    for (std::size_t i = 0; i < n; ++i) d.push_back(rng.uniform(-delta, delta));
    std::sort(d.begin(), d.end());
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0 && !approx_equal(c.space().value(ord[i]), c.space().value(ord[i - 1]))) ++k;
      shift[c.space().label(ord[i])] = d[k];
    }
    p = perturb_actions(c, shift);
  }
  double sup = 0.0;
  for (const auto& [l, v] : shift) sup = std::max(sup, std::abs(v));
  auto b1 = barcode_of(c), b2 = barcode_of(p);
  double d = bottleneck(b1, b2);
  if (d <= sup + 1e-9) return std::nullopt;
  return fail({{"before", bars_json(b1)}, {"after", bars_json(b2)}, {"sup_shift", sup}, {"bottleneck", endpoint(d)}});
}

const std::vector<double>& eps_grid6() {
  static const std::vector<double> g = default_eps_grid(1.0, 6);
  return g;
}

Outcome equivalence_instance(Rng& rng) {
  auto t = small_template(rng, 40, 12.0);
  double T = gen::random_slope(rng, t.spectrum, 1.0, 12.0);
  auto p = gen::random_profile(rng, T);
  auto s4 = step4_identity(t, p);
  if (!s4.equal)
    return fail({{"template", template_json(t)}, {"profile", profile_json(p)}, {"act_tru_BH", bars_json(s4.lhs)}, {"tru_BSH", bars_json(s4.rhs)}});
  for (double eps : eps_grid6()) {
    auto g = goal_zero_counts(t, p, eps);
    if (!g.holds())
      return fail({{"template", template_json(t)}, {"profile", profile_json(p)}, {"eps", eps}, {"lower", g.lower}, {"middle", g.middle}, {"upper", g.upper}});
  }
  return std::nullopt;
}

Outcome short_bars_instance(Rng& rng) {
  const double eta = rng.uniform(0.1, 1.0);
  auto q = gen::random_short_bar_query(rng, eta);
  auto rep = compare_short_bars(q);
  auto query_json = [](const ShortBarQuery& q) {
    return json{{"V1", space_json(q.V1)}, {"V2", space_json(q.V2)}, {"W", space_json(q.W)}, {"d_C", matrix_json(q.d_C)},
                {"d_D", matrix_json(q.d_D)}, {"E", q.E}, {"eta", q.eta}};
  };
  auto ivs = [](const std::vector<Interval>& v) {
    json a = json::array();
    for (const auto& [l, r] : v) a.push_back(json::array({l, r}));
    return a;
  };
  if (!rep.equal) return fail({{"query", query_json(q)}, {"c_bars", ivs(rep.c_bars)}, {"d_bars", ivs(rep.d_bars)}});
  auto bad = gen::random_short_bar_query(rng, eta, true);
  try {
    compare_short_bars(bad);
  } catch (const PreconditionError&) {
    return std::nullopt;
  }
  return fail({{"query", query_json(bad)}, {"reason", "hypothesis (2) violation was accepted"}});
}

Outcome invariance_instance(Rng& rng) {
  auto t1 = small_template(rng, 30, 10.0);
  const double C = rng.uniform(0.2, 3.0);
  auto t2 = reshuffle_long_bars(t1, C, rng.next_u64());
  auto sh1 = build_SH(t1), sh2 = build_SH(t2);
  for (int k = 0; k < 10; ++k) {
    double T = gen::random_slope(rng, t1.spectrum, 0.5, 11.0);
    double eps = C * rng.uniform(0.05, 1.0);
    std::size_t N = t1.spectrum.count_below(T);
    auto a = invariance_counts(sh1, eps, T, t1.betti, N);
    auto b = invariance_counts(sh2, eps, T, t2.betti, N);
    if (a.identity_ok && b.identity_ok && a.sandwich_ok && b.sandwich_ok && a.n_Y == b.n_Y) continue;
    auto types = [](const BarTypes& x) { return json{{"I", x.nI}, {"II", x.nII}, {"III", x.nIII}, {"IV", x.nIV}}; };
    return fail({{"template", template_json(t1)}, {"reshuffled", bars_json(sh2)}, {"C", C}, {"T", T}, {"eps", eps}, {"N_T", N},
                 {"types1", types(a.types)}, {"types2", types(b.types)}, {"n_Y1", a.n_Y}, {"n_Y2", b.n_Y}});
  }
  return std::nullopt;
}

struct EntropyFixture {
  SpectrumParams params;
  double expected;  // growth rate, or an upper bound for quasiperiodic
  bool bound_only;
};

EntropyFixture entropy_fixture(std::size_t i) {
  EntropyFixture f;
  switch (i % 3) {
    case 0:
      f.params.kind = SpectrumKind::Hyperbolic;
      f.params.rate = 0.3;
      f.params.t_max = 40.0;
      f.expected = 0.3;
      f.bound_only = false;
      break;
    case 1:
      f.params.kind = SpectrumKind::Hyperbolic;
      f.params.rate = 0.5;
      f.params.t_max = 25.0;
      f.expected = 0.5;
      f.bound_only = false;
      break;
    default:
      f.params.kind = SpectrumKind::Quasiperiodic;
      f.params.base = {1.0, std::sqrt(2.0), std::numbers::pi / 2.0};
      f.params.t_max = 200.0;
      f.expected = 0.02;
      f.bound_only = true;
      break;
  }
  return f;
}

Outcome entropy_instance(std::size_t i, std::uint64_t seed) {
  auto f = entropy_fixture(i);
  auto spec = gen_spectrum(f.params, seed);
  TemplatePolicy pol;
  pol.kind = PolicyKind::Random;
  pol.seed = Rng::derive(seed, 1);
  pol.min_length = 0.2;
  auto t = gen_template(spec, 1, pol);
  auto grid = parse_grid("1:" + format_double(f.params.t_max) + ":80");
  auto s = entropy_eps(build_SH(t), 0.1, grid);
  bool ok = f.bound_only ? s.slope <= f.expected : std::abs(s.slope - f.expected) <= 0.05 * f.expected;
  if (ok && !s.degenerate) return std::nullopt;
  return fail({{"spectrum", spec.label}, {"orbits", spec.total()}, {"slope", s.slope}, {"expected", f.expected}, {"bound_only", f.bound_only},
               {"degenerate", s.degenerate}});
}

Outcome triangle_instance(std::size_t i, Rng& rng) {
  auto t = small_template(rng, 30, 10.0);
  auto sh = build_SH(t);
  auto tag = static_cast<TriangleTag>(i % 3);
  auto tri = model_triangle(sh, t.betti, tag);
  for (int k = 0; k < 5; ++k) {
    double delta = rng.uniform(0.01, 1.0);
    double T = rng.uniform(0.5, 11.0);
    if (!triangle_count_check(tri, delta, T))
      return fail({{"tag", to_string(tag)}, {"U", bars_json(tri.U)}, {"V", bars_json(tri.V)}, {"W", bars_json(tri.W)}, {"delta", delta}, {"T", T}});
  }
  auto rep = entropy_sandwich(sh, t.betti, rng.uniform(0.02, 0.5), parse_grid("0.5:11:12"));
  if (rep.violations == 0) return std::nullopt;
  for (const auto& row : rep.rows)
    if (!row.ok)
      return fail({{"sh", bars_json(sh)}, {"betti", t.betti}, {"T", row.T}, {"lower", row.lower}, {"middle", row.middle}, {"upper", row.upper}});
  return fail({{"sh", bars_json(sh)}, {"reason", "sandwich violation"}});
}

Outcome sh_bounds_instance(Rng& rng) {
  const double T = rng.uniform(0.5, 20.0);
  auto p = gen::random_profile(rng, T);
  double t1 = rng.uniform(0.0, T), t2 = rng.uniform(0.0, T);
  if (t1 > t2) std::swap(t1, t2);
  if (s_h_bounds_check(p, t1, t2)) return std::nullopt;
  return fail({{"profile", profile_json(p)}, {"t1", t1}, {"t2", t2}, {"s1", p.s_h(t1)}, {"s2", p.s_h(t2)}});
}

Outcome cauchy_instance(Rng& rng) {
  auto t = small_template(rng, 8, 10.0);
  double T = gen::random_slope(rng, t.spectrum, 1.0, 11.0);
  auto p = gen::random_profile(rng, T);
  auto tr = restrict_below(t, T);
  auto bh = build_BH(tr, p);
  const std::size_t n_crit = tr.betti + 2 * rng.index(4);
  const double spacing = action_spacing(tr, p);
  double prev = kInf;
  json seq = json::array();
  bool ok = true;
  for (int i = 1; i <= 12; ++i) {
    const double delta = std::ldexp(1.0, -i);
    if (!(3.0 * delta < spacing)) continue;
    double d = bottleneck(morse_perturb(bh, p, tr, delta, n_crit), bh);
    seq.push_back(json::array({delta, d}));
    if (d > delta + 1e-9 || d > prev + 1e-12) ok = false;
    prev = d;
  }
  if (ok) return std::nullopt;
  return fail({{"template", template_json(tr)}, {"profile", profile_json(p)}, {"n_crit", n_crit}, {"sequence", seq}});
}

using Instance = std::function<Outcome(std::size_t, Rng&)>;

struct Suite {
  std::size_t default_count;
  bool fixed_count;  // instance set is exhaustive
  Instance run;
};

const std::map<std::string, Suite>& registry(Mode mode) {
  static const std::map<std::string, Suite> fl = [] {
    std::map<std::string, Suite> m;
    static const std::vector<Barcode> small = small_barcodes();
    m["svd"] = {200, false, [](std::size_t, Rng& r) { return svd_instance<double>(r); }};
    m["spectrum"] = {500, false, [](std::size_t, Rng& r) { return spectrum_instance<double>(r); }};
    m["isometry"] = {small.size() * small.size(), true,
                     [](std::size_t i, Rng&) { return isometry_instance(small[i / small.size()], small[i % small.size()]); }};
    m["stability"] = {200, false, [](std::size_t, Rng& r) { return stability_instance(r); }};
    m["equivalence"] = {50, false, [](std::size_t, Rng& r) { return equivalence_instance(r); }};
    m["short-bars"] = {100, false, [](std::size_t, Rng& r) { return short_bars_instance(r); }};
    m["invariance"] = {100, false, [](std::size_t, Rng& r) { return invariance_instance(r); }};
    m["entropy"] = {3, false, [](std::size_t i, Rng& r) { return entropy_instance(i, r.next_u64()); }};
    m["triangle"] = {100, false, [](std::size_t i, Rng& r) { return triangle_instance(i, r); }};
    m["sh-bounds"] = {1000, false, [](std::size_t, Rng& r) { return sh_bounds_instance(r); }};
    m["cauchy"] = {50, false, [](std::size_t, Rng& r) { return cauchy_instance(r); }};
    return m;
  }();
  static const std::map<std::string, Suite> q = [] {
    auto m = fl;
    m["svd"].run = [](std::size_t, Rng& r) { return svd_instance<Rational>(r); };
    m["spectrum"].run = [](std::size_t, Rng& r) { return spectrum_instance<Rational>(r); };
    return m;
  }();
  return mode == Mode::Rational ? q : fl;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"svd", "spectrum", "isometry", "stability", "equivalence", "short-bars", "invariance", "entropy", "triangle", "sh-bounds", "cauchy"};
}

CheckReport run_suite(const std::string& name, const CheckOptions& opts) {
  const auto& reg = registry(opts.mode);
  auto it = reg.find(name);
  if (it == reg.end()) throw InputError("unknown suite '" + name + "'");
  const Suite& s = it->second;
  CheckReport rep;
  rep.suite = name;
  rep.instances = s.fixed_count || opts.count == 0 ? s.default_count : opts.count;
  if (s.fixed_count && opts.count != 0) rep.note = "exhaustive suite, count ignored";
  std::uint64_t stream_base = 1469598103934665603ULL;  // FNV-1a of the name
  for (unsigned char ch : name) stream_base = (stream_base ^ ch) * 1099511628211ULL;
  auto results = parallel_for(rep.instances, opts.jobs, [&](std::size_t i) -> Outcome {
    Rng rng(Rng::derive(Rng::derive(opts.seed, stream_base), i));
    try {
      return s.run(i, rng);
    } catch (const Error& e) {
      return json{{"instance", i}, {"error", e.what()}}.dump();
    }
  });
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (!results[i]) continue;
    if (rep.failures++ == 0) {
      rep.first_failure = i;
      rep.counterexample = *results[i];
    }
  }
  return rep;
}

std::vector<CheckReport> run_suites(const std::string& name, const CheckOptions& opts) {
  if (name != "all") return {run_suite(name, opts)};
  std::vector<CheckReport> out;
  for (const auto& n : suite_names()) out.push_back(run_suite(n, opts));
  return out;
}

std::string reports_to_json(const std::vector<CheckReport>& reports, const CheckOptions& opts) {
  json j;
  j["seed"] = opts.seed;
  j["mode"] = to_string(opts.mode);
  j["tolerance"] = tolerance();
  json arr = json::array();
  bool all = true;
  for (const auto& r : reports) {
    json e{{"suite", r.suite}, {"instances", r.instances}, {"failures", r.failures}, {"passed", r.passed()}};
    if (!r.passed()) {
      e["first_failure"] = r.first_failure;
      e["counterexample"] = json::parse(r.counterexample);
    }
    if (!r.note.empty()) e["note"] = r.note;
    all = all && r.passed();
    arr.push_back(e);
  }
  j["suites"] = arr;
  j["passed"] = all;
  return j.dump(2) + "\n";
}

}  // namespace bce::checks
