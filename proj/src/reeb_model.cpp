#include "bce/reeb_model.hpp"

#include "bce/io.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace bce {

// ---- spectrum ------------------------------------------------------------

ReebSpectrum::ReebSpectrum(std::vector<SpectrumEntry> entries, std::optional<double> growth, std::string lbl)
    : oracle_growth(growth), label(std::move(lbl)), entries_(std::move(entries)) {
  std::size_t acc = 0;
  prefix_.reserve(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (!std::isfinite(e.period) || !(e.period > 0.0)) throw InputError("spectrum: period must be positive and finite, got " + format_double(e.period));
    if (e.mult == 0) throw InputError("spectrum: zero multiplicity at period " + format_double(e.period));
    if (i > 0 && !(entries_[i - 1].period < e.period)) throw InputError("spectrum: periods must be strictly increasing at " + format_double(e.period));
    acc += e.mult;
    prefix_.push_back(acc);
  }
  if (oracle_growth && !std::isfinite(*oracle_growth)) throw InputError("spectrum: oracle_growth must be finite");
}

ReebSpectrum ReebSpectrum::from_periods(std::vector<double> periods, std::optional<double> growth, std::string lbl, double merge_tol) {
  std::sort(periods.begin(), periods.end());
  std::vector<SpectrumEntry> entries;
  for (double p : periods) {
    if (!entries.empty() && p - entries.back().period <= merge_tol)
      ++entries.back().mult;
    else
      entries.push_back({p, 1});
  }
  return ReebSpectrum(std::move(entries), growth, std::move(lbl));
}

std::size_t ReebSpectrum::count_below(double T) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), T, [](const SpectrumEntry& e, double t) { return e.period < t; });
  auto k = static_cast<std::size_t>(it - entries_.begin());
  return k == 0 ? 0 : prefix_[k - 1];
}

double ReebSpectrum::min_gap() const {
  double g = kInf;
  for (std::size_t i = 1; i < entries_.size(); ++i) g = std::min(g, entries_[i].period - entries_[i - 1].period);
  return g;
}

std::optional<std::size_t> ReebSpectrum::find(double t, double tol) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), t - tol, [](const SpectrumEntry& e, double x) { return e.period < x; });
  if (it != entries_.end() && it->period <= t + tol) return static_cast<std::size_t>(it - entries_.begin());
  return std::nullopt;
}

ReebSpectrum ReebSpectrum::below(double T) const {
  std::vector<SpectrumEntry> e;
  for (const auto& x : entries_)
    if (x.period < T) e.push_back(x);
  return ReebSpectrum(std::move(e), oracle_growth, label);
}

ReebSpectrum gen_spectrum(const SpectrumParams& params, std::uint64_t seed) {
  switch (params.kind) {
    case SpectrumKind::Hyperbolic: {
      if (!(params.rate > 0.0) || !std::isfinite(params.rate)) throw InputError("hyperbolic spectrum needs a positive rate");
      if (!(params.t_max > 0.0) || !std::isfinite(params.t_max)) throw InputError("hyperbolic spectrum needs a positive T_max");
      if (params.rate * params.t_max > 20.0) throw CapabilityError("rate*T_max above 20 would generate more than e^20 periods");
      // Poisson process with intensity h·e^{ht}: invert the compensator e^{ht} − 1.
      Rng rng(seed);
      std::vector<double> periods;
      double s = 0.0;
      for (;;) {
        s += rng.exponential(1.0);
        double t = std::log1p(s) / params.rate;
        if (t >= params.t_max) break;
        periods.push_back(t);
      }
      std::ostringstream lbl;
      lbl << "hyperbolic(h=" << format_double(params.rate) << ",T_max=" << format_double(params.t_max) << ",seed=" << seed << ")";
      return ReebSpectrum::from_periods(std::move(periods), params.rate, lbl.str());
    }
    case SpectrumKind::Quasiperiodic: {
      if (params.base.empty()) throw InputError("quasiperiodic spectrum needs base periods");
      if (!(params.t_max > 0.0) || !std::isfinite(params.t_max)) throw InputError("quasiperiodic spectrum needs a positive T_max");
      std::vector<double> periods;
      std::ostringstream lbl;
      lbl << "quasiperiodic(base=";
      for (std::size_t i = 0; i < params.base.size(); ++i) {
        double w = params.base[i];
        if (!(w > 0.0) || !std::isfinite(w)) throw InputError("quasiperiodic base periods must be positive");
        lbl << (i ? "," : "") << format_double(w);
        for (std::size_t n = 1; static_cast<double>(n) * w < params.t_max; ++n) periods.push_back(static_cast<double>(n) * w);
      }
      lbl << ";T_max=" << format_double(params.t_max) << ")";
      return ReebSpectrum::from_periods(std::move(periods), 0.0, lbl.str());
    }
    case SpectrumKind::Custom:
      if (params.path.empty()) throw InputError("custom spectrum needs a file path");
      return read_spectrum_file(params.path);
  }
  throw InputError("unknown spectrum kind");
}

// ---- radial profile ------------------------------------------------------

RadialProfile::RadialProfile(Shape shape, double param, double r0, double T, std::function<double(double)> h, std::function<double(double)> dh)
    : shape_(shape), param_(param), r0_(r0), T_(T), h_core_(std::move(h)), dh_core_(std::move(dh)) {
  if (!(r0_ > 1.0) || !std::isfinite(r0_)) throw DomainError("profile: r0 must exceed 1");
  if (!(T_ > 0.0) || !std::isfinite(T_)) throw DomainError("profile: slope must be positive");
  C_ = r0_ * T_ - h_core_(r0_);
}

RadialProfile RadialProfile::quadratic(double r0, double T) {
  if (!(r0 > 1.0)) throw DomainError("profile: r0 must exceed 1");
  const double k = T / (2.0 * (r0 - 1.0));
  return RadialProfile(Shape::Quadratic, 0.0, r0, T, [k](double r) { return k * (r - 1.0) * (r - 1.0); }, [k](double r) { return 2.0 * k * (r - 1.0); });
}

RadialProfile RadialProfile::cosh(double r0, double T, double gamma) {
  if (!(r0 > 1.0)) throw DomainError("profile: r0 must exceed 1");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw DomainError("cosh profile: gamma must be positive");
  const double k = T / (gamma * std::sinh(gamma * (r0 - 1.0)));
  return RadialProfile(
      Shape::Cosh, gamma, r0, T, [k, gamma](double r) { return k * (std::cosh(gamma * (r - 1.0)) - 1.0); },
      [k, gamma](double r) { return k * gamma * std::sinh(gamma * (r - 1.0)); });
}

RadialProfile RadialProfile::quartic(double r0, double T, double beta) {
  if (!(r0 > 1.0)) throw DomainError("profile: r0 must exceed 1");
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw DomainError("quartic profile: beta must be non-negative");
  const double x0 = r0 - 1.0;
  const double k = T / (2.0 * x0 + 4.0 * beta * x0 * x0 * x0);
  return RadialProfile(
      Shape::Quartic, beta, r0, T,
      [k, beta](double r) {
        double x = r - 1.0;
        return k * (x * x + beta * x * x * x * x);
      },
      [k, beta](double r) {
        double x = r - 1.0;
        return k * (2.0 * x + 4.0 * beta * x * x * x);
      });
}

RadialProfile RadialProfile::custom(std::function<double(double)> h, std::function<double(double)> dh, double r0) {
  if (!h || !dh) throw InputError("custom profile needs h and h'");
  if (!(r0 > 1.0) || !std::isfinite(r0)) throw DomainError("profile: r0 must exceed 1");
  const double T = dh(r0);
  if (!(T > 0.0) || !std::isfinite(T)) throw InputError("custom profile: h'(r0) must be positive");
  if (std::abs(h(1.0)) > 1e-9) throw InputError("custom profile: h(1) must vanish");
  if (std::abs(dh(1.0)) > 1e-9) throw InputError("custom profile: h'(1) must vanish");
  constexpr int kGrid = 1000;
  const double scale = std::max(1.0, std::abs(h(r0)));
  double prev_d = dh(1.0), h_prev2 = 0.0, h_prev = 0.0;
  for (int i = 0; i < kGrid; ++i) {
    double r = 1.0 + (r0 - 1.0) * static_cast<double>(i) / (kGrid - 1);
    double hv = h(r), dv = dh(r);
    if (!std::isfinite(hv) || !std::isfinite(dv)) throw InputError("custom profile: non-finite value at r=" + format_double(r));
    if (i > 0 && !(dv > prev_d)) throw InputError("custom profile: h' not strictly increasing near r=" + format_double(r));
    if (i >= 2 && hv - 2.0 * h_prev + h_prev2 < -1e-9 * scale) throw InputError("custom profile: h not convex near r=" + format_double(r));
    prev_d = dv;
    h_prev2 = h_prev;
    h_prev = hv;
  }
  return RadialProfile(Shape::Custom, 0.0, r0, T, std::move(h), std::move(dh));
}

RadialProfile RadialProfile::scaled(double a) const {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("profile scale must be positive");
  auto h = h_core_;
  auto dh = dh_core_;
  return RadialProfile(shape_, param_, r0_, a * T_, [h, a](double r) { return a * h(r); }, [dh, a](double r) { return a * dh(r); });
}

double RadialProfile::h(double r) const {
  if (!(r >= 1.0)) throw DomainError("profile: h is defined on [1, inf)");
  return r <= r0_ ? h_core_(r) : T_ * r - C_;
}

double RadialProfile::dh(double r) const {
  if (!(r >= 1.0)) throw DomainError("profile: h is defined on [1, inf)");
  return r <= r0_ ? dh_core_(r) : T_;
}

std::string RadialProfile::describe() const {
  std::ostringstream os;
  switch (shape_) {
    case Shape::Quadratic: os << "quadratic("; break;
    case Shape::Cosh: os << "cosh(gamma=" << format_double(param_) << ","; break;
    case Shape::Quartic: os << "quartic(beta=" << format_double(param_) << ","; break;
    case Shape::Custom: os << "custom("; break;
  }
  os << "r0=" << format_double(r0_) << ",T=" << format_double(T_) << ",C=" << format_double(C_) << ")";
  return os.str();
}

double RadialProfile::r_of_slope(double t) const {
  double lo = 1.0, hi = r0_;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (dh_core_(mid) < t ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double RadialProfile::s_h(double t) const {
  const double tol = tolerance();
  if (std::isnan(t) || t < -tol || t > T_ + tol) throw DomainError("s_h: argument " + format_double(t) + " outside [0, " + format_double(T_) + "]");
  if (t <= 0.0) return 0.0;
  if (t >= T_) return C_;
  double r = r_of_slope(t);
  return r * t - h_core_(r);
}

double RadialProfile::s_h_inverse(double y) const {
  const double tol = tolerance();
  if (std::isnan(y) || y < -tol || y > C_ + tol) throw DomainError("s_h inverse: argument " + format_double(y) + " outside [0, " + format_double(C_) + "]");
  if (y <= 0.0) return 0.0;
  if (y >= C_) return T_;
  // r·h'(r) − h(r) is increasing in r.
  double lo = 1.0, hi = r0_;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (mid * dh_core_(mid) - h_core_(mid) < y ? lo : hi) = mid;
  }
  return dh_core_(0.5 * (lo + hi));
}

double RadialProfile::s_h_ext(double x) const {
  if (x <= 0.0) return x;
  if (x >= T_) return x + (C_ - T_);
  return s_h(x);
}

double RadialProfile::s_h_inverse_ext(double y) const {
  if (y <= 0.0) return y;
  if (y >= C_) return y - (C_ - T_);
  return s_h_inverse(y);
}

Reparam RadialProfile::reparam() const {
  RadialProfile self = *this;
  return {[self](double x) { return self.s_h_ext(x); }, [self](double y) { return self.s_h_inverse_ext(y); }};
}

bool s_h_bounds_check(const RadialProfile& p, double t1, double t2) {
  if (t1 > t2) std::swap(t1, t2);
  const double gap = p.s_h(t2) - p.s_h(t1);
  const double tol = tolerance();
  return (t2 - t1) <= gap + tol && gap <= p.r0() * (t2 - t1) + tol;
}

// ---- templates -----------------------------------------------------------

std::string to_string(PolicyKind k) {
  switch (k) {
    case PolicyKind::Nested: return "nested";
    case PolicyKind::Random: return "random";
    case PolicyKind::ShortBias: return "short_bias";
  }
  return "?";
}

PolicyKind parse_policy(const std::string& name) {
  if (name == "nested") return PolicyKind::Nested;
  if (name == "random") return PolicyKind::Random;
  if (name == "short_bias" || name == "short-bias") return PolicyKind::ShortBias;
  throw InputError("unknown template policy '" + name + "'");
}

namespace {

// Open bars wait in `pending` (ascending left) until they may close, then
// move to `eligible`; each incidence closes a random eligible bar with
// probability one half and opens a new bar otherwise.
class PoolProcess {
 public:
  PoolProcess(Rng& rng, double min_len, bool strict) : rng_(rng), min_len_(min_len), strict_(strict) {}

  void seed_open(double left) { pending_.push_back(left); }

  void step(double t, std::size_t incidences, Barcode& out) {
    while (!pending_.empty() && may_close(pending_.front(), t)) {
      eligible_.push_back(pending_.front());
      pending_.pop_front();
    }
    std::size_t opened = 0;
    for (std::size_t k = 0; k < incidences; ++k) {
      if (!eligible_.empty() && rng_.bernoulli(0.5)) {
        std::size_t i = rng_.index(eligible_.size());
        out.add(eligible_[i], t);
        eligible_[i] = eligible_.back();
        eligible_.pop_back();
      } else {
        ++opened;
      }
    }
    for (std::size_t k = 0; k < opened; ++k) pending_.push_back(t);
  }

  void finish(Barcode& out) {
    std::vector<double> rest(eligible_.begin(), eligible_.end());
    rest.insert(rest.end(), pending_.begin(), pending_.end());
    std::sort(rest.begin(), rest.end());
    for (double l : rest) out.add(l, kInf);
    eligible_.clear();
    pending_.clear();
  }

 private:
  bool may_close(double left, double t) const { return left < t && (strict_ ? t - left > min_len_ : t - left >= min_len_); }

  Rng& rng_;
  double min_len_;
  bool strict_;
  std::deque<double> pending_;
  std::vector<double> eligible_;
};

}  // namespace

BarcodeTemplate gen_template(const ReebSpectrum& spectrum, std::size_t betti, const TemplatePolicy& policy) {
  if (betti < 1) throw PreconditionError("template: betti must be at least 1");
  if (!(policy.min_length >= 0.0) || !std::isfinite(policy.min_length)) throw InputError("template: min_length must be non-negative");
  BarcodeTemplate t;
  t.betti = betti;
  t.spectrum = spectrum;
  const auto& e = spectrum.entries();
  Rng rng(policy.seed);

  switch (policy.kind) {
    case PolicyKind::Nested: {
      for (std::size_t k = 0; k < betti; ++k) t.period_bars.add(0.0, kInf);
      std::vector<double> stack;
      for (std::size_t i = 0; i < e.size(); ++i) {
        std::size_t inc = 2 * e[i].mult;
        if (i % 2 == 1)
          while (inc > 0 && !stack.empty()) {
            t.period_bars.add(stack.back(), e[i].period);
            stack.pop_back();
            --inc;
          }
        for (; inc > 0; --inc) stack.push_back(e[i].period);
      }
      for (double l : stack) t.period_bars.add(l, kInf);
      break;
    }
    case PolicyKind::Random:
    case PolicyKind::ShortBias: {
      std::vector<std::size_t> remaining(e.size());
      for (std::size_t i = 0; i < e.size(); ++i) remaining[i] = 2 * e[i].mult;
      if (policy.kind == PolicyKind::ShortBias) {
        if (!(policy.fraction >= 0.0 && policy.fraction <= 1.0)) throw InputError("short_bias: fraction must lie in [0, 1]");
        for (std::size_t i = 0; i + 1 < e.size(); i += 2)
          if (rng.bernoulli(policy.fraction)) {
            t.period_bars.add(e[i].period, e[i + 1].period);
            --remaining[i];
            --remaining[i + 1];
          }
      }
      PoolProcess pool(rng, policy.min_length, false);
      for (std::size_t k = 0; k < betti; ++k) pool.seed_open(0.0);
      for (std::size_t i = 0; i < e.size(); ++i) pool.step(e[i].period, remaining[i], t.period_bars);
      pool.finish(t.period_bars);
      break;
    }
  }
  auto bad = validate_template(t);
  if (!bad.empty()) throw Error("internal: generated template is invalid: " + bad.front());
  return t;
}

std::vector<std::string> validate_template(const BarcodeTemplate& t) {
  std::vector<std::string> out;
  const auto& e = t.spectrum.entries();
  std::vector<std::size_t> inc(e.size(), 0);
  std::size_t zero_left = 0;
  auto note = [&](const std::string& s) {
    if (out.size() < 32) out.push_back(s);
  };
  for (const auto& bar : t.period_bars.bars()) {
    if (bar.right_open) note("bar (" + format_double(bar.left) + ", " + format_double(bar.right) + ") is a truncation artifact");
    if (bar.left == 0.0) {
      ++zero_left;
    } else if (auto i = t.spectrum.find(bar.left)) {
      ++inc[*i];
    } else {
      note("left endpoint " + format_double(bar.left) + " is not a period");
    }
    if (!bar.infinite()) {
      if (auto i = t.spectrum.find(bar.right))
        ++inc[*i];
      else
        note("right endpoint " + format_double(bar.right) + " is not a period");
    }
  }
  if (zero_left != t.betti) note(std::to_string(zero_left) + " bars start at 0, expected betti = " + std::to_string(t.betti));
  for (std::size_t i = 0; i < e.size(); ++i)
    if (inc[i] != 2 * e[i].mult)
      note("period " + format_double(e[i].period) + " has " + std::to_string(inc[i]) + " endpoint incidences, expected " + std::to_string(2 * e[i].mult));
  return out;
}

BarcodeTemplate restrict_below(const BarcodeTemplate& t, double T) {
  BarcodeTemplate r;
  r.betti = t.betti;
  r.spectrum = t.spectrum.below(T);
  for (const auto& bar : t.period_bars.bars()) {
    if (bar.left != 0.0 && bar.left >= T) continue;
    r.period_bars.add(bar.left, bar.right >= T ? kInf : bar.right);
  }
  return r;
}

BarcodeTemplate reshuffle_long_bars(const BarcodeTemplate& t, double C, std::uint64_t seed) {
  if (!(C > 0.0)) throw DomainError("reshuffle: C must be positive");
  BarcodeTemplate r;
  r.betti = t.betti;
  r.spectrum = t.spectrum;
  const auto& e = t.spectrum.entries();
  std::vector<std::size_t> remaining(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) remaining[i] = 2 * e[i].mult;
  std::size_t free_betti = t.betti;
  for (const auto& bar : t.period_bars.bars()) {
    if (bar.length() > C) continue;
    r.period_bars.add(bar);
    if (bar.left == 0.0)
      --free_betti;
    else
      --remaining[*t.spectrum.find(bar.left)];
    --remaining[*t.spectrum.find(bar.right)];
  }
  Rng rng(seed);
  PoolProcess pool(rng, C, true);
  for (std::size_t k = 0; k < free_betti; ++k) pool.seed_open(0.0);
  for (std::size_t i = 0; i < e.size(); ++i) pool.step(e[i].period, remaining[i], r.period_bars);
  pool.finish(r.period_bars);
  return r;
}

Barcode build_SH(const BarcodeTemplate& t) { return t.period_bars; }

Barcode build_BH(const BarcodeTemplate& t, const RadialProfile& p) {
  const double T = p.T();
  if (t.spectrum.contains(T)) throw DomainError("slope " + format_double(T) + " is a period of the spectrum");
  for (const auto& bar : t.period_bars.bars()) {
    if (bar.left >= T || (!bar.infinite() && bar.right >= T))
      throw DomainError("template endpoint at or beyond the slope " + format_double(T) + "; restrict the template first");
  }
  auto bad = validate_template(t);
  if (!bad.empty()) throw PreconditionError("invalid template: " + bad.front());
  Barcode out;
  for (const auto& bar : t.period_bars.bars()) out.add(p.s_h(bar.left), bar.infinite() ? kInf : p.s_h(bar.right));
  return out;
}

std::vector<std::string> check_bh_bullets(const Barcode& bh, const BarcodeTemplate& t, const RadialProfile& p) {
  std::vector<std::string> out;
  std::size_t zero_left = 0;
  std::vector<double> ends;
  for (const auto& bar : bh.bars()) {
    if (bar.left == 0.0)
      ++zero_left;
    else
      ends.push_back(bar.left);
    if (!bar.infinite()) ends.push_back(bar.right);
  }
  if (zero_left != t.betti) out.push_back(std::to_string(zero_left) + " bars with left endpoint 0, expected " + std::to_string(t.betti));
  std::sort(ends.begin(), ends.end());
  const double tol = tolerance();
  std::size_t expected = 0;
  for (const auto& en : t.spectrum.entries()) {
    if (en.period >= p.T()) break;
    const double s = p.s_h(en.period);
    auto lo = std::lower_bound(ends.begin(), ends.end(), s - tol);
    auto hi = std::upper_bound(ends.begin(), ends.end(), s + tol);
    auto n = static_cast<std::size_t>(hi - lo);
    expected += 2 * en.mult;
    if (n != 2 * en.mult && out.size() < 32)
      out.push_back("action " + format_double(s) + " has " + std::to_string(n) + " incidences, expected " + std::to_string(2 * en.mult));
  }
  if (ends.size() != expected) out.push_back(std::to_string(ends.size()) + " nonzero finite endpoints, expected " + std::to_string(expected));
  return out;
}

double action_spacing(const BarcodeTemplate& t, const RadialProfile& p) {
  std::vector<double> v{0.0};
  for (const auto& en : t.spectrum.entries())
    if (en.period < p.T()) v.push_back(p.s_h(en.period));
  double g = kInf;
  for (std::size_t i = 1; i < v.size(); ++i) g = std::min(g, v[i] - v[i - 1]);
  return g;
}

Barcode morse_perturb(const Barcode& bh, const RadialProfile& p, const BarcodeTemplate& t, double delta, std::size_t n_crit) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw DomainError("morse_perturb: delta must be positive");
  if (n_crit < t.betti || (n_crit - t.betti) % 2 != 0)
    throw PreconditionError("morse_perturb: n_crit must be at least betti with the same parity");
  const double spacing = action_spacing(t, p);
  if (!(3.0 * delta < spacing))
    throw PreconditionError("morse_perturb: 3*delta = " + format_double(3.0 * delta) + " is not below the action spacing " + format_double(spacing));
  if (!same_bars(bh, build_BH(t, p))) throw PreconditionError("morse_perturb: B(H) does not match the template and profile");

  const auto& e = t.spectrum.entries();
  const auto& bars = t.period_bars.bars();
  // Per period: how many incidences still move up by delta. Right endpoints
  // are visited first, so they take the shift before left endpoints do.
  std::vector<std::size_t> to_shift(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) to_shift[i] = e[i].mult;
  std::vector<double> right(bars.size(), kInf), left(bars.size(), 0.0);
  for (std::size_t b = 0; b < bars.size(); ++b) {
    if (bars[b].infinite()) continue;
    std::size_t i = *t.spectrum.find(bars[b].right);
    right[b] = p.s_h(bars[b].right);
    if (to_shift[i] > 0) {
      --to_shift[i];
      right[b] += delta;
    }
  }
  std::size_t betti_seen = 0;
  for (std::size_t b = 0; b < bars.size(); ++b) {
    if (bars[b].left == 0.0) {
      left[b] = delta * static_cast<double>(++betti_seen) / static_cast<double>(t.betti + 1);
      continue;
    }
    std::size_t i = *t.spectrum.find(bars[b].left);
    left[b] = p.s_h(bars[b].left);
    if (to_shift[i] > 0) {
      --to_shift[i];
      left[b] += delta;
    }
  }
  Barcode out;
  for (std::size_t b = 0; b < bars.size(); ++b) out.add(left[b], right[b]);
  const std::size_t extra = (n_crit - t.betti) / 2;
  for (std::size_t k = 0; k < extra; ++k) {
    double l = delta * static_cast<double>(k + 1) / (4.0 * static_cast<double>(extra + 1));
    out.add(l, l + delta / 2.0);
  }
  return out;
}

Step4Result step4_identity(const BarcodeTemplate& t, const RadialProfile& p) {
  Step4Result r;
  Barcode bh = build_BH(restrict_below(t, p.T()), p);
  r.lhs = reparametrize(truncate(bh, p.C()), p.reparam());
  r.rhs = truncate(build_SH(t), p.T());
  r.equal = same_bars(r.lhs, r.rhs);
  return r;
}

GoalZeroCounts goal_zero_counts(const BarcodeTemplate& t, const RadialProfile& p, double eps) {
  Barcode bh = build_BH(restrict_below(t, p.T()), p);
  GoalZeroCounts g;
  g.lower = n_eps_truncated(bh, p.r0() * eps, p.C());
  g.middle = n_eps_truncated(build_SH(t), eps, p.T());
  g.upper = n_eps_truncated(bh, eps, p.C());
  return g;
}

std::vector<double> scaling_sequence(const ReebSpectrum& s, double T, std::size_t count) {
  std::vector<double> out;
  for (std::size_t i = 1; i <= count; ++i) {
    const double di = static_cast<double>(i);
    const double hi = di + std::ldexp(1.0, -static_cast<int>(i));
    double a = di;
    int tries = 0;
    while (s.contains(a * T) && tries++ < 60) a = 0.5 * (a + hi);
    if (s.contains(a * T)) throw PreconditionError("scaling sequence: no admissible a_" + std::to_string(i));
    out.push_back(a);
  }
  return out;
}

}  // namespace bce
