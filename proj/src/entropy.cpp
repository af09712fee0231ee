#include "bce/entropy.hpp"

#include <json.hpp>

#include <algorithm>

namespace bce {

std::vector<std::size_t> truncated_counts(const Barcode& b, double eps, const std::vector<double>& T_grid) {
  // A bar survives truncation at T with length > eps iff it is longer than
  // eps and starts before T − eps.
  std::vector<double> lefts;
  for (const auto& bar : b.bars())
    if (bar.length() > eps) lefts.push_back(bar.left);
  std::sort(lefts.begin(), lefts.end());
  std::vector<std::size_t> out;
  out.reserve(T_grid.size());
  for (double T : T_grid) {
    auto n = static_cast<std::size_t>(std::lower_bound(lefts.begin(), lefts.end(), T - eps) - lefts.begin());
    // lower_bound gives left < T − eps; the truncated length is T − left.
    while (n < lefts.size() && T - lefts[n] > eps) ++n;
    while (n > 0 && !(T - lefts[n - 1] > eps)) --n;
    out.push_back(n);
  }
  return out;
}

EntropySeries fit_series(double eps, std::vector<EntropySample> samples) {
  EntropySeries s;
  s.eps = eps;
  s.samples = std::move(samples);
  for (std::size_t i = 1; i < s.samples.size(); ++i)
    if (!(s.samples[i].T > s.samples[i - 1].T)) throw InputError("T grid must be strictly increasing");
  if (s.samples.empty()) {
    s.degenerate = true;
    return s;
  }
  const std::size_t start = s.samples.size() / 2;
  s.window_lo = s.samples[start].T;
  s.window_hi = s.samples.back().T;
  std::vector<double> x, y;
  bool have_proxy = false;
  for (std::size_t i = start; i < s.samples.size(); ++i) {
    const auto& p = s.samples[i];
    if (p.count == 0) {
      ++s.floor_hits;
      continue;
    }
    double ly = std::log(static_cast<double>(p.count));
    x.push_back(p.T);
    y.push_back(ly);
    if (p.T > 0.0) {
      double r = ly / p.T;
      if (!have_proxy || r > s.max_proxy) s.max_proxy = r;
      have_proxy = true;
    }
  }
  s.fit_points = x.size();
  bool constant = std::all_of(y.begin(), y.end(), [&](double v) { return v == y.front(); });
  if (x.size() < 3 || constant) {
    s.degenerate = true;
    s.slope = 0.0;
    s.intercept = y.empty() ? 0.0 : y.front();
    return s;
  }
  auto fit = least_squares(x, y);
  s.slope = fit.slope;
  s.intercept = fit.intercept;
  s.residuals = std::move(fit.residuals);
  return s;
}

EntropySeries entropy_eps(const Barcode& b, double eps, const std::vector<double>& T_grid) {
  if (!(eps > 0.0)) throw DomainError("entropy: eps must be positive");
  auto counts = truncated_counts(b, eps, T_grid);
  std::vector<EntropySample> samples;
  samples.reserve(T_grid.size());
  for (std::size_t i = 0; i < T_grid.size(); ++i) samples.push_back({T_grid[i], counts[i]});
  return fit_series(eps, std::move(samples));
}

EntropyProfile entropy(const Barcode& b, const std::vector<double>& eps_grid, const std::vector<double>& T_grid) {
  if (eps_grid.empty()) throw InputError("entropy: empty eps grid");
  for (std::size_t i = 1; i < eps_grid.size(); ++i)
    if (!(eps_grid[i] < eps_grid[i - 1])) throw InputError("entropy: eps grid must be strictly decreasing");
  EntropyProfile prof;
  constexpr double kFitTol = 0.02;
  for (double eps : eps_grid) {
    prof.series.push_back(entropy_eps(b, eps, T_grid));
    const auto n = prof.series.size();
    if (n >= 2 && prof.series[n - 1].slope < prof.series[n - 2].slope - kFitTol)
      prof.warnings.push_back("slope drops from " + format_double(prof.series[n - 2].slope) + " to " + format_double(prof.series[n - 1].slope) +
                              " as eps shrinks to " + format_double(eps));
  }
  prof.estimate = prof.series.back().slope;
  return prof;
}

std::vector<double> default_eps_grid(double eps0, std::size_t n) {
  if (!(eps0 > 0.0)) throw DomainError("eps0 must be positive");
  std::vector<double> g;
  for (std::size_t k = 0; k < n; ++k) g.push_back(std::ldexp(eps0, -static_cast<int>(k)));
  return g;
}

double ratio_proxy(const std::vector<std::size_t>& counts, const std::vector<double>& x) {
  if (counts.size() != x.size()) throw InputError("ratio_proxy: length mismatch");
  double best = 0.0;
  bool any = false;
  for (std::size_t i = counts.size() / 2; i < counts.size(); ++i) {
    if (counts[i] == 0) continue;
    if (!(x[i] > 0.0)) throw DomainError("ratio_proxy: normalizer must be positive");
    double r = std::log(static_cast<double>(counts[i])) / x[i];
    if (!any || r > best) best = r;
    any = true;
  }
  return best;
}

double sequence_entropy(const std::vector<std::pair<double, Barcode>>& series, double T, double C, double eps) {
  if (!(eps > 0.0)) throw DomainError("sequence_entropy: eps must be positive");
  std::vector<std::size_t> counts;
  std::vector<double> x;
  for (const auto& [a, b] : series) {
    if (!(a > 0.0)) throw DomainError("sequence_entropy: scale factors must be positive");
    counts.push_back(n_eps_truncated(b, eps, a * C));
    x.push_back(a * T);
  }
  return ratio_proxy(counts, x);
}

double sh_ratio_entropy(const Barcode& sh, const std::vector<double>& a, double T, double eps) {
  std::vector<double> Ts;
  for (double ai : a) Ts.push_back(ai * T);
  return ratio_proxy(truncated_counts(sh, eps, Ts), Ts);
}

InvarianceCounts invariance_counts(const Barcode& b, double eps, double T, std::size_t betti, std::size_t N_T) {
  InvarianceCounts r;
  r.types = classify_bars(b, eps, T);
  const auto& t = r.types;
  const long long I = static_cast<long long>(t.nI), II = static_cast<long long>(t.nII);
  const long long III = static_cast<long long>(t.nIII), IV = static_cast<long long>(t.nIV);
  const long long B = static_cast<long long>(betti);
  r.n_Y = I + 2 * II - B;
  r.identity_ok = I + 2 * II + III + 2 * IV == B + 2 * static_cast<long long>(N_T);
  r.sandwich_ok = r.n_Y + B <= 2 * (I + II) && I + II <= r.n_Y + B;
  return r;
}

std::string series_to_tsv(const EntropySeries& s, const std::vector<std::string>& comments) {
  std::string out;
  for (const auto& c : comments) out += "# " + c + "\n";
  out += "T\tcount\tlogcount\n";
  for (const auto& p : s.samples) {
    out += format_double(p.T) + "\t" + std::to_string(p.count) + "\t";
    out += p.count ? format_double(std::log(static_cast<double>(p.count))) : std::string("nan");
    out += "\n";
  }
  return out;
}

std::string series_summary_json(const EntropySeries& s) {
  nlohmann::json j;
  j["eps"] = s.eps;
  j["slope"] = s.slope;
  j["intercept"] = s.intercept;
  j["max_proxy"] = s.max_proxy;
  j["window"] = {s.window_lo, s.window_hi};
  j["fit_points"] = s.fit_points;
  j["floor_hits"] = s.floor_hits;
  j["degenerate"] = s.degenerate;
  j["residuals"] = s.residuals;
  j["samples"] = s.samples.size();
  return j.dump() + "\n";
}

}  // namespace bce
