#pragma once

#include "bce/barcode.hpp"

#include <string>
#include <utility>
#include <vector>

namespace bce {

struct EntropySample {
  double T = 0.0;
  std::size_t count = 0;
};

struct EntropySeries {
  double eps = 0.0;
  std::vector<EntropySample> samples;
  double slope = 0.0;      // least squares of log count against T, upper half window
  double intercept = 0.0;
  double max_proxy = 0.0;  // max of log(count)/T over the window
  double window_lo = 0.0;
  double window_hi = 0.0;
  std::size_t fit_points = 0;
  std::size_t floor_hits = 0;  // zero counts skipped inside the window
  std::vector<double> residuals;
  bool degenerate = false;
};

/// n_eps(truncate(b, T)) for every T, in O((n + m) log n).
std::vector<std::size_t> truncated_counts(const Barcode& b, double eps, const std::vector<double>& T_grid);

/// Fit on the upper half of the samples (by index).
EntropySeries fit_series(double eps, std::vector<EntropySample> samples);

EntropySeries entropy_eps(const Barcode& b, double eps, const std::vector<double>& T_grid);

struct EntropyProfile {
  std::vector<EntropySeries> series;  // one per eps, in grid order
  double estimate = 0.0;              // slope at the smallest eps
  std::vector<std::string> warnings;
};

/// eps_grid must be strictly decreasing.
EntropyProfile entropy(const Barcode& b, const std::vector<double>& eps_grid, const std::vector<double>& T_grid);

/// eps0·2^{-k}, k = 0..n−1.
std::vector<double> default_eps_grid(double eps0, std::size_t n = 6);

/// max over the upper half of i of log(count_i)/x_i, zero counts skipped.
double ratio_proxy(const std::vector<std::size_t>& counts, const std::vector<double>& x);

/// Limsup proxy of log n_eps(tru(B(H_i), a_i·C)) / (a_i·T).
double sequence_entropy(const std::vector<std::pair<double, Barcode>>& series, double T, double C, double eps);

/// The same proxy for the period-axis barcode at T_i = a_i·T.
double sh_ratio_entropy(const Barcode& sh, const std::vector<double>& a, double T, double eps);

struct InvarianceCounts {
  BarTypes types;
  long long n_Y = 0;
  bool identity_ok = false;
  bool sandwich_ok = false;
};

InvarianceCounts invariance_counts(const Barcode& b, double eps, double T, std::size_t betti, std::size_t N_T);

std::string series_to_tsv(const EntropySeries& s, const std::vector<std::string>& comments = {});
std::string series_summary_json(const EntropySeries& s);

}  // namespace bce
