#pragma once

#include "bce/barcode.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace bce {

struct SpectrumEntry {
  double period = 0.0;
  std::size_t mult = 1;

  bool operator==(const SpectrumEntry& o) const { return period == o.period && mult == o.mult; }
};

/// Sorted periods of closed Reeb orbits with multiplicities.
class ReebSpectrum {
 public:
  ReebSpectrum() = default;
  ReebSpectrum(std::vector<SpectrumEntry> entries, std::optional<double> oracle_growth = std::nullopt, std::string label = {});

  /// Sorts, collapses periods closer than `merge_tol` into multiplicities.
  static ReebSpectrum from_periods(std::vector<double> periods, std::optional<double> oracle_growth = std::nullopt, std::string label = {},
                                   double merge_tol = 1e-9);

  const std::vector<SpectrumEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  /// N(T): orbits (with multiplicity) of period < T.
  std::size_t count_below(double T) const;
  std::size_t total() const { return prefix_.empty() ? 0 : prefix_.back(); }
  double min_gap() const;

  /// Index of the entry within `tol` of t, if any.
  std::optional<std::size_t> find(double t, double tol = tolerance()) const;
  bool contains(double t, double tol = tolerance()) const { return find(t, tol).has_value(); }

  ReebSpectrum below(double T) const;

  std::optional<double> oracle_growth;
  std::string label;

  bool operator==(const ReebSpectrum& o) const { return entries_ == o.entries_ && oracle_growth == o.oracle_growth && label == o.label; }

 private:
  std::vector<SpectrumEntry> entries_;
  std::vector<std::size_t> prefix_;  // prefix_[i] = Σ mult of entries_[0..i]
};

enum class SpectrumKind { Quasiperiodic, Hyperbolic, Custom };

struct SpectrumParams {
  SpectrumKind kind = SpectrumKind::Hyperbolic;
  double rate = 0.0;           // hyperbolic
  double t_max = 0.0;          // quasiperiodic, hyperbolic
  std::vector<double> base;    // quasiperiodic
  std::string path;            // custom
};

ReebSpectrum gen_spectrum(const SpectrumParams& params, std::uint64_t seed);

/// Convex radial profile h on [1, ∞), linear of slope T beyond r0.
class RadialProfile {
 public:
  enum class Shape { Quadratic, Cosh, Quartic, Custom };

  static RadialProfile quadratic(double r0, double T);
  static RadialProfile cosh(double r0, double T, double gamma);
  static RadialProfile quartic(double r0, double T, double beta);
  /// h and h' given on [1, r0]; T := h'(r0). Checked on a 1000-point grid.
  static RadialProfile custom(std::function<double(double)> h, std::function<double(double)> dh, double r0);

  /// Profile a·h: slope a·T, same r0, constant a·C.
  RadialProfile scaled(double a) const;

  double h(double r) const;
  double dh(double r) const;
  double r0() const { return r0_; }
  double T() const { return T_; }
  double C() const { return C_; }
  Shape shape() const { return shape_; }
  double param() const { return param_; }
  std::string describe() const;

  /// r in [1, r0] with h'(r) = t.
  double r_of_slope(double t) const;
  /// s_h(t) = r·h'(r) − h(r) at h'(r) = t, for t in [0, T].
  double s_h(double t) const;
  /// Inverse of s_h on [0, C].
  double s_h_inverse(double y) const;
  /// s_h extended to a bijection of ℝ: identity below 0, slope one above T.
  double s_h_ext(double x) const;
  double s_h_inverse_ext(double y) const;
  /// f = extended s_h, used to pull action-axis barcodes back to periods.
  Reparam reparam() const;

 private:
  RadialProfile(Shape shape, double param, double r0, double T, std::function<double(double)> h, std::function<double(double)> dh);

  Shape shape_ = Shape::Quadratic;
  double param_ = 0.0;
  double r0_ = 2.0;
  double T_ = 1.0;
  double C_ = 0.0;
  std::function<double(double)> h_core_;
  std::function<double(double)> dh_core_;
};

/// (t2−t1) ≤ s_h(t2)−s_h(t1) ≤ r0·(t2−t1) within tolerance.
bool s_h_bounds_check(const RadialProfile& p, double t1, double t2);

/// Period-axis barcode whose endpoint incidences match the spectrum.
struct BarcodeTemplate {
  std::size_t betti = 0;
  Barcode period_bars;
  ReebSpectrum spectrum;
};

enum class PolicyKind { Nested, Random, ShortBias };

struct TemplatePolicy {
  PolicyKind kind = PolicyKind::Random;
  std::uint64_t seed = 0;
  double fraction = 0.0;    // short_bias
  double min_length = 0.0;  // random and short_bias (random part)
};

std::string to_string(PolicyKind k);
PolicyKind parse_policy(const std::string& name);

BarcodeTemplate gen_template(const ReebSpectrum& spectrum, std::size_t betti, const TemplatePolicy& policy);

/// Problems with a template; empty iff valid.
std::vector<std::string> validate_template(const BarcodeTemplate& t);

/// Template of the spectrum below T: bars starting at or after T are dropped,
/// bars crossing T become (a, ∞).
BarcodeTemplate restrict_below(const BarcodeTemplate& t, double T);

/// Keeps every bar of length ≤ C and re-pairs the remaining incidences into
/// bars longer than C.
BarcodeTemplate reshuffle_long_bars(const BarcodeTemplate& t, double C, std::uint64_t seed);

/// The model SH barcode on the period axis.
Barcode build_SH(const BarcodeTemplate& t);

/// Finite endpoints t ↦ s_h(t); 0 and ∞ fixed. DomainError when an endpoint
/// reaches the slope or the slope is a period.
Barcode build_BH(const BarcodeTemplate& t, const RadialProfile& p);

/// Violations of the betti and incidence counts on an action-axis barcode.
std::vector<std::string> check_bh_bullets(const Barcode& bh, const BarcodeTemplate& t, const RadialProfile& p);

/// Model of B(H_δ) for a Morse perturbation with n_crit critical points.
Barcode morse_perturb(const Barcode& bh, const RadialProfile& p, const BarcodeTemplate& t, double delta, std::size_t n_crit);

/// Smallest gap of s_h({0} ∪ Spec^{<T}).
double action_spacing(const BarcodeTemplate& t, const RadialProfile& p);

struct Step4Result {
  Barcode lhs;  // act(tru(B(H), C), s_h)
  Barcode rhs;  // tru(B_SH, T)
  bool equal = false;
};

Step4Result step4_identity(const BarcodeTemplate& t, const RadialProfile& p);

struct GoalZeroCounts {
  std::size_t lower = 0;  // n_{r0 ε}(tru(B(H), C))
  std::size_t middle = 0; // n_ε(tru(B_SH, T))
  std::size_t upper = 0;  // n_ε(tru(B(H), C))
  bool holds() const { return lower <= middle && middle <= upper; }
};

GoalZeroCounts goal_zero_counts(const BarcodeTemplate& t, const RadialProfile& p, double eps);

/// a_i in (i − 2⁻ⁱ, i + 2⁻ⁱ) with a_i·T off the spectrum, i = 1..count.
std::vector<double> scaling_sequence(const ReebSpectrum& s, double T, std::size_t count);

}  // namespace bce
