#pragma once

#include "bce/common.hpp"

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace bce {

/// (left, right] or (left, ∞); right_open marks a truncation artifact (left, T).
struct Bar {
  double left = 0.0;
  double right = kInf;
  bool right_open = false;

  Bar() = default;
  Bar(double l, double r, bool open = false);

  double length() const { return right - left; }
  bool infinite() const { return std::isinf(right); }
};

bool operator<(const Bar& a, const Bar& b);
bool operator==(const Bar& a, const Bar& b);

class Barcode {
 public:
  Barcode() = default;
  explicit Barcode(std::vector<Bar> bars) : bars_(std::move(bars)) {}
  Barcode(std::initializer_list<Bar> bars) : bars_(bars) {}

  const std::vector<Bar>& bars() const { return bars_; }
  std::size_t size() const { return bars_.size(); }
  bool empty() const { return bars_.empty(); }
  const Bar& operator[](std::size_t i) const { return bars_[i]; }
  void add(const Bar& b) { bars_.push_back(b); }
  void add(double l, double r, bool open = false) { bars_.emplace_back(l, r, open); }
  void append(const Barcode& other) { bars_.insert(bars_.end(), other.bars_.begin(), other.bars_.end()); }

  /// Copy with bars in (left, right, open) order.
  Barcode sorted() const;
  std::size_t infinite_count() const;

 private:
  std::vector<Bar> bars_;
};

/// Multiset equality with endpoints compared under `tol`.
bool same_bars(const Barcode& a, const Barcode& b, double tol = tolerance());

std::string to_string(const Barcode& b);

/// B[δ]: every endpoint moves by −δ.
Barcode shift(const Barcode& b, double delta);

/// Intersection of every bar with (−∞, T).
Barcode truncate(const Barcode& b, double T);

/// Strictly increasing bijection of the reals together with its inverse.
struct Reparam {
  std::function<double(double)> f;
  std::function<double(double)> inverse;

  static Reparam identity();
  static Reparam linear(double scale, double offset = 0.0);  // t ↦ scale·t + offset
};

/// act(B, f): bars (f⁻¹(a), f⁻¹(b)]. Throws InputError when the inverse is
/// not monotone on the endpoints.
Barcode reparametrize(const Barcode& b, const Reparam& f);

/// Bars with length > eps.
std::size_t n_eps(const Barcode& b, double eps);

/// Bars with length > eps and left ≤ T.
std::size_t b_eps(const Barcode& b, double eps, double T);

/// n_eps(truncate(b, T), eps) without materializing the truncation.
std::size_t n_eps_truncated(const Barcode& b, double eps, double T);

/// Bars with length ≤ C and left > 0.
Barcode positive_short_bars(const Barcode& b, double C);

struct BarTypes {
  std::size_t nI = 0;    // long, right endpoint beyond T
  std::size_t nII = 0;   // long, right endpoint below T
  std::size_t nIII = 0;  // short, right endpoint beyond T
  std::size_t nIV = 0;   // short, right endpoint below T

  bool operator==(const BarTypes& o) const { return nI == o.nI && nII == o.nII && nIII == o.nIII && nIV == o.nIV; }
};

/// Type I–IV counts over bars with left ≤ T; long means length > eps.
BarTypes classify_bars(const Barcode& b, double eps, double T);

struct Matching {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::size_t> unmatched1;
  std::vector<std::size_t> unmatched2;
};

struct BottleneckResult {
  double distance = 0.0;
  Matching matching;
};

/// Exact bottleneck distance: the least critical δ admitting a δ-matching.
/// Infinite bars only match each other; unequal counts give +∞.
BottleneckResult bottleneck_matching(const Barcode& b1, const Barcode& b2);
double bottleneck(const Barcode& b1, const Barcode& b2);

/// True iff bottleneck(b1, b2) ≤ delta + tolerance.
bool interleaved(const Barcode& b1, const Barcode& b2, double delta);

}  // namespace bce
