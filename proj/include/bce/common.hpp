#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace bce {

// Error hierarchy. The C API maps each class onto a status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-vocabulary input (unknown label, dimension mismatch).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Input is well formed but violates a stated precondition of the operation.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of the function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Request exceeds what the implementation supports (size caps, infinite data).
class CapabilityError : public Error {
 public:
  using Error::Error;
};

/// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Text/JSON parse failure; message carries "<source>:<line>: ...".
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what), source_(source), line_(line) {}

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

using Rational = boost::multiprecision::cpp_rational;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Absolute tolerance for float comparisons. 1e-9 unless BARC_TOL is set.
double tolerance();

/// Overrides the process-wide tolerance (tests and the CLI use this).
void set_tolerance(double tol);

inline bool approx_equal(double a, double b, double tol = tolerance()) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= tol;
}

/// Comparison policy for filtration values. double uses the absolute
/// tolerance, Rational compares exactly.
template <class V>
struct ValueTraits;

template <>
struct ValueTraits<double> {
  static constexpr bool exact = false;
  static bool equal(double a, double b) { return approx_equal(a, b); }
  static double to_double(double v) { return v; }
  static double from_double(double v) { return v; }
};

template <>
struct ValueTraits<Rational> {
  static constexpr bool exact = true;
  static bool equal(const Rational& a, const Rational& b) { return a == b; }
  static double to_double(const Rational& v) { return v.convert_to<double>(); }
  static Rational from_double(double v) { return Rational(v); }
};

// Number formatting that round-trips exactly.
std::string format_double(double v);
double parse_double(const std::string& text);  // throws InputError; accepts "inf"

/// Parses "3", "-2.75", "5/8" into an exact rational. Throws InputError.
Rational parse_rational(const std::string& text);

/// Canonical text for a rational: terminating decimals as decimals, else p/q.
std::string format_rational(const Rational& v);

/// Portable seeded generator. Built on mt19937_64 with hand-rolled
/// transforms so sequences do not depend on the standard library vendor.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  double uniform01();                         // [0, 1)
  double uniform(double lo, double hi);       // [lo, hi)
  std::size_t index(std::size_t n);           // [0, n)
  bool bernoulli(double p);
  double exponential(double rate);

  /// Child seed derived from (seed, stream); used for per-instance streams.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream);

 private:
  std::mt19937_64 engine_;
};

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<double> residuals;
};

/// Ordinary least squares y = slope * x + intercept. Needs >= 2 points.
LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

/// "a:b:n" -> n evenly spaced values from a to b inclusive.
std::vector<double> parse_grid(const std::string& spec);

}  // namespace bce
