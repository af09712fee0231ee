#include "bce/common.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>

namespace bce {

namespace {

double initial_tolerance() {
  if (const char* env = std::getenv("BARC_TOL")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && v > 0.0 && std::isfinite(v)) return v;
  }
  return 1e-9;
}

std::atomic<double>& tol_slot() {
  static std::atomic<double> slot{initial_tolerance()};
  return slot;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

double tolerance() { return tol_slot().load(); }

void set_tolerance(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) throw DomainError("tolerance must be positive and finite");
  tol_slot().store(tol);
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  std::string t = trim(text);
  if (t == "inf" || t == "+inf" || t == "Infinity" || t == "infinity") return kInf;
  if (t == "-inf" || t == "-Infinity" || t == "-infinity") return -kInf;
  if (t.empty()) throw InputError("empty number");
  const char* first = t.data();
  if (*first == '+') ++first;
  double v = 0.0;
  auto res = std::from_chars(first, t.data() + t.size(), v);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size() || std::isnan(v))
    throw InputError("not a number: '" + t + "'");
  return v;
}

Rational parse_rational(const std::string& text) {
  using boost::multiprecision::cpp_int;
  std::string t = trim(text);
  if (t.empty()) throw InputError("empty number");
  auto slash = t.find('/');
  auto is_int = [](const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    return std::all_of(s.begin() + static_cast<long>(i), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  if (slash != std::string::npos) {
    std::string p = t.substr(0, slash), q = t.substr(slash + 1);
    if (!is_int(p) || !is_int(q)) throw InputError("not a rational: '" + t + "'");
    // strip sign and leading zeros so cpp_int never reads octal
    auto decimal = [](std::string s) {
      bool neg = s[0] == '-';
      if (s[0] == '-' || s[0] == '+') s.erase(0, 1);
      auto nz = s.find_first_not_of('0');
      cpp_int v(nz == std::string::npos ? std::string("0") : s.substr(nz));
      return neg ? cpp_int(-v) : v;
    };
    cpp_int den = decimal(q);
    if (den == 0) throw InputError("zero denominator: '" + t + "'");
    return Rational(decimal(p), den);
  }
  // decimal with optional exponent
  std::size_t i = 0;
  bool neg = false;
  if (t[i] == '+' || t[i] == '-') neg = t[i++] == '-';
  std::string digits;
  long scale = 0;
  bool seen_dot = false, any = false;
  for (; i < t.size(); ++i) {
    char c = t[i];
    if (c >= '0' && c <= '9') {
      digits.push_back(c);
      any = true;
      if (seen_dot) ++scale;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (!any) throw InputError("not a rational: '" + t + "'");
  long exp10 = 0;
  if (i < t.size()) {
    if (t[i] != 'e' && t[i] != 'E') throw InputError("not a rational: '" + t + "'");
    std::string e = t.substr(i + 1);
    if (!is_int(e)) throw InputError("not a rational: '" + t + "'");
    exp10 = std::stol(e);
  }
  // a leading 0 would make cpp_int read octal
  auto nz = digits.find_first_not_of('0');
  cpp_int num(nz == std::string::npos ? std::string("0") : digits.substr(nz));
  long net = scale - exp10;
  cpp_int pow10 = 1;
  for (long k = 0; k < std::abs(net); ++k) pow10 *= 10;
  Rational r = net >= 0 ? Rational(num, pow10) : Rational(num * pow10);
  return neg ? Rational(-r) : r;
}

std::string format_rational(const Rational& v) {
  using boost::multiprecision::cpp_int;
  cpp_int num = boost::multiprecision::numerator(v);
  cpp_int den = boost::multiprecision::denominator(v);
  if (den == 1) return num.str();
  cpp_int d = den;
  int twos = 0, fives = 0;
  while (d % 2 == 0) { d /= 2; ++twos; }
  while (d % 5 == 0) { d /= 5; ++fives; }
  if (d != 1) return num.str() + "/" + den.str();
  int k = std::max(twos, fives);
  cpp_int scale = 1;
  for (int j = 0; j < k; ++j) scale *= 10;
  cpp_int scaled = num * (scale / den);
  bool neg = scaled < 0;
  if (neg) scaled = -scaled;
  std::string s = scaled.str();
  if (static_cast<int>(s.size()) <= k) s.insert(0, static_cast<std::size_t>(k) - s.size() + 1, '0');
  s.insert(s.size() - static_cast<std::size_t>(k), ".");
  return (neg ? "-" : "") + s;
}

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t Rng::next_u64() { return engine_(); }

double Rng::uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

std::size_t Rng::index(std::size_t n) {
  if (n == 0) throw DomainError("Rng::index on empty range");
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return static_cast<std::size_t>(x % bound);
}

bool Rng::bernoulli(double p) { return uniform01() < p; }

double Rng::exponential(double rate) {
  if (!(rate > 0.0)) throw DomainError("exponential rate must be positive");
  return -std::log1p(-uniform01()) / rate;
}

std::uint64_t Rng::derive(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finaliser
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw InputError("least_squares: length mismatch");
  if (x.size() < 2) throw PreconditionError("least_squares: need at least two points");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw PreconditionError("least_squares: x values are all equal");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.residuals.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) fit.residuals.push_back(y[i] - (fit.slope * x[i] + fit.intercept));
  return fit;
}

std::vector<double> parse_grid(const std::string& spec) {
  auto c1 = spec.find(':');
  auto c2 = c1 == std::string::npos ? std::string::npos : spec.find(':', c1 + 1);
  if (c2 == std::string::npos) throw InputError("grid must look like a:b:n, got '" + spec + "'");
  double a = parse_double(spec.substr(0, c1));
  double b = parse_double(spec.substr(c1 + 1, c2 - c1 - 1));
  std::string ns = trim(spec.substr(c2 + 1));
  long n = 0;
  auto res = std::from_chars(ns.data(), ns.data() + ns.size(), n);
  if (res.ec != std::errc() || res.ptr != ns.data() + ns.size() || n < 1)
    throw InputError("grid count must be a positive integer, got '" + ns + "'");
  if (!std::isfinite(a) || !std::isfinite(b)) throw InputError("grid bounds must be finite");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  if (n == 1) {
    out.push_back(a);
    return out;
  }
  for (long i = 0; i < n; ++i) out.push_back(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  out.back() = b;
  return out;
}

}  // namespace bce
