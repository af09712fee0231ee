#pragma once

// Seeded property sweeps. Each suite draws `count` instances from per-instance
// streams derived from the seed, so results do not depend on `jobs`.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace bce::checks {

enum class Mode { Float, Rational };

std::string to_string(Mode m);
Mode parse_mode(const std::string& s);

struct CheckOptions {
  std::uint64_t seed = 0;
  std::size_t count = 0;  // 0 = suite default
  std::size_t jobs = 1;
  Mode mode = Mode::Float;
};

struct CheckReport {
  std::string suite;
  std::size_t instances = 0;
  std::size_t failures = 0;
  std::size_t first_failure = 0;  // instance index
  std::string counterexample;     // JSON, empty when passed
  std::string note;
  bool passed() const { return failures == 0; }
};

std::vector<std::string> suite_names();  // without "all"

/// Throws InputError for an unknown name.
CheckReport run_suite(const std::string& name, const CheckOptions& opts);

/// "all" expands to every suite.
std::vector<CheckReport> run_suites(const std::string& name, const CheckOptions& opts);

std::string reports_to_json(const std::vector<CheckReport>& reports, const CheckOptions& opts);

/// Runs f(i) for i in [0, n) on `jobs` threads; results in index order.
std::vector<std::optional<std::string>> parallel_for(std::size_t n, std::size_t jobs,
                                                     const std::function<std::optional<std::string>(std::size_t)>& f);

}  // namespace bce::checks
