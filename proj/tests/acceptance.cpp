// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.
// Usage: acceptance [seed]

#include "bce/checks.hpp"
#include "bce/entropy.hpp"
#include "bce/reeb_model.hpp"
#include "bce/triangle.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <string>

using namespace bce;

namespace {

constexpr double kTol = 1e-9;               // float comparisons throughout
constexpr double kSvdSeconds = 30.0;        // criterion 1
constexpr double kEntropySeconds = 60.0;    // criterion 8
constexpr double kRecoveryFraction = 0.05;  // criterion 8, hyperbolic
constexpr double kQuasiBound = 0.02;        // criterion 8, quasiperiodic
constexpr double kSlopeAgreement = 0.02;    // criterion 9

int failed = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("[%s] %2d %-28s %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failed;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

struct SuiteOutcome {
  bool ok;
  std::string detail;
  double seconds;
};

SuiteOutcome suite(const std::string& name, std::uint64_t seed, std::size_t count, std::size_t expected, checks::Mode mode = checks::Mode::Float) {
  auto t0 = std::chrono::steady_clock::now();
  auto r = checks::run_suite(name, checks::CheckOptions{seed, count, 1, mode});
  double s = seconds_since(t0);
  std::string d = name + "/" + checks::to_string(mode) + ": " + std::to_string(r.instances) + " instances, " + std::to_string(r.failures) + " failures";
  if (!r.passed()) d += ", first " + r.counterexample;
  return {r.passed() && r.instances == expected, d, s};
}

}  // namespace

int main(int argc, char** argv) {
  const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 20240601;
  set_tolerance(kTol);
  std::printf("# acceptance seed=%llu tolerance=%g\n", static_cast<unsigned long long>(seed), kTol);

  try {
    {
      auto f = suite("svd", seed, 200, 200);
      auto q = suite("svd", seed, 200, 200, checks::Mode::Rational);
      bool ok = f.ok && q.ok && f.seconds + q.seconds < kSvdSeconds;
      report(1, "SVD correctness", ok, f.detail + "; " + q.detail + fmt("; %.2f s", f.seconds + q.seconds));
    }
    {
      auto f = suite("spectrum", seed, 500, 500);
      auto q = suite("spectrum", seed, 500, 500, checks::Mode::Rational);
      report(2, "norm-spectrum invariance", f.ok && q.ok, f.detail + "; " + q.detail);
    }
    {
      // all 66 barcodes with ≤ 2 bars on {0,1,2,3,∞}, every ordered pair
      auto r = suite("isometry", seed, 0, 66 * 66);
      report(3, "isometry spot-check", r.ok, r.detail);
    }
    {
      auto r = suite("stability", seed, 200, 200);
      report(4, "stability", r.ok, r.detail);
    }
    {
      auto r = suite("equivalence", seed, 50, 50);
      report(5, "equivalence sandwich", r.ok, r.detail);
    }
    {
      auto r = suite("short-bars", seed, 100, 100);
      report(6, "filling-invariance algebra", r.ok, r.detail);
    }
    {
      auto r = suite("invariance", seed, 100, 100);
      report(7, "invariance bookkeeping", r.ok, r.detail);
    }
    {
      auto t0 = std::chrono::steady_clock::now();
      struct Case {
        SpectrumParams params;
        double target;
        bool bound;
      };
      const Case cases[] = {
          {{SpectrumKind::Hyperbolic, 0.3, 40.0, {}, {}}, 0.3, false},
          {{SpectrumKind::Hyperbolic, 0.5, 25.0, {}, {}}, 0.5, false},
          {{SpectrumKind::Quasiperiodic, 0.0, 200.0, {1.0, std::sqrt(2.0), std::numbers::pi / 2}, {}}, kQuasiBound, true},
          {{SpectrumKind::Quasiperiodic, 0.0, 100.0, {1.0, std::sqrt(2.0)}, {}}, kQuasiBound, true},
      };
      bool ok = true;
      std::string detail;
      for (const auto& c : cases) {
        auto spec = gen_spectrum(c.params, seed);
        auto t = gen_template(spec, 1, TemplatePolicy{PolicyKind::Random, seed, 0.0, 0.2});
        auto s = entropy_eps(build_SH(t), 0.1, parse_grid("1:" + format_double(c.params.t_max) + ":80"));
        bool pass = !s.degenerate && (c.bound ? s.slope <= c.target : std::abs(s.slope - c.target) <= kRecoveryFraction * c.target);
        ok = ok && pass;
        detail += (detail.empty() ? "" : "; ") + spec.label.substr(0, spec.label.find('(')) + " n=" + std::to_string(spec.total()) +
                  fmt(" slope=%.4f", s.slope) + (c.bound ? fmt(" (<= %.2f)", c.target) : fmt(" (h=%.1f)", c.target));
      }
      double secs = seconds_since(t0);
      ok = ok && secs < kEntropySeconds;
      report(8, "entropy recovery", ok, detail + fmt("; %.2f s", secs));
    }
    {
      auto r = suite("triangle", seed, 100, 100);
      auto spec = gen_spectrum({SpectrumKind::Hyperbolic, 0.3, 40.0, {}, {}}, seed);
      auto t = gen_template(spec, 1, TemplatePolicy{PolicyKind::Random, seed, 0.0, 0.2});
      auto rep = entropy_sandwich(build_SH(t), t.betti, 0.1, parse_grid("1:40:80"));
      double gap = std::abs(rep.slope_sh - rep.slope_plus);
      bool ok = r.ok && rep.violations == 0 && gap <= kSlopeAgreement && rep.agreement == Agreement::Agree;
      report(9, "triangle counting", ok,
             r.detail + fmt("; hyperbolic SH slope %.4f", rep.slope_sh) + fmt(" SH+ slope %.4f", rep.slope_plus) + ", " + std::to_string(rep.violations) +
                 " sandwich violations");
    }
    {
      auto r = suite("sh-bounds", seed, 1000, 1000);
      report(10, "reparametrization bounds", r.ok, r.detail);
    }
    {
      auto r = suite("cauchy", seed, 50, 50);
      report(11, "Cauchy limit", r.ok, r.detail);
    }
  } catch (const std::exception& e) {
    std::printf("acceptance aborted: %s\n", e.what());
    return 2;
  }
  std::printf("# %d of 11 criteria failed\n", failed);
  return failed ? 1 : 0;
}
