// barc: command-line front end over the C API.

#include <barcode_entropy/barcode_entropy.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

struct Failure {
  bce_status status;
  std::string message;
};

void ok(bce_status s) {
  if (s != BCE_OK) throw Failure{s, bce_last_error()};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  bce_string_free(s);
  return out;
}

template <class T, void (*F)(T*)>
struct Deleter {
  void operator()(T* p) const { F(p); }
};
using Barcode = std::unique_ptr<bce_barcode, Deleter<bce_barcode, bce_barcode_free>>;
using Spectrum = std::unique_ptr<bce_spectrum, Deleter<bce_spectrum, bce_spectrum_free>>;
using Template = std::unique_ptr<bce_template, Deleter<bce_template, bce_template_free>>;
using Profile = std::unique_ptr<bce_profile, Deleter<bce_profile, bce_profile_free>>;
using Complex = std::unique_ptr<bce_complex, Deleter<bce_complex, bce_complex_free>>;
using Series = std::unique_ptr<bce_series, Deleter<bce_series, bce_series_free>>;

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{BCE_E_IO, "cannot open '" + path + "' for writing"};
  out << content;
  if (!out) throw Failure{BCE_E_IO, "error writing '" + path + "'"};
}

// "a:b:n" -> n points from a to b.
std::vector<double> grid(const std::string& spec, const char* flag) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string p;
  while (std::getline(ss, p, ':')) parts.push_back(p);
  auto bad = [&] { return Failure{BCE_E_INPUT, std::string(flag) + ": expected a:b:n, got '" + spec + "'"}; };
  if (parts.size() != 3) throw bad();
  double a = 0, b = 0;
  long n = 0;
  try {
    std::size_t k1 = 0, k2 = 0, k3 = 0;
    a = std::stod(parts[0], &k1);
    b = std::stod(parts[1], &k2);
    n = std::stol(parts[2], &k3);
    if (k1 != parts[0].size() || k2 != parts[1].size() || k3 != parts[2].size()) throw bad();
  } catch (const std::logic_error&) {
    throw bad();
  }
  if (n < 1 || !std::isfinite(a) || !std::isfinite(b) || (n == 1 && a != b)) throw bad();
  std::vector<double> out;
  for (long i = 0; i < n; ++i) out.push_back(n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  return out;
}

struct GenArgs {
  std::string kind = "hyperbolic";
  double rate = 0.3;
  double t_max = 40.0;
  std::vector<double> base;
  std::string file;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_gen(const GenArgs& a) {
  bce_spectrum* s = nullptr;
  if (a.kind == "hyperbolic")
    ok(bce_spectrum_hyperbolic(a.rate, a.t_max, a.seed, &s));
  else if (a.kind == "quasiperiodic")
    ok(bce_spectrum_quasiperiodic(a.base.data(), a.base.size(), a.t_max, &s));
  else
    ok(bce_spectrum_read(a.file.c_str(), &s));
  Spectrum spec(s);
  char* js = nullptr;
  ok(bce_spectrum_to_json(spec.get(), &js));
  emit(a.out, take(js));
  return 0;
}

struct BuildArgs {
  std::string complex;
  std::string mode = "float";
  std::string spectrum;
  std::size_t betti = 1;
  std::string policy = "random";
  std::uint64_t seed = 0;
  double fraction = 0.5;
  double min_length = 0.0;
  std::string emit = "sh";
  double T = 0.0;
  std::string profile = "quadratic";
  double r0 = 2.0;
  double param = 1.0;
  double delta = 0.0;
  std::size_t n_crit = 0;
  std::string format = "text";
  std::string out;
};

std::string render(const bce_barcode* b, const std::vector<std::string>& header, const std::string& format) {
  char* s = nullptr;
  if (format == "json") {
    ok(bce_barcode_to_json(b, &s));
  } else {
    std::vector<const char*> c;
    for (const auto& h : header) c.push_back(h.c_str());
    ok(bce_barcode_to_text(b, c.data(), c.size(), &s));
  }
  return take(s);
}

int cmd_build(const BuildArgs& a) {
  if (!a.complex.empty()) {
    bce_complex* c = nullptr;
    ok(bce_complex_read(a.complex.c_str(), a.mode == "rational", &c));
    Complex cx(c);
    bce_barcode* b = nullptr;
    ok(bce_complex_barcode(cx.get(), &b));
    Barcode bc(b);
    emit(a.out, render(bc.get(), {"source=" + a.complex, "mode=" + a.mode}, a.format));
    return 0;
  }
  if (a.spectrum.empty()) throw Failure{BCE_E_INPUT, "build needs --complex or --spectrum"};
  bce_spectrum* s = nullptr;
  ok(bce_spectrum_read(a.spectrum.c_str(), &s));
  Spectrum spec(s);
  bce_template* t = nullptr;
  ok(bce_template_gen(spec.get(), a.betti, a.policy.c_str(), a.seed, a.fraction, a.min_length, &t));
  Template tpl(t);
  std::vector<std::string> header{"spectrum=" + a.spectrum, "betti=" + std::to_string(a.betti), "policy=" + a.policy, "seed=" + std::to_string(a.seed)};
  if (a.policy == "short-bias") header.push_back("fraction=" + num(a.fraction));
  if (a.min_length > 0) header.push_back("min_length=" + num(a.min_length));

  const bool all = a.emit == "all";
  if (all && (a.out.empty() || a.out == "-")) throw Failure{BCE_E_INPUT, "--emit all needs --out PREFIX"};
  auto target = [&](const char* suffix) { return all ? a.out + "." + suffix + (a.format == "json" ? ".json" : ".bar") : a.out; };

  if (all || a.emit == "sh") {
    bce_barcode* b = nullptr;
    ok(bce_build_sh(tpl.get(), &b));
    Barcode bc(b);
    auto h = header;
    h.insert(h.begin(), "B_SH (period axis)");
    emit(target("sh"), render(bc.get(), h, a.format));
  }
  if (!all && a.emit != "sh" && a.emit != "bh" && a.emit != "bh-delta") throw Failure{BCE_E_INPUT, "--emit must be sh, bh, bh-delta or all"};
  if (all || a.emit != "sh") {
    if (!(a.T > 0)) throw Failure{BCE_E_INPUT, "--T is required for B(H)"};
    bce_profile* p = nullptr;
    ok(bce_profile_new(a.profile.c_str(), a.r0, a.T, a.param, &p));
    Profile prof(p);
    char* d = nullptr;
    ok(bce_profile_describe(prof.get(), &d));
    auto h = header;
    h.push_back("profile=" + take(d));
    if (all || a.emit == "bh") {
      bce_barcode* b = nullptr;
      ok(bce_build_bh(tpl.get(), prof.get(), &b));
      Barcode bc(b);
      auto hh = h;
      hh.insert(hh.begin(), "B(H) (action axis)");
      emit(target("bh"), render(bc.get(), hh, a.format));
    }
    if (all || a.emit == "bh-delta") {
      if (!(a.delta > 0)) throw Failure{BCE_E_INPUT, "--delta is required for B(H_delta)"};
      std::size_t n_crit = a.n_crit == 0 ? a.betti : a.n_crit;
      bce_barcode* b = nullptr;
      ok(bce_build_bh_delta(tpl.get(), prof.get(), a.delta, n_crit, &b));
      Barcode bc(b);
      auto hh = h;
      hh.insert(hh.begin(), "B(H_delta) (action axis)");
      hh.push_back("delta=" + num(a.delta));
      hh.push_back("n_crit=" + std::to_string(n_crit));
      emit(target("bh_delta"), render(bc.get(), hh, a.format));
    }
  }
  return 0;
}

struct EntropyArgs {
  std::string in;
  std::vector<double> eps;
  std::string eps_grid;
  std::string T_grid;
  std::string format = "text";
  std::string out;
};

int cmd_entropy(const EntropyArgs& a) {
  std::vector<double> eps = a.eps;
  if (!a.eps_grid.empty()) {
    auto g = grid(a.eps_grid, "--eps-grid");
    eps.insert(eps.end(), g.begin(), g.end());
  }
  if (eps.empty()) throw Failure{BCE_E_INPUT, "entropy needs --eps or --eps-grid"};
  std::sort(eps.begin(), eps.end(), std::greater<>());
  eps.erase(std::unique(eps.begin(), eps.end()), eps.end());
  auto T = grid(a.T_grid, "--T-grid");

  bce_barcode* b = nullptr;
  ok(bce_barcode_read(a.in.c_str(), &b));
  Barcode bc(b);
  double estimate = 0.0;
  char* w = nullptr;
  ok(bce_entropy_estimate(bc.get(), eps.data(), eps.size(), T.data(), T.size(), &estimate, &w));
  std::string warnings = take(w);

  std::string eps_list;
  for (double e : eps) eps_list += (eps_list.empty() ? "" : ",") + num(e);
  std::string out;
  json series = json::array();
  for (double e : eps) {
    bce_series* s = nullptr;
    ok(bce_entropy_series(bc.get(), e, T.data(), T.size(), &s));
    Series sr(s);
    if (a.format == "json") {
      char* j = nullptr;
      ok(bce_series_summary_json(sr.get(), &j));
      series.push_back(json::parse(take(j)));
    } else {
      std::vector<std::string> c{"source=" + a.in, "eps=" + num(e), "T_grid=" + a.T_grid};
      std::vector<const char*> cp;
      for (const auto& x : c) cp.push_back(x.c_str());
      char* tsv = nullptr;
      ok(bce_series_to_tsv(sr.get(), cp.data(), cp.size(), &tsv));
      char* j = nullptr;
      ok(bce_series_summary_json(sr.get(), &j));
      out += take(tsv) + "# summary " + take(j);  // summary JSON ends in a newline
    }
  }
  if (a.format == "json") {
    json j{{"source", a.in}, {"eps_grid", eps}, {"T_grid", a.T_grid}, {"series", series}, {"estimate", estimate}};
    json ws = json::array();
    std::stringstream ss(warnings);
    for (std::string line; std::getline(ss, line);)
      if (!line.empty()) ws.push_back(line);
    j["warnings"] = ws;
    out = j.dump(2) + "\n";
  } else {
    out += "# eps_grid=" + eps_list + "\n# estimate " + num(estimate) + "\n";
    std::stringstream ss(warnings);
    for (std::string line; std::getline(ss, line);)
      if (!line.empty()) out += "# warning: " + line + "\n";
  }
  emit(a.out, out);
  return 0;
}

struct DistArgs {
  std::string a, b;
  std::string format = "text";
  std::string out;
};

int cmd_dist(const DistArgs& a) {
  bce_barcode* x = nullptr;
  ok(bce_barcode_read(a.a.c_str(), &x));
  Barcode bx(x);
  bce_barcode* y = nullptr;
  ok(bce_barcode_read(a.b.c_str(), &y));
  Barcode by(y);
  double d = 0.0;
  ok(bce_bottleneck(bx.get(), by.get(), &d));
  if (a.format == "json")
    emit(a.out, json{{"a", a.a}, {"b", a.b}, {"bottleneck", num(d)}}.dump() + "\n");
  else
    emit(a.out, num(d) + "\n");
  return 0;
}

struct CheckArgs {
  std::string suite = "all";
  std::uint64_t seed = 0;
  std::size_t count = 0;
  std::size_t jobs = 1;
  std::string mode = "float";
  std::string format = "json";
  std::string out;
};

int cmd_check(const CheckArgs& a) {
  char* r = nullptr;
  bce_status st = bce_check_run(a.suite.c_str(), a.seed, a.count, a.jobs, a.mode.c_str(), &r);
  if (st != BCE_OK && st != BCE_E_CHECK_FAILED) throw Failure{st, bce_last_error()};
  std::string report = take(r);
  if (a.format == "text") {
    auto j = json::parse(report);
    std::string t = "# seed=" + std::to_string(a.seed) + " mode=" + a.mode + "\n";
    for (const auto& s : j["suites"]) {
      t += s["suite"].get<std::string>() + ": " + (s["passed"].get<bool>() ? "PASS" : "FAIL") + " (" + std::to_string(s["instances"].get<std::size_t>()) +
           " instances, " + std::to_string(s["failures"].get<std::size_t>()) + " failures)\n";
      if (!s["passed"].get<bool>()) t += "  first counterexample: " + s["counterexample"].dump() + "\n";
    }
    report = t;
  }
  emit(a.out, report);
  return st == BCE_OK ? 0 : 1;
}

int exit_code(bce_status s) {
  switch (s) {
    case BCE_OK: return 0;
    case BCE_E_CHECK_FAILED: return 1;
    case BCE_E_PARSE:
    case BCE_E_INPUT: return 2;
    default: return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"barcode entropy toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", bce_version());
  double tol = 0.0;
  app.add_option("--tol", tol, "absolute float tolerance (default 1e-9, or BARC_TOL)");

  GenArgs g;
  auto* gen = app.add_subcommand("gen", "generate a Reeb period spectrum (JSON)");
  gen->add_option("--kind", g.kind, "hyperbolic | quasiperiodic | custom")->check(CLI::IsMember({"hyperbolic", "quasiperiodic", "custom"}));
  gen->add_option("--rate", g.rate, "growth rate h (hyperbolic)");
  gen->add_option("--t-max", g.t_max, "largest period");
  gen->add_option("--base", g.base, "base periods (quasiperiodic)")->delimiter(',');
  gen->add_option("--file", g.file, "spectrum file (custom)");
  gen->add_option("--seed", g.seed);
  gen->add_option("--out", g.out);

  BuildArgs b;
  auto* build = app.add_subcommand("build", "barcode of a complex, or B_SH / B(H) / B(H_delta) from a spectrum");
  build->add_option("--complex", b.complex, "filtered complex file");
  build->add_option("--mode", b.mode)->check(CLI::IsMember({"float", "rational"}));
  build->add_option("--spectrum", b.spectrum, "spectrum JSON file");
  build->add_option("--betti", b.betti);
  build->add_option("--policy", b.policy)->check(CLI::IsMember({"nested", "random", "short-bias"}));
  build->add_option("--seed", b.seed);
  build->add_option("--fraction", b.fraction, "short-bias pairing probability");
  build->add_option("--min-length", b.min_length);
  build->add_option("--emit", b.emit, "sh | bh | bh-delta | all");
  build->add_option("--T", b.T, "slope of the Hamiltonian");
  build->add_option("--profile", b.profile)->check(CLI::IsMember({"quadratic", "cosh", "quartic"}));
  build->add_option("--r0", b.r0);
  build->add_option("--param", b.param, "cosh gamma or quartic beta");
  build->add_option("--delta", b.delta, "Morse perturbation size");
  build->add_option("--n-crit", b.n_crit, "critical points of the perturbation (default betti)");
  build->add_option("--format", b.format)->check(CLI::IsMember({"text", "json"}));
  build->add_option("--out", b.out, "output path (prefix for --emit all)");

  EntropyArgs e;
  auto* ent = app.add_subcommand("entropy", "bar-count series and growth-rate estimate");
  ent->add_option("--in", e.in, "barcode file")->required();
  ent->add_option("--eps", e.eps)->delimiter(',');
  ent->add_option("--eps-grid", e.eps_grid, "a:b:n");
  ent->add_option("--T-grid", e.T_grid, "a:b:n")->required();
  ent->add_option("--format", e.format)->check(CLI::IsMember({"text", "json"}));
  ent->add_option("--out", e.out);

  DistArgs d;
  auto* dist = app.add_subcommand("dist", "bottleneck distance of two barcode files");
  dist->add_option("a", d.a)->required();
  dist->add_option("b", d.b)->required();
  dist->add_option("--format", d.format)->check(CLI::IsMember({"text", "json"}));
  dist->add_option("--out", d.out);

  CheckArgs c;
  auto* check = app.add_subcommand("check", "run property suites");
  check->add_option("--suite", c.suite, "suite name or all");
  check->add_option("--seed", c.seed);
  check->add_option("--count", c.count, "instances per suite (0 = default)");
  check->add_option("--jobs", c.jobs)->check(CLI::PositiveNumber);
  check->add_option("--mode", c.mode)->check(CLI::IsMember({"float", "rational"}));
  check->add_option("--format", c.format)->check(CLI::IsMember({"text", "json"}));
  check->add_option("--out", c.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    return app.exit(err) == 0 ? 0 : 2;
  }

  try {
    if (tol > 0) ok(bce_set_tolerance(tol));
    if (gen->parsed()) return cmd_gen(g);
    if (build->parsed()) return cmd_build(b);
    if (ent->parsed()) return cmd_entropy(e);
    if (dist->parsed()) return cmd_dist(d);
    if (check->parsed()) return cmd_check(c);
  } catch (const Failure& f) {
    std::cerr << "barc: " << bce_status_name(f.status) << ": " << f.message << "\n";
    return exit_code(f.status);
  } catch (const std::exception& ex) {
    std::cerr << "barc: error: " << ex.what() << "\n";
    return 3;
  }
  return 2;
}
