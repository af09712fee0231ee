#include "barcode_entropy/barcode_entropy.h"

#include "bce/checks.hpp"
#include "bce/entropy.hpp"
#include "bce/filtered_complex.hpp"
#include "bce/io.hpp"
#include "bce/reeb_model.hpp"
#include "bce/triangle.hpp"

#include <json.hpp>

#include <cstdlib>
#include <cstring>
#include <variant>

struct bce_barcode {
  bce::Barcode v;
};
struct bce_complex {
  std::variant<bce::FilteredComplex, bce::FilteredComplexQ> v;
};
struct bce_spectrum {
  bce::ReebSpectrum v;
};
struct bce_template {
  bce::BarcodeTemplate v;
};
struct bce_profile {
  bce::RadialProfile v;
};
struct bce_series {
  bce::EntropySeries v;
};

namespace {

thread_local std::string g_last_error;

template <class F>
bce_status guard(F&& f) {
  g_last_error.clear();
  try {
    return f();
  } catch (const bce::ParseError& e) {
    g_last_error = e.what();
    return BCE_E_PARSE;
  } catch (const bce::InputError& e) {
    g_last_error = e.what();
    return BCE_E_INPUT;
  } catch (const bce::PreconditionError& e) {
    g_last_error = e.what();
    return BCE_E_PRECONDITION;
  } catch (const bce::DomainError& e) {
    g_last_error = e.what();
    return BCE_E_DOMAIN;
  } catch (const bce::CapabilityError& e) {
    g_last_error = e.what();
    return BCE_E_CAPABILITY;
  } catch (const bce::IoError& e) {
    g_last_error = e.what();
    return BCE_E_IO;
  } catch (const std::exception& e) {
    g_last_error = std::string("internal error: ") + e.what();
    return BCE_E_INTERNAL;
  } catch (...) {
    g_last_error = "internal error";
    return BCE_E_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (p == nullptr) throw bce::InputError(std::string(what) + " is NULL");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<std::string> strings(const char* const* c, std::size_t n) {
  std::vector<std::string> out;
  if (n > 0) need(c, "comments");
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(c[i] ? c[i] : "");
  return out;
}

std::vector<double> doubles(const double* p, std::size_t n, const char* what) {
  if (n > 0) need(p, what);
  return std::vector<double>(p, p + n);
}

template <class H, class V>
H* wrap(V&& v) {
  return new H{std::forward<V>(v)};
}

}  // namespace

extern "C" {

const char* bce_version(void) { return "0.1.0"; }

const char* bce_last_error(void) { return g_last_error.c_str(); }

const char* bce_status_name(bce_status s) {
  switch (s) {
    case BCE_OK: return "ok";
    case BCE_E_INPUT: return "input error";
    case BCE_E_PRECONDITION: return "precondition error";
    case BCE_E_DOMAIN: return "domain error";
    case BCE_E_CAPABILITY: return "capability error";
    case BCE_E_PARSE: return "parse error";
    case BCE_E_IO: return "io error";
    case BCE_E_CHECK_FAILED: return "check failed";
    case BCE_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void bce_string_free(char* s) { std::free(s); }

bce_status bce_set_tolerance(double tol) {
  return guard([&] {
    bce::set_tolerance(tol);
    return BCE_OK;
  });
}

double bce_get_tolerance(void) { return bce::tolerance(); }

bce_status bce_barcode_new(bce_barcode** out) {
  return guard([&] {
    need(out, "out");
    *out = new bce_barcode{};
    return BCE_OK;
  });
}

void bce_barcode_free(bce_barcode* b) { delete b; }

bce_status bce_barcode_add(bce_barcode* b, double left, double right) {
  return guard([&] {
    need(b, "barcode");
    b->v.add(left, right);
    return BCE_OK;
  });
}

bce_status bce_barcode_size(const bce_barcode* b, size_t* out) {
  return guard([&] {
    need(b, "barcode");
    need(out, "out");
    *out = b->v.size();
    return BCE_OK;
  });
}

bce_status bce_barcode_get(const bce_barcode* b, size_t i, double* left, double* right, int* right_open) {
  return guard([&] {
    need(b, "barcode");
    if (i >= b->v.size()) throw bce::InputError("bar index " + std::to_string(i) + " out of range");
    const auto& bar = b->v[i];
    if (left) *left = bar.left;
    if (right) *right = bar.right;
    if (right_open) *right_open = bar.right_open ? 1 : 0;
    return BCE_OK;
  });
}

bce_status bce_barcode_parse(const char* text, const char* source, bce_barcode** out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    *out = wrap<bce_barcode>(bce::parse_barcode(text, source ? source : "<input>"));
    return BCE_OK;
  });
}

bce_status bce_barcode_read(const char* path, bce_barcode** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = wrap<bce_barcode>(bce::read_barcode_file(path));
    return BCE_OK;
  });
}

bce_status bce_barcode_to_text(const bce_barcode* b, const char* const* comments, size_t n_comments, char** out) {
  return guard([&] {
    need(b, "barcode");
    need(out, "out");
    *out = dup(bce::barcode_to_text(b->v, strings(comments, n_comments)));
    return BCE_OK;
  });
}

bce_status bce_barcode_to_json(const bce_barcode* b, char** out) {
  return guard([&] {
    need(b, "barcode");
    need(out, "out");
    *out = dup(bce::barcode_to_json(b->v));
    return BCE_OK;
  });
}

bce_status bce_barcode_truncate(const bce_barcode* b, double T, bce_barcode** out) {
  return guard([&] {
    need(b, "barcode");
    need(out, "out");
    *out = wrap<bce_barcode>(bce::truncate(b->v, T));
    return BCE_OK;
  });
}

bce_status bce_barcode_shift(const bce_barcode* b, double delta, bce_barcode** out) {
  return guard([&] {
    need(b, "barcode");
    need(out, "out");
    *out = wrap<bce_barcode>(bce::shift(b->v, delta));
    return BCE_OK;
  });
}

bce_status bce_barcode_n_eps(const bce_barcode* b, double eps, size_t* out) {
  return guard([&] {
    need(b, "barcode");
    need(out, "out");
    *out = bce::n_eps(b->v, eps);
    return BCE_OK;
  });
}

bce_status bce_bottleneck(const bce_barcode* a, const bce_barcode* b, double* out) {
  return guard([&] {
    need(a, "barcode");
    need(b, "barcode");
    need(out, "out");
    *out = bce::bottleneck(a->v, b->v);
    return BCE_OK;
  });
}

bce_status bce_complex_parse(const char* text, const char* source, int rational, bce_complex** out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    std::string src = source ? source : "<input>";
    if (rational)
      *out = new bce_complex{bce::parse_complex_rational(text, src)};
    else
      *out = new bce_complex{bce::parse_complex(text, src)};
    return BCE_OK;
  });
}

bce_status bce_complex_read(const char* path, int rational, bce_complex** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    std::string text = bce::read_text_file(path);
    if (rational)
      *out = new bce_complex{bce::parse_complex_rational(text, path)};
    else
      *out = new bce_complex{bce::parse_complex(text, path)};
    return BCE_OK;
  });
}

void bce_complex_free(bce_complex* c) { delete c; }

bce_status bce_complex_dim(const bce_complex* c, size_t* out) {
  return guard([&] {
    need(c, "complex");
    need(out, "out");
    *out = std::visit([](const auto& x) { return x.dim(); }, c->v);
    return BCE_OK;
  });
}

bce_status bce_complex_barcode(const bce_complex* c, bce_barcode** out) {
  return guard([&] {
    need(c, "complex");
    need(out, "out");
    *out = wrap<bce_barcode>(std::visit([](const auto& x) { return bce::barcode_of(x); }, c->v));
    return BCE_OK;
  });
}

bce_status bce_spectrum_hyperbolic(double rate, double t_max, uint64_t seed, bce_spectrum** out) {
  return guard([&] {
    need(out, "out");
    bce::SpectrumParams p;
    p.kind = bce::SpectrumKind::Hyperbolic;
    p.rate = rate;
    p.t_max = t_max;
    *out = wrap<bce_spectrum>(bce::gen_spectrum(p, seed));
    return BCE_OK;
  });
}

bce_status bce_spectrum_quasiperiodic(const double* base, size_t n, double t_max, bce_spectrum** out) {
  return guard([&] {
    need(out, "out");
    bce::SpectrumParams p;
    p.kind = bce::SpectrumKind::Quasiperiodic;
    p.base = doubles(base, n, "base");
    p.t_max = t_max;
    *out = wrap<bce_spectrum>(bce::gen_spectrum(p, 0));
    return BCE_OK;
  });
}

bce_status bce_spectrum_parse(const char* json, const char* source, bce_spectrum** out) {
  return guard([&] {
    need(json, "json");
    need(out, "out");
    *out = wrap<bce_spectrum>(bce::parse_spectrum(json, source ? source : "<input>"));
    return BCE_OK;
  });
}

bce_status bce_spectrum_read(const char* path, bce_spectrum** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = wrap<bce_spectrum>(bce::read_spectrum_file(path));
    return BCE_OK;
  });
}

void bce_spectrum_free(bce_spectrum* s) { delete s; }

bce_status bce_spectrum_to_json(const bce_spectrum* s, char** out) {
  return guard([&] {
    need(s, "spectrum");
    need(out, "out");
    *out = dup(bce::spectrum_to_json(s->v));
    return BCE_OK;
  });
}

bce_status bce_spectrum_total(const bce_spectrum* s, size_t* out) {
  return guard([&] {
    need(s, "spectrum");
    need(out, "out");
    *out = s->v.total();
    return BCE_OK;
  });
}

bce_status bce_spectrum_count_below(const bce_spectrum* s, double T, size_t* out) {
  return guard([&] {
    need(s, "spectrum");
    need(out, "out");
    *out = s->v.count_below(T);
    return BCE_OK;
  });
}

bce_status bce_spectrum_contains(const bce_spectrum* s, double t, int* out) {
  return guard([&] {
    need(s, "spectrum");
    need(out, "out");
    *out = s->v.contains(t) ? 1 : 0;
    return BCE_OK;
  });
}

bce_status bce_profile_new(const char* shape, double r0, double T, double param, bce_profile** out) {
  return guard([&] {
    need(shape, "shape");
    need(out, "out");
    std::string s = shape;
    if (s == "quadratic")
      *out = wrap<bce_profile>(bce::RadialProfile::quadratic(r0, T));
    else if (s == "cosh")
      *out = wrap<bce_profile>(bce::RadialProfile::cosh(r0, T, param));
    else if (s == "quartic")
      *out = wrap<bce_profile>(bce::RadialProfile::quartic(r0, T, param));
    else
      throw bce::InputError("unknown profile shape '" + s + "' (expected quadratic, cosh or quartic)");
    return BCE_OK;
  });
}

void bce_profile_free(bce_profile* p) { delete p; }

bce_status bce_profile_constants(const bce_profile* p, double* r0, double* T, double* C) {
  return guard([&] {
    need(p, "profile");
    if (r0) *r0 = p->v.r0();
    if (T) *T = p->v.T();
    if (C) *C = p->v.C();
    return BCE_OK;
  });
}

bce_status bce_profile_s_h(const bce_profile* p, double t, double* out) {
  return guard([&] {
    need(p, "profile");
    need(out, "out");
    *out = p->v.s_h(t);
    return BCE_OK;
  });
}

bce_status bce_profile_describe(const bce_profile* p, char** out) {
  return guard([&] {
    need(p, "profile");
    need(out, "out");
    *out = dup(p->v.describe());
    return BCE_OK;
  });
}

bce_status bce_template_gen(const bce_spectrum* s, size_t betti, const char* policy, uint64_t seed, double fraction, double min_length,
                            bce_template** out) {
  return guard([&] {
    need(s, "spectrum");
    need(policy, "policy");
    need(out, "out");
    bce::TemplatePolicy pol;
    pol.kind = bce::parse_policy(policy);
    pol.seed = seed;
    pol.fraction = fraction;
    pol.min_length = min_length;
    *out = wrap<bce_template>(bce::gen_template(s->v, betti, pol));
    return BCE_OK;
  });
}

void bce_template_free(bce_template* t) { delete t; }

bce_status bce_template_validate(const bce_template* t, char** problems) {
  return guard([&] {
    need(t, "template");
    auto bad = bce::validate_template(t->v);
    std::string s;
    for (const auto& b : bad) s += b + "\n";
    if (problems) *problems = dup(s);
    return bad.empty() ? BCE_OK : BCE_E_PRECONDITION;
  });
}

bce_status bce_build_sh(const bce_template* t, bce_barcode** out) {
  return guard([&] {
    need(t, "template");
    need(out, "out");
    *out = wrap<bce_barcode>(bce::build_SH(t->v));
    return BCE_OK;
  });
}

bce_status bce_build_bh(const bce_template* t, const bce_profile* p, bce_barcode** out) {
  return guard([&] {
    need(t, "template");
    need(p, "profile");
    need(out, "out");
    *out = wrap<bce_barcode>(bce::build_BH(bce::restrict_below(t->v, p->v.T()), p->v));
    return BCE_OK;
  });
}

bce_status bce_build_bh_delta(const bce_template* t, const bce_profile* p, double delta, size_t n_crit, bce_barcode** out) {
  return guard([&] {
    need(t, "template");
    need(p, "profile");
    need(out, "out");
    auto tr = bce::restrict_below(t->v, p->v.T());
    auto bh = bce::build_BH(tr, p->v);
    *out = wrap<bce_barcode>(bce::morse_perturb(bh, p->v, tr, delta, n_crit));
    return BCE_OK;
  });
}

bce_status bce_entropy_series(const bce_barcode* b, double eps, const double* T_grid, size_t n, bce_series** out) {
  return guard([&] {
    need(b, "barcode");
    need(out, "out");
    *out = wrap<bce_series>(bce::entropy_eps(b->v, eps, doubles(T_grid, n, "T_grid")));
    return BCE_OK;
  });
}

void bce_series_free(bce_series* s) { delete s; }

bce_status bce_series_slope(const bce_series* s, double* slope, int* degenerate) {
  return guard([&] {
    need(s, "series");
    if (slope) *slope = s->v.slope;
    if (degenerate) *degenerate = s->v.degenerate ? 1 : 0;
    return BCE_OK;
  });
}

bce_status bce_series_to_tsv(const bce_series* s, const char* const* comments, size_t n_comments, char** out) {
  return guard([&] {
    need(s, "series");
    need(out, "out");
    *out = dup(bce::series_to_tsv(s->v, strings(comments, n_comments)));
    return BCE_OK;
  });
}

bce_status bce_series_summary_json(const bce_series* s, char** out) {
  return guard([&] {
    need(s, "series");
    need(out, "out");
    *out = dup(bce::series_summary_json(s->v));
    return BCE_OK;
  });
}

bce_status bce_entropy_estimate(const bce_barcode* b, const double* eps_grid, size_t n_eps, const double* T_grid, size_t n_T, double* estimate,
                                char** warnings) {
  return guard([&] {
    need(b, "barcode");
    need(estimate, "estimate");
    auto prof = bce::entropy(b->v, doubles(eps_grid, n_eps, "eps_grid"), doubles(T_grid, n_T, "T_grid"));
    *estimate = prof.estimate;
    if (warnings) {
      std::string w;
      for (const auto& x : prof.warnings) w += x + "\n";
      *warnings = dup(w);
    }
    return BCE_OK;
  });
}

bce_status bce_entropy_sandwich(const bce_barcode* sh, size_t betti, double eps, const double* T_grid, size_t n_T, char** report) {
  return guard([&] {
    need(sh, "barcode");
    need(report, "report");
    auto r = bce::entropy_sandwich(sh->v, betti, eps, doubles(T_grid, n_T, "T_grid"));
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.rows)
      rows.push_back({{"T", row.T}, {"lower", row.lower}, {"middle", row.middle}, {"upper", row.upper}, {"ok", row.ok}});
    nlohmann::json j{{"eps", eps},           {"betti", betti},           {"violations", r.violations},
                     {"slope_sh", r.slope_sh}, {"slope_plus", r.slope_plus}, {"agreement", bce::to_string(r.agreement)},
                     {"rows", rows}};
    *report = dup(j.dump(2) + "\n");
    return r.violations == 0 ? BCE_OK : BCE_E_CHECK_FAILED;
  });
}

bce_status bce_check_suites(char** names) {
  return guard([&] {
    need(names, "names");
    std::string s;
    for (const auto& n : bce::checks::suite_names()) s += n + "\n";
    *names = dup(s);
    return BCE_OK;
  });
}

bce_status bce_check_run(const char* suite, uint64_t seed, size_t count, size_t jobs, const char* mode, char** report) {
  return guard([&] {
    need(suite, "suite");
    need(report, "report");
    bce::checks::CheckOptions o;
    o.seed = seed;
    o.count = count;
    o.jobs = jobs;
    o.mode = bce::checks::parse_mode(mode ? mode : "float");
    auto reps = bce::checks::run_suites(suite, o);
    *report = dup(bce::checks::reports_to_json(reps, o));
    for (const auto& r : reps)
      if (!r.passed()) {
        g_last_error = "suite '" + r.suite + "' failed on instance " + std::to_string(r.first_failure);
        return BCE_E_CHECK_FAILED;
      }
    return BCE_OK;
  });
}

}  // extern "C"
