#include <doctest.h>

#include <barcode_entropy/barcode_entropy.h>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>
#include <thread>

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  bce_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::strlen(bce_version()) > 0);
  CHECK(std::string(bce_status_name(BCE_E_PARSE)) == "parse error");
  CHECK(std::string(bce_status_name(BCE_OK)) == "ok");
}

TEST_CASE("barcode handle lifecycle") {
  bce_barcode* b = nullptr;
  REQUIRE(bce_barcode_new(&b) == BCE_OK);
  CHECK(bce_barcode_add(b, 0.0, INFINITY) == BCE_OK);
  CHECK(bce_barcode_add(b, 1.0, 2.0) == BCE_OK);
  CHECK(bce_barcode_add(b, 2.0, 1.0) == BCE_E_INPUT);
  CHECK(std::strlen(bce_last_error()) > 0);
  size_t n = 0;
  CHECK(bce_barcode_size(b, &n) == BCE_OK);
  CHECK(n == 2);
  double l = 0, r = 0;
  int open = 1;
  CHECK(bce_barcode_get(b, 1, &l, &r, &open) == BCE_OK);
  CHECK(l == 1.0);
  CHECK(r == 2.0);
  CHECK(open == 0);
  CHECK(bce_barcode_get(b, 5, &l, &r, &open) == BCE_E_INPUT);

  bce_barcode* t = nullptr;
  CHECK(bce_barcode_truncate(b, 1.5, &t) == BCE_OK);
  CHECK(bce_barcode_get(t, 1, &l, &r, &open) == BCE_OK);
  CHECK(r == 1.5);
  CHECK(open == 1);
  CHECK(bce_barcode_n_eps(t, 0.4, &n) == BCE_OK);
  CHECK(n == 2);

  double d = -1;
  CHECK(bce_bottleneck(b, t, &d) == BCE_OK);
  // the essential bar became finite, so no matching exists
  CHECK(std::isinf(d));
  char* text = nullptr;
  CHECK(bce_barcode_to_text(b, nullptr, 0, &text) == BCE_OK);
  bce_barcode* back = nullptr;
  CHECK(bce_barcode_parse(text, "mem", &back) == BCE_OK);
  bce_string_free(text);
  CHECK(bce_bottleneck(b, back, &d) == BCE_OK);
  CHECK(d == 0.0);
  bce_barcode_free(back);
  bce_barcode_free(t);
  bce_barcode_free(b);
  bce_barcode_free(nullptr);
}

TEST_CASE("null arguments and parse errors") {
  CHECK(bce_barcode_new(nullptr) == BCE_E_INPUT);
  bce_barcode* b = nullptr;
  CHECK(bce_barcode_parse("# barcode v1\n1 0\n", "bad.bar", &b) == BCE_E_PARSE);
  CHECK(b == nullptr);
  CHECK(std::string(bce_last_error()).find("bad.bar:2:") != std::string::npos);
  CHECK(bce_barcode_read("/nonexistent/file.bar", &b) == BCE_E_IO);
}

TEST_CASE("last error is per thread") {
  bce_barcode* b = nullptr;
  CHECK(bce_barcode_parse("junk", "main", &b) == BCE_E_PARSE);
  std::string other;
  std::thread th([&] {
    bce_barcode* x = nullptr;
    bce_barcode_new(&x);
    other = bce_last_error();
    bce_barcode_free(x);
  });
  th.join();
  CHECK(other.empty());
  CHECK(std::string(bce_last_error()).find("main:1:") != std::string::npos);
}

TEST_CASE("complexes in float and rational mode") {
  const char* src = "# fcomplex v1\ngen x 0\ngen y 1/3\ngen z 2\nbnd z = y\n";
  bce_complex* c = nullptr;
  CHECK(bce_complex_parse(src, "c", 0, &c) == BCE_E_PARSE);
  REQUIRE(bce_complex_parse(src, "c", 1, &c) == BCE_OK);
  size_t dim = 0;
  CHECK(bce_complex_dim(c, &dim) == BCE_OK);
  CHECK(dim == 3);
  bce_barcode* b = nullptr;
  REQUIRE(bce_complex_barcode(c, &b) == BCE_OK);
  size_t n = 0;
  bce_barcode_size(b, &n);
  CHECK(n == 2);
  bce_barcode_free(b);
  bce_complex_free(c);
  CHECK(bce_complex_parse("# fcomplex v1\ngen y 3\ngen z 2\nbnd z = y\n", "c", 0, &c) == BCE_OK);
  CHECK(bce_complex_barcode(c, &b) == BCE_E_PRECONDITION);
  bce_complex_free(c);
}

TEST_CASE("spectrum, template, profile and builders") {
  bce_spectrum* s = nullptr;
  REQUIRE(bce_spectrum_hyperbolic(0.3, 30.0, 7, &s) == BCE_OK);
  size_t total = 0;
  CHECK(bce_spectrum_total(s, &total) == BCE_OK);
  CHECK(total > 100);
  bce_profile* p = nullptr;
  REQUIRE(bce_profile_new("quadratic", 3.0, 4.0, 0.0, &p) == BCE_OK);
  double v = 0;
  CHECK(bce_profile_s_h(p, 2.0, &v) == BCE_OK);
  CHECK(v == doctest::Approx(3.0));
  CHECK(bce_profile_s_h(p, 5.0, &v) == BCE_E_DOMAIN);
  CHECK(bce_profile_new("wavy", 3.0, 4.0, 0.0, &p) == BCE_E_INPUT);

  bce_template* t = nullptr;
  REQUIRE(bce_template_gen(s, 1, "random", 7, 0.0, 0.2, &t) == BCE_OK);
  char* problems = nullptr;
  CHECK(bce_template_validate(t, &problems) == BCE_OK);
  CHECK(take(problems).empty());
  CHECK(bce_template_gen(s, 1, "greedy", 7, 0.0, 0.2, &t) == BCE_E_INPUT);

  bce_barcode *sh = nullptr, *bh = nullptr, *bhd = nullptr;
  CHECK(bce_build_sh(t, &sh) == BCE_OK);
  CHECK(bce_build_bh(t, p, &bh) == BCE_OK);
  CHECK(bce_build_bh_delta(t, p, 1e-4, 1, &bhd) == BCE_OK);
  double d = 0;
  CHECK(bce_bottleneck(bh, bhd, &d) == BCE_OK);
  CHECK(d <= 1e-4 + 1e-12);

  double Ts[40];
  for (int i = 0; i < 40; ++i) Ts[i] = 1.0 + 29.0 * i / 39.0;
  bce_series* se = nullptr;
  REQUIRE(bce_entropy_series(sh, 0.1, Ts, 40, &se) == BCE_OK);
  double slope = 0;
  int degenerate = 1;
  CHECK(bce_series_slope(se, &slope, &degenerate) == BCE_OK);
  CHECK(degenerate == 0);
  CHECK(slope == doctest::Approx(0.3).epsilon(0.1));
  char* tsv = nullptr;
  CHECK(bce_series_to_tsv(se, nullptr, 0, &tsv) == BCE_OK);
  CHECK(take(tsv).rfind("T\tcount\tlogcount\n", 0) == 0);
  bce_series_free(se);

  double eps[3] = {0.16, 0.08, 0.04}, est = 0;
  char* warnings = nullptr;
  CHECK(bce_entropy_estimate(sh, eps, 3, Ts, 40, &est, &warnings) == BCE_OK);
  take(warnings);
  CHECK(est == doctest::Approx(slope).epsilon(0.1));
  double bad_eps[2] = {0.1, 0.2};
  CHECK(bce_entropy_estimate(sh, bad_eps, 2, Ts, 40, &est, nullptr) == BCE_E_INPUT);

  char* report = nullptr;
  CHECK(bce_entropy_sandwich(sh, 1, 0.1, Ts, 40, &report) == BCE_OK);
  CHECK(take(report).find("\"violations\": 0") != std::string::npos);

  bce_barcode_free(sh);
  bce_barcode_free(bh);
  bce_barcode_free(bhd);
  bce_template_free(t);
  bce_profile_free(p);
  bce_spectrum_free(s);
}

TEST_CASE("check runner") {
  char* names = nullptr;
  CHECK(bce_check_suites(&names) == BCE_OK);
  CHECK(take(names).find("equivalence") != std::string::npos);
  char* report = nullptr;
  CHECK(bce_check_run("svd", 1, 10, 1, "float", &report) == BCE_OK);
  CHECK(take(report).find("\"passed\": true") != std::string::npos);
  CHECK(bce_check_run("bogus", 1, 10, 1, "float", &report) == BCE_E_INPUT);
  CHECK(bce_check_run("svd", 1, 10, 1, "decimal", &report) == BCE_E_INPUT);
}

TEST_CASE("tolerance") {
  double old = bce_get_tolerance();
  CHECK(bce_set_tolerance(1e-6) == BCE_OK);
  CHECK(bce_get_tolerance() == 1e-6);
  CHECK(bce_set_tolerance(-1.0) == BCE_E_DOMAIN);
  bce_set_tolerance(old);
}
