#include "bce/filtered_complex.hpp"

#include <algorithm>

namespace bce {

FilteredComplex perturb_actions(const FilteredComplex& c, const std::map<std::string, double>& delta) {
  auto values = c.space().values();
  for (const auto& [label, d] : delta) {
    if (!std::isfinite(d)) throw InputError("perturbation for '" + label + "' is not finite");
    values[c.space().index_of(label)] += d;
  }
  FilteredComplex out(OrthoSpace(c.space().labels(), std::move(values)), c.boundary());
  for (const auto& v : validate(out))
    if (v.kind == ComplexViolation::Kind::ActionIncrease) throw PreconditionError("perturbed complex is not action-decreasing: " + v.detail);
  return out;
}

FilteredComplex ShortBarQuery::complex_C() const { return FilteredComplex(V1.direct_sum(W), d_C); }
FilteredComplex ShortBarQuery::complex_D() const { return FilteredComplex(V2.direct_sum(W), d_D); }

namespace {

std::vector<Interval> short_pairs(const FilteredComplex& c, double E, double eta) {
  std::vector<Interval> out;
  for (const auto& p : persistence(c).pairs)
    if (p.birth > E && p.death - p.birth < eta) out.emplace_back(p.birth, p.death);
  std::sort(out.begin(), out.end());
  return out;
}

F2Vec w_part(const F2Vec& col, std::size_t offset, std::size_t k) {
  F2Vec out(k);
  for (std::size_t i = 0; i < k; ++i)
    if (col.test(offset + i)) out.set(i);
  return out;
}

}  // namespace

std::vector<std::string> short_bar_violations(const ShortBarQuery& q) {
  std::vector<std::string> out;
  const std::size_t n1 = q.V1.dim(), n2 = q.V2.dim(), k = q.W.dim();
  if (q.d_C.size() != n1 + k || q.d_D.size() != n2 + k) {
    out.push_back("dimension mismatch between differentials and spaces");
    return out;
  }
  if (!(q.eta > 0.0)) out.push_back("eta must be positive");

  for (const OrthoSpace* s : {&q.V1, &q.V2})
    for (std::size_t i = 0; i < s->dim(); ++i)
      if (s->value(i) > q.E) out.push_back("hypothesis (1): l(" + s->label(i) + ") = " + format_double(s->value(i)) + " > E");
  for (std::size_t i = 0; i < k; ++i)
    if (!(q.W.value(i) > q.E)) out.push_back("hypothesis (1): l(" + q.W.label(i) + ") = " + format_double(q.W.value(i)) + " <= E");

  FilteredComplex C, D;
  try {
    C = q.complex_C();
    D = q.complex_D();
  } catch (const Error& e) {
    out.push_back(e.what());
    return out;
  }
  for (const auto& v : validate(C)) out.push_back("d_C: " + v.detail);
  for (const auto& v : validate(D)) out.push_back("d_D: " + v.detail);

  for (std::size_t i = 0; i < k; ++i) {
    F2Vec diff = w_part(q.d_C[n1 + i], n1, k) ^ w_part(q.d_D[n2 + i], n2, k);
    auto n = q.W.norm(diff);
    if (n && !(*n < q.W.value(i) - q.eta))
      out.push_back("hypothesis (2): l(pi_W(d_C - d_D) " + q.W.label(i) + ") = " + format_double(*n) + " >= l(" + q.W.label(i) + ") - eta = " +
                    format_double(q.W.value(i) - q.eta));
  }
  return out;
}

ShortBarReport compare_short_bars(const ShortBarQuery& q) {
  auto bad = short_bar_violations(q);
  if (!bad.empty()) throw PreconditionError("short-bar query rejected: " + bad.front());
  ShortBarReport r;
  r.c_bars = short_pairs(q.complex_C(), q.E, q.eta);
  r.d_bars = short_pairs(q.complex_D(), q.E, q.eta);
  r.equal = r.c_bars.size() == r.d_bars.size();
  for (std::size_t i = 0; r.equal && i < r.c_bars.size(); ++i)
    r.equal = approx_equal(r.c_bars[i].first, r.d_bars[i].first) && approx_equal(r.c_bars[i].second, r.d_bars[i].second);
  return r;
}

}  // namespace bce
