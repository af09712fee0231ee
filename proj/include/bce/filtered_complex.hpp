#pragma once

#include "bce/barcode.hpp"
#include "bce/na_linalg.hpp"

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace bce {

/// Generators with actions plus an F2 differential given by columns.
template <class V>
class FilteredComplexT {
 public:
  FilteredComplexT() = default;
  FilteredComplexT(OrthoSpaceT<V> space, std::vector<F2Vec> boundary) : space_(std::move(space)), boundary_(std::move(boundary)) {
    if (boundary_.size() != space_.dim())
      throw InputError("complex: " + std::to_string(boundary_.size()) + " boundary columns for " + std::to_string(space_.dim()) + " generators");
    for (const auto& c : boundary_)
      if (c.size() != space_.dim()) throw InputError("complex: boundary column has wrong length");
  }

  const OrthoSpaceT<V>& space() const { return space_; }
  const std::vector<F2Vec>& boundary() const { return boundary_; }
  std::size_t dim() const { return space_.dim(); }

  F2Vec d(const F2Vec& v) const {
    space_.check_size(v);
    F2Vec out = space_.zero();
    for (auto i = v.find_first(); i != F2Vec::npos; i = v.find_next(i)) out ^= boundary_[i];
    return out;
  }

  FilteredMapT<V> as_map() const { return FilteredMapT<V>(space_, space_, boundary_); }

 private:
  OrthoSpaceT<V> space_;
  std::vector<F2Vec> boundary_;
};

using FilteredComplex = FilteredComplexT<double>;
using FilteredComplexQ = FilteredComplexT<Rational>;

struct ComplexViolation {
  enum class Kind { BoundarySquare, ActionIncrease };
  Kind kind;
  std::string label;   // generator witnessing the violation
  std::string detail;
};

/// Every violation of ∂² = 0 or ℓ(∂v) ≤ ℓ(v); empty iff valid.
template <class V>
std::vector<ComplexViolation> validate(const FilteredComplexT<V>& c) {
  std::vector<ComplexViolation> out;
  const auto& s = c.space();
  for (std::size_t j = 0; j < c.dim(); ++j) {
    const F2Vec& col = c.boundary()[j];
    F2Vec dd = c.d(col);
    if (dd.any()) {
      auto labels = s.support_labels(dd);
      std::string terms;
      for (const auto& l : labels) terms += (terms.empty() ? "" : "+") + l;
      out.push_back({ComplexViolation::Kind::BoundarySquare, s.label(j), "d(d " + s.label(j) + ") = " + terms});
    }
    auto n = s.norm(col);
    if (n && s.value(j) < *n && !ValueTraits<V>::equal(s.value(j), *n)) {
      std::size_t lead = s.leading(col);
      out.push_back({ComplexViolation::Kind::ActionIncrease, s.label(j),
                     "l(d " + s.label(j) + ") = l(" + s.label(lead) + ") exceeds l(" + s.label(j) + ")"});
    }
  }
  return out;
}

template <class V>
void require_valid(const FilteredComplexT<V>& c, const std::string& what = "complex") {
  auto v = validate(c);
  if (!v.empty()) {
    const char* kind = v.front().kind == ComplexViolation::Kind::BoundarySquare ? "d^2 != 0" : "action increase";
    throw PreconditionError(what + " is invalid (" + kind + " at " + v.front().label + ": " + v.front().detail + ")");
  }
}

/// Persistence pair (ℓ(y), ℓ(z)) with ∂z = y from the SVD, zero gaps included.
template <class V>
struct PersistencePairT {
  V birth;
  V death;
  std::size_t y_lead;
  std::size_t z_lead;
};

template <class V>
struct PersistenceDataT {
  std::vector<PersistencePairT<V>> pairs;
  std::vector<std::size_t> essential;  // generators carrying (ℓ(x), ∞)
};

template <class V>
PersistenceDataT<V> persistence(const FilteredComplexT<V>& c) {
  auto res = svd(c.as_map());
  PersistenceDataT<V> out;
  std::set<std::size_t> pivots;
  for (const auto& p : res.paired) {
    out.pairs.push_back({c.space().value(p.w_lead), c.space().value(p.v_lead), p.w_lead, p.v_lead});
    pivots.insert(p.w_lead);
  }
  for (std::size_t lead : res.kernel_leads)
    if (!pivots.count(lead)) out.essential.push_back(lead);
  return out;
}

/// Barcode of a ↦ H^{<a}: positive-gap pairs and essential classes.
template <class V>
Barcode barcode_of(const FilteredComplexT<V>& c) {
  require_valid(c);
  auto pd = persistence(c);
  Barcode b;
  for (const auto& p : pd.pairs) {
    if (ValueTraits<V>::equal(p.birth, p.death)) continue;
    b.add(ValueTraits<V>::to_double(p.birth), ValueTraits<V>::to_double(p.death));
  }
  for (std::size_t g : pd.essential) b.add(ValueTraits<V>::to_double(c.space().value(g)), kInf);
  return b;
}

/// Same ∂ with actions shifted by delta (by label; missing labels stay put).
FilteredComplex perturb_actions(const FilteredComplex& c, const std::map<std::string, double>& delta);

/// C = V1 ⊕ W with d_C, D = V2 ⊕ W with d_D; columns follow the label order
/// of the direct sums (V first, then W).
struct ShortBarQuery {
  OrthoSpace V1, V2, W;
  std::vector<F2Vec> d_C;
  std::vector<F2Vec> d_D;
  double E = 0.0;
  double eta = 0.0;

  FilteredComplex complex_C() const;
  FilteredComplex complex_D() const;
};

using Interval = std::pair<double, double>;

struct ShortBarReport {
  std::vector<Interval> c_bars;  // sorted
  std::vector<Interval> d_bars;  // sorted
  bool equal = false;
};

/// Violations of the two hypotheses and of ∂² = 0 / action decrease; empty iff
/// the query is admissible.
std::vector<std::string> short_bar_violations(const ShortBarQuery& q);

/// Pairs with length < η and left > E on both sides. Throws PreconditionError
/// naming the first violated hypothesis.
ShortBarReport compare_short_bars(const ShortBarQuery& q);

}  // namespace bce
