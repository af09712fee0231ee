#pragma once

#include "bce/common.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace bce {

/// F2 combination of generators, indexed by generator position.
using F2Vec = boost::dynamic_bitset<>;

/// Row-reduces a copy of `vecs` and returns its F2 rank.
std::size_t f2_rank(std::vector<F2Vec> vecs);

/// Finite-dimensional F2 space whose standard basis carries the filtration ℓ.
template <class V>
class OrthoSpaceT {
 public:
  using value_type = V;

  OrthoSpaceT() = default;

  OrthoSpaceT(std::vector<std::string> labels, std::vector<V> values)
      : labels_(std::move(labels)), values_(std::move(values)) {
    if (labels_.size() != values_.size()) throw InputError("OrthoSpace: labels and values differ in length");
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i].empty()) throw InputError("OrthoSpace: empty label");
      if constexpr (!ValueTraits<V>::exact) {
        if (!std::isfinite(values_[i])) throw InputError("OrthoSpace: non-finite value for '" + labels_[i] + "'");
      }
      if (!index_.emplace(labels_[i], i).second) throw InputError("OrthoSpace: duplicate label '" + labels_[i] + "'");
    }
    order_.resize(labels_.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(), [this](std::size_t a, std::size_t b) { return values_[a] < values_[b]; });
    rank_.resize(labels_.size());
    for (std::size_t p = 0; p < order_.size(); ++p) rank_[order_[p]] = p;
  }

  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<V>& values() const { return values_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const V& value(std::size_t i) const { return values_.at(i); }

  std::size_t index_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) throw InputError("unknown label '" + label + "'");
    return it->second;
  }
  bool contains(const std::string& label) const { return index_.count(label) != 0; }

  /// Generator indices sorted by (ℓ, position).
  const std::vector<std::size_t>& order() const { return order_; }
  /// Position of generator i in order().
  std::size_t rank_of(std::size_t i) const { return rank_.at(i); }

  F2Vec zero() const { return F2Vec(dim()); }
  F2Vec basis(std::size_t i) const {
    F2Vec v(dim());
    v.set(i);
    return v;
  }
  F2Vec combination(const std::vector<std::string>& labels) const {
    F2Vec v(dim());
    for (const auto& l : labels) v.flip(index_of(l));
    return v;
  }

  /// Generator of the support that is last in order(); npos for zero.
  std::size_t leading(const F2Vec& v) const {
    check_size(v);
    std::size_t best = F2Vec::npos;
    for (auto i = v.find_first(); i != F2Vec::npos; i = v.find_next(i))
      if (best == F2Vec::npos || rank_[i] > rank_[best]) best = i;
    return best;
  }

  /// ℓ(v); nullopt encodes −∞ (zero vector).
  std::optional<V> norm(const F2Vec& v) const {
    std::size_t lead = leading(v);
    if (lead == F2Vec::npos) return std::nullopt;
    return values_[lead];
  }

  std::vector<std::string> support_labels(const F2Vec& v) const {
    check_size(v);
    std::vector<std::string> out;
    for (auto i = v.find_first(); i != F2Vec::npos; i = v.find_next(i)) out.push_back(labels_[i]);
    return out;
  }

  void check_size(const F2Vec& v) const {
    if (v.size() != dim()) throw InputError("vector length " + std::to_string(v.size()) + " does not match space dimension " + std::to_string(dim()));
  }

  /// Direct sum with labels of `other` appended.
  OrthoSpaceT direct_sum(const OrthoSpaceT& other) const {
    auto l = labels_;
    auto v = values_;
    l.insert(l.end(), other.labels_.begin(), other.labels_.end());
    v.insert(v.end(), other.values_.begin(), other.values_.end());
    return OrthoSpaceT(std::move(l), std::move(v));
  }

 private:
  std::vector<std::string> labels_;
  std::vector<V> values_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> rank_;
};

using OrthoSpace = OrthoSpaceT<double>;
using OrthoSpaceQ = OrthoSpaceT<Rational>;

/// norm_of as an extended real.
inline double norm_of(const OrthoSpace& s, const F2Vec& v) {
  auto n = s.norm(v);
  return n ? *n : -kInf;
}
inline double norm_of(const OrthoSpace& s, const std::vector<std::string>& labels) { return norm_of(s, s.combination(labels)); }

enum class OrthoMethod { Auto, Exhaustive, Reduction };

struct OrthoResult {
  bool orthogonal = true;
  OrthoMethod method = OrthoMethod::Exhaustive;
  F2Vec witness;  // coefficient mask over the input list when the max-law fails
};

inline constexpr std::size_t kExhaustiveOrthoCap = 20;

namespace detail {

template <class V>
bool same_level(const V& a, const V& b) {
  return ValueTraits<V>::equal(a, b);
}

}  // namespace detail

/// Max-law test. Exhaustive mode walks all 2^k − 1 combinations in Gray-code
/// order; reduction mode checks independence of the top-level parts level by
/// level, which is equivalent and polynomial.
template <class V>
OrthoResult is_orthogonal(const OrthoSpaceT<V>& space, const std::vector<F2Vec>& vecs, OrthoMethod method = OrthoMethod::Auto) {
  for (const auto& v : vecs) space.check_size(v);
  const std::size_t k = vecs.size();
  OrthoResult res;
  if (method == OrthoMethod::Auto) method = k <= kExhaustiveOrthoCap ? OrthoMethod::Exhaustive : OrthoMethod::Reduction;
  if (method == OrthoMethod::Exhaustive && k > kExhaustiveOrthoCap)
    throw CapabilityError("exhaustive orthogonality test limited to " + std::to_string(kExhaustiveOrthoCap) + " vectors, got " + std::to_string(k));
  res.method = method;

  std::vector<std::optional<V>> norms;
  norms.reserve(k);
  for (const auto& v : vecs) norms.push_back(space.norm(v));

  if (method == OrthoMethod::Exhaustive) {
    F2Vec acc = space.zero();
    F2Vec mask(k);
    const std::uint64_t total = std::uint64_t{1} << k;
    for (std::uint64_t g = 1; g < total; ++g) {
      std::size_t bit = static_cast<std::size_t>(__builtin_ctzll(g));
      acc ^= vecs[bit];
      mask.flip(bit);
      std::optional<V> mx;
      for (auto i = mask.find_first(); i != F2Vec::npos; i = mask.find_next(i))
        if (norms[i] && (!mx || *mx < *norms[i])) mx = norms[i];
      auto got = space.norm(acc);
      bool ok = (!got && !mx) || (got && mx && detail::same_level(*got, *mx));
      if (!ok) {
        res.orthogonal = false;
        res.witness = mask;
        return res;
      }
    }
    return res;
  }

  // Reduction: group nonzero vectors by level, project onto the generators of
  // that level, and require independence.
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < k; ++i)
    if (norms[i]) idx.push_back(i);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return *norms[a] < *norms[b]; });
  std::size_t start = 0;
  while (start < idx.size()) {
    std::size_t end = start + 1;
    while (end < idx.size() && detail::same_level(*norms[idx[start]], *norms[idx[end]])) ++end;
    const V& level = *norms[idx[start]];
    F2Vec level_mask = space.zero();
    for (std::size_t g = 0; g < space.dim(); ++g)
      if (detail::same_level(space.value(g), level)) level_mask.set(g);
    // Gaussian elimination that tracks which inputs were combined.
    std::vector<F2Vec> rows, combos;
    for (std::size_t p = start; p < end; ++p) {
      F2Vec row = vecs[idx[p]] & level_mask;
      F2Vec combo(k);
      combo.set(idx[p]);
      for (std::size_t r = 0; r < rows.size(); ++r) {
        auto piv = rows[r].find_first();
        if (row.test(piv)) {
          row ^= rows[r];
          combo ^= combos[r];
        }
      }
      if (row.none()) {
        res.orthogonal = false;
        res.witness = combo;
        return res;
      }
      // keep rows in reduced echelon form on their pivots
      auto piv = row.find_first();
      for (std::size_t r = 0; r < rows.size(); ++r)
        if (rows[r].test(piv)) {
          rows[r] ^= row;
          combos[r] ^= combo;
        }
      rows.push_back(std::move(row));
      combos.push_back(std::move(combo));
    }
    start = end;
  }
  return res;
}

/// Sorted multiset of ℓ over an orthogonal basis. Throws PreconditionError
/// (with a witnessing combination) when `basis` is not an orthogonal basis.
template <class V>
std::vector<V> norm_spectrum(const OrthoSpaceT<V>& space, const std::vector<F2Vec>& basis) {
  for (const auto& v : basis) space.check_size(v);
  if (basis.size() != space.dim() || f2_rank(basis) != space.dim())
    throw PreconditionError("norm_spectrum: input is not a basis (size " + std::to_string(basis.size()) + ", dimension " + std::to_string(space.dim()) + ")");
  auto chk = is_orthogonal(space, basis, OrthoMethod::Reduction);
  if (!chk.orthogonal) {
    F2Vec comb = space.zero();
    std::string terms;
    for (auto i = chk.witness.find_first(); i != F2Vec::npos; i = chk.witness.find_next(i)) {
      comb ^= basis[i];
      terms += (terms.empty() ? "" : "+") + std::string("b") + std::to_string(i);
    }
    throw PreconditionError("norm_spectrum: basis is not orthogonal; max-law fails for " + terms);
  }
  std::vector<V> out;
  out.reserve(basis.size());
  for (const auto& v : basis) out.push_back(*space.norm(v));
  std::sort(out.begin(), out.end());
  return out;
}

/// Linear map between filtered spaces; columns indexed by domain generators.
template <class V>
class FilteredMapT {
 public:
  FilteredMapT() = default;
  FilteredMapT(OrthoSpaceT<V> domain, OrthoSpaceT<V> codomain, std::vector<F2Vec> columns)
      : domain_(std::move(domain)), codomain_(std::move(codomain)), columns_(std::move(columns)) {
    if (columns_.size() != domain_.dim())
      throw InputError("FilteredMap: " + std::to_string(columns_.size()) + " columns for a domain of dimension " + std::to_string(domain_.dim()));
    for (const auto& c : columns_)
      if (c.size() != codomain_.dim()) throw InputError("FilteredMap: column length does not match codomain dimension");
  }

  const OrthoSpaceT<V>& domain() const { return domain_; }
  const OrthoSpaceT<V>& codomain() const { return codomain_; }
  const std::vector<F2Vec>& columns() const { return columns_; }

  F2Vec apply(const F2Vec& v) const {
    domain_.check_size(v);
    F2Vec out = codomain_.zero();
    for (auto i = v.find_first(); i != F2Vec::npos; i = v.find_next(i)) out ^= columns_[i];
    return out;
  }

  /// ℓ(A e) ≤ ℓ(e) on every generator e (sufficient by orthogonality).
  bool norm_nonincreasing() const {
    for (std::size_t j = 0; j < columns_.size(); ++j) {
      auto n = codomain_.norm(columns_[j]);
      if (n && domain_.value(j) < *n && !ValueTraits<V>::equal(domain_.value(j), *n)) return false;
    }
    return true;
  }

 private:
  OrthoSpaceT<V> domain_;
  OrthoSpaceT<V> codomain_;
  std::vector<F2Vec> columns_;
};

using FilteredMap = FilteredMapT<double>;
using FilteredMapQ = FilteredMapT<Rational>;

template <class V>
struct SvdPairT {
  F2Vec v;                 // domain combination
  F2Vec w;                 // A v
  V gap;                   // ℓ_C(v) − ℓ_D(w)
  std::size_t v_lead = 0;  // generator carrying ℓ_C(v)
  std::size_t w_lead = 0;  // generator carrying ℓ_D(w)
};

template <class V>
struct SvdResultT {
  std::vector<SvdPairT<V>> paired;
  std::vector<F2Vec> kernel_basis;
  std::vector<std::size_t> kernel_leads;
  std::vector<F2Vec> image_basis;

  std::vector<V> gaps() const {
    std::vector<V> g;
    g.reserve(paired.size());
    for (const auto& p : paired) g.push_back(p.gap);
    return g;
  }
};

using SvdResult = SvdResultT<double>;
using SvdResultQ = SvdResultT<Rational>;

/// Singular value decomposition of a filtered map. Columns are reduced left to
/// right in ascending (ℓ_C, position) order; each pivot is the codomain
/// generator latest in (ℓ_D, position) order, so every pair carries distinct
/// leading generators on both sides and both bases come out orthogonal.
template <class V>
SvdResultT<V> svd(const FilteredMapT<V>& A) {
  const auto& dom = A.domain();
  const auto& cod = A.codomain();
  const std::size_t n = dom.dim(), m = cod.dim();
  SvdResultT<V> res;
  if (n == 0) return res;

  // Codomain rows stored at reversed order positions so the pivot is find_first().
  auto to_internal = [&](const F2Vec& c) {
    F2Vec r(m);
    for (auto i = c.find_first(); i != F2Vec::npos; i = c.find_next(i)) r.set(m - 1 - cod.rank_of(i));
    return r;
  };
  auto from_internal = [&](const F2Vec& r) {
    F2Vec c(m);
    for (auto p = r.find_first(); p != F2Vec::npos; p = r.find_next(p)) c.set(cod.order()[m - 1 - p]);
    return c;
  };

  std::vector<std::size_t> pivot_owner(m, F2Vec::npos);
  std::vector<F2Vec> red_cols, red_vecs;
  std::vector<std::size_t> red_lead;
  red_cols.reserve(n);
  red_vecs.reserve(n);

  for (std::size_t j : dom.order()) {
    F2Vec col = to_internal(A.columns()[j]);
    F2Vec vec = dom.basis(j);
    for (auto p = col.find_first(); p != F2Vec::npos; p = col.find_first()) {
      std::size_t owner = pivot_owner[p];
      if (owner == F2Vec::npos) break;
      col ^= red_cols[owner];
      vec ^= red_vecs[owner];
    }
    if (col.none()) {
      res.kernel_basis.push_back(vec);
      res.kernel_leads.push_back(j);
      continue;
    }
    pivot_owner[col.find_first()] = red_cols.size();
    red_cols.push_back(std::move(col));
    red_vecs.push_back(std::move(vec));
    red_lead.push_back(j);
  }

  for (std::size_t r = 0; r < red_cols.size(); ++r) {
    SvdPairT<V> pr;
    pr.v = red_vecs[r];
    pr.w = from_internal(red_cols[r]);
    pr.v_lead = red_lead[r];
    pr.w_lead = cod.order()[m - 1 - red_cols[r].find_first()];
    pr.gap = dom.value(pr.v_lead) - cod.value(pr.w_lead);
    res.paired.push_back(std::move(pr));
  }
  std::stable_sort(res.paired.begin(), res.paired.end(), [](const SvdPairT<V>& a, const SvdPairT<V>& b) { return a.gap < b.gap; });
  for (const auto& p : res.paired) res.image_basis.push_back(p.w);
  return res;
}

}  // namespace bce
