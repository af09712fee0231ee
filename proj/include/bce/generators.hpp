#pragma once

// Seeded instance generators for property tests, check suites and the
// acceptance binary.

#include "bce/barcode.hpp"
#include "bce/filtered_complex.hpp"
#include "bce/na_linalg.hpp"
#include "bce/reeb_model.hpp"

#include <algorithm>
#include <vector>

namespace bce::gen {

/// Column-matrix helpers over F2.
F2Vec mat_apply(const std::vector<F2Vec>& cols, const F2Vec& v, std::size_t rows);
std::vector<F2Vec> mat_compose(const std::vector<F2Vec>& a, const std::vector<F2Vec>& b, std::size_t rows);  // a∘b
std::vector<F2Vec> mat_add(const std::vector<F2Vec>& a, const std::vector<F2Vec>& b);
std::vector<F2Vec> mat_identity(std::size_t n);
std::vector<F2Vec> mat_random(Rng& rng, std::size_t rows, std::size_t cols, double density = 0.5);
/// Inverse of a square matrix; throws DomainError when singular.
std::vector<F2Vec> mat_inverse(const std::vector<F2Vec>& a);

template <class V>
V value_from(Rng& rng, double lo, double hi);

template <>
inline double value_from<double>(Rng& rng, double lo, double hi) {
  return rng.uniform(lo, hi);
}

template <>
inline Rational value_from<Rational>(Rng& rng, double lo, double hi) {
  const long long den = static_cast<long long>(1 + rng.index(12));
  const long long a = static_cast<long long>(std::ceil(lo * static_cast<double>(den)));
  const long long b = static_cast<long long>(std::floor(hi * static_cast<double>(den)));
  const long long num = a + static_cast<long long>(rng.index(static_cast<std::size_t>(std::max(1LL, b - a + 1))));
  return Rational(num, den);
}

/// n pairwise distinct values in [lo, hi].
template <class V>
std::vector<V> distinct_values(Rng& rng, std::size_t n, double lo, double hi) {
  std::vector<V> out;
  while (out.size() < n) {
    V v = value_from<V>(rng, lo, hi);
    if (std::none_of(out.begin(), out.end(), [&](const V& x) { return ValueTraits<V>::equal(x, v); })) out.push_back(v);
  }
  return out;
}

/// n values drawn from a pool of `levels` distinct values, so ties occur.
template <class V>
std::vector<V> tied_values(Rng& rng, std::size_t n, std::size_t levels, double lo, double hi) {
  auto pool = distinct_values<V>(rng, std::max<std::size_t>(levels, 1), lo, hi);
  std::vector<V> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(pool[rng.index(pool.size())]);
  return out;
}

inline std::vector<std::string> make_labels(const std::string& prefix, std::size_t n) {
  std::vector<std::string> l;
  for (std::size_t i = 0; i < n; ++i) l.push_back(prefix + std::to_string(i));
  return l;
}

/// Random F2 map with domain and codomain dimensions in [1, max_dim] and
/// distinct filtration values.
template <class V>
FilteredMapT<V> random_map(Rng& rng, std::size_t max_dim) {
  std::size_t n = 1 + rng.index(max_dim), m = 1 + rng.index(max_dim);
  OrthoSpaceT<V> dom(make_labels("c", n), distinct_values<V>(rng, n, -5.0, 5.0));
  OrthoSpaceT<V> cod(make_labels("d", m), distinct_values<V>(rng, m, -5.0, 5.0));
  return FilteredMapT<V>(dom, cod, mat_random(rng, m, n));
}

/// Random orthogonal basis: mix generators inside each level, then add
/// arbitrary lower-order generators.
template <class V>
std::vector<F2Vec> random_orthogonal_basis(Rng& rng, const OrthoSpaceT<V>& s) {
  const std::size_t n = s.dim();
  const auto& ord = s.order();
  std::vector<F2Vec> basis;
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && ValueTraits<V>::equal(s.value(ord[start]), s.value(ord[end]))) ++end;
    const std::size_t k = end - start;
    std::vector<F2Vec> mix;
    do {
      mix = mat_random(rng, k, k);
    } while (f2_rank(mix) != k);
    for (std::size_t c = 0; c < k; ++c) {
      F2Vec v = s.zero();
      for (std::size_t r = 0; r < k; ++r)
        if (mix[c].test(r)) v.set(ord[start + r]);
      for (std::size_t p = 0; p < start; ++p)
        if (rng.bernoulli(0.5)) v.flip(ord[p]);
      basis.push_back(v);
    }
    start = end;
  }
  // shuffle presentation order
  for (std::size_t i = basis.size(); i > 1; --i) std::swap(basis[i - 1], basis[rng.index(i)]);
  return basis;
}

template <class V>
struct ComplexWithBarcode {
  FilteredComplexT<V> complex;
  Barcode expected;  // barcode of the canonical complex it was conjugated from
};

/// Canonical pairing ∂0 (z ↦ y) conjugated by a random filtration-preserving
/// unipotent change of basis.
template <class V>
ComplexWithBarcode<V> random_complex(Rng& rng, std::size_t dim, const std::vector<V>& values, const std::string& prefix = "g") {
  OrthoSpaceT<V> space(make_labels(prefix, dim), values);
  const auto& ord = space.order();
  std::vector<std::size_t> pos(dim);
  for (std::size_t i = 0; i < dim; ++i) pos[i] = i;
  for (std::size_t i = dim; i > 1; --i) std::swap(pos[i - 1], pos[rng.index(i)]);
  const std::size_t pairs = dim / 2 == 0 ? 0 : rng.index(dim / 2 + 1);
  std::vector<F2Vec> d0(dim, space.zero());
  std::vector<bool> used(dim, false);
  Barcode expected;
  for (std::size_t p = 0; p < pairs; ++p) {
    std::size_t a = pos[2 * p], b = pos[2 * p + 1];
    if (a > b) std::swap(a, b);
    std::size_t y = ord[a], z = ord[b];
    d0[z].set(y);
    used[y] = used[z] = true;
    if (!ValueTraits<V>::equal(space.value(y), space.value(z)))
      expected.add(ValueTraits<V>::to_double(space.value(y)), ValueTraits<V>::to_double(space.value(z)));
  }
  for (std::size_t g = 0; g < dim; ++g)
    if (!used[g]) expected.add(ValueTraits<V>::to_double(space.value(g)), kInf);

  std::vector<F2Vec> P = mat_identity(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      if (space.rank_of(j) < space.rank_of(i) && rng.bernoulli(0.5)) P[i].set(j);
  auto d = mat_compose(P, mat_compose(d0, mat_inverse(P), dim), dim);
  return {FilteredComplexT<V>(space, d), expected};
}

template <class V>
ComplexWithBarcode<V> random_complex(Rng& rng, std::size_t dim, double lo, double hi, bool ties = false) {
  auto vals = ties ? tied_values<V>(rng, dim, std::max<std::size_t>(1, dim / 2), lo, hi) : distinct_values<V>(rng, dim, lo, hi);
  return random_complex<V>(rng, dim, vals);
}

/// n random bars with endpoints in [lo, hi]; each infinite with probability p_inf.
Barcode random_barcode(Rng& rng, std::size_t n, double lo, double hi, double p_inf = 0.2);

/// Admissible short-bar query (or one that violates only hypothesis (2)).
ShortBarQuery random_short_bar_query(Rng& rng, double eta, bool violate_h2 = false);

/// Random quadratic, cosh or quartic profile.
RadialProfile random_profile(Rng& rng, double T);

/// Random spectrum with n periods in (lo, hi), occasional multiplicity.
ReebSpectrum random_spectrum(Rng& rng, std::size_t n, double lo, double hi);

/// Random slope in (lo, hi) that is not a period.
double random_slope(Rng& rng, const ReebSpectrum& s, double lo, double hi);

/// Random template policy with a fresh seed.
TemplatePolicy random_policy(Rng& rng);

}  // namespace bce::gen
