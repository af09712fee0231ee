#pragma once

// Brute-force references used by the tests and the check suites. They share no
// code paths with the reduction algorithms: vectors are plain bitmasks and
// every property is checked by enumeration.

#include "bce/barcode.hpp"
#include "bce/filtered_complex.hpp"
#include "bce/na_linalg.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace bce::oracle {

using Mask = std::uint32_t;

inline Mask to_mask(const F2Vec& v) {
  Mask m = 0;
  for (auto i = v.find_first(); i != F2Vec::npos; i = v.find_next(i)) m |= Mask{1} << i;
  return m;
}

template <class V>
struct Filtration {
  std::vector<V> values;

  // ℓ of a mask; nullopt for zero.
  std::optional<V> norm(Mask m) const {
    std::optional<V> best;
    for (std::size_t i = 0; i < values.size(); ++i)
      if ((m >> i) & 1u)
        if (!best || *best < values[i]) best = values[i];
    return best;
  }

  // Max-law over every nonempty sub-combination.
  bool orthogonal(const std::vector<Mask>& vs) const {
    const std::size_t k = vs.size();
    for (Mask s = 1; s < (Mask{1} << k); ++s) {
      Mask sum = 0;
      std::optional<V> mx;
      for (std::size_t i = 0; i < k; ++i)
        if ((s >> i) & 1u) {
          sum ^= vs[i];
          auto n = norm(vs[i]);
          if (n && (!mx || *mx < *n)) mx = n;
        }
      auto got = norm(sum);
      if (got.has_value() != mx.has_value()) return false;
      if (got && !ValueTraits<V>::equal(*got, *mx)) return false;
    }
    return true;
  }
};

inline Mask apply(const std::vector<Mask>& cols, Mask v) {
  Mask out = 0;
  for (std::size_t i = 0; i < cols.size(); ++i)
    if ((v >> i) & 1u) out ^= cols[i];
  return out;
}

inline bool independent(const std::vector<Mask>& vs) {
  for (Mask s = 1; s < (Mask{1} << vs.size()); ++s) {
    Mask sum = 0;
    for (std::size_t i = 0; i < vs.size(); ++i)
      if ((s >> i) & 1u) sum ^= vs[i];
    if (sum == 0) return false;
  }
  return true;
}

template <class V>
struct SvdOracleResult {
  std::vector<std::vector<V>> gap_multisets;  // distinct, each sorted
  std::size_t admissible_bases = 0;
};

/// Every orthogonal basis of the domain whose kernel part spans ker A and
/// whose remaining images are orthogonal; collects their gap multisets.
template <class V>
SvdOracleResult<V> svd_gaps(const FilteredMapT<V>& A) {
  const std::size_t n = A.domain().dim();
  if (n > 4 || A.codomain().dim() > 16) throw CapabilityError("svd oracle limited to domain dimension 4");
  Filtration<V> fc{A.domain().values()}, fd{A.codomain().values()};
  std::vector<Mask> cols;
  for (const auto& c : A.columns()) cols.push_back(to_mask(c));

  std::size_t ker_size = 0;
  for (Mask v = 0; v < (Mask{1} << n); ++v)
    if (oracle::apply(cols, v) == 0) ++ker_size;
  std::size_t ker_dim = 0;
  while ((std::size_t{1} << ker_dim) < ker_size) ++ker_dim;

  SvdOracleResult<V> res;
  const Mask nonzero = (Mask{1} << n) - 1;  // vectors 1..2^n − 1
  // Enumerate n-subsets of nonzero vectors in increasing order.
  std::vector<Mask> pick(n);
  auto visit = [&]() {
    if (!independent(pick) || !fc.orthogonal(pick)) return;
    std::vector<Mask> images;
    std::vector<V> gaps;
    std::size_t in_kernel = 0;
    for (Mask v : pick) {
      Mask w = oracle::apply(cols, v);
      if (w == 0) {
        ++in_kernel;
        continue;
      }
      images.push_back(w);
      gaps.push_back(*fc.norm(v) - *fd.norm(w));
    }
    if (in_kernel != ker_dim || !fd.orthogonal(images)) return;
    std::sort(gaps.begin(), gaps.end());
    ++res.admissible_bases;
    auto same = [&](const std::vector<V>& g) {
      if (g.size() != gaps.size()) return false;
      for (std::size_t i = 0; i < g.size(); ++i)
        if (!ValueTraits<V>::equal(g[i], gaps[i])) return false;
      return true;
    };
    if (std::none_of(res.gap_multisets.begin(), res.gap_multisets.end(), same)) res.gap_multisets.push_back(gaps);
  };
  if (n == 0) {
    res.gap_multisets.push_back({});
    res.admissible_bases = 1;
    return res;
  }
  // recursive combination walk
  std::function<void(std::size_t, Mask)> rec = [&](std::size_t depth, Mask next) {
    if (depth == n) {
      visit();
      return;
    }
    for (Mask v = next; v <= nonzero; ++v) {
      pick[depth] = v;
      rec(depth + 1, v + 1);
    }
  };
  rec(0, 1);
  return res;
}

/// Barcode from ranks of H^{<a} → H^{<b} over the critical values, with cycles
/// and boundaries enumerated explicitly (dimension ≤ 12).
template <class V>
Barcode rank_function_barcode(const FilteredComplexT<V>& c) {
  const std::size_t n = c.dim();
  if (n > 12) throw CapabilityError("rank-function oracle limited to 12 generators");
  std::vector<Mask> d;
  for (const auto& col : c.boundary()) d.push_back(to_mask(col));
  std::vector<V> crit = c.space().values();
  std::sort(crit.begin(), crit.end());
  crit.erase(std::unique(crit.begin(), crit.end(), [](const V& a, const V& b) { return ValueTraits<V>::equal(a, b); }), crit.end());
  const std::size_t k = crit.size();
  // Sample point p_i sits just above crit[i-1] (p_0 below everything): the
  // sublevel set at p_i holds generators with value ≤ crit[i−1].
  auto sub = [&](std::size_t i) {
    Mask m = 0;
    if (i == 0) return m;
    for (std::size_t g = 0; g < n; ++g)
      if (c.space().value(g) < crit[i - 1] || ValueTraits<V>::equal(c.space().value(g), crit[i - 1])) m |= Mask{1} << g;
    return m;
  };
  auto within = [](Mask v, Mask s) { return (v & ~s) == 0; };
  // rank of H(sub a) → H(sub b) = |Z_a| / |Z_a ∩ B_b|
  auto rank = [&](std::size_t a, std::size_t b) -> long long {
    if (a > k || b > k || a > b) return 0;
    Mask sa = sub(a), sb = sub(b);
    std::vector<char> boundary(std::size_t{1} << n, 0);
    for (Mask v = 0; v < (Mask{1} << n); ++v)
      if (within(v, sb)) boundary[oracle::apply(d, v)] = 1;
    std::size_t z = 0, zb = 0;
    for (Mask v = 0; v < (Mask{1} << n); ++v) {
      if (!within(v, sa) || oracle::apply(d, v) != 0) continue;
      ++z;
      if (boundary[v]) ++zb;
    }
    long long r = 0;
    while ((zb << r) < z) ++r;
    return r;
  };
  // Index interval [i, j] over sample points 1..k ↔ bar (crit[i−1], crit[j]]
  // (or (crit[i−1], ∞) when j = k).
  Barcode out;
  for (std::size_t i = 1; i <= k; ++i)
    for (std::size_t j = i; j <= k; ++j) {
      long long m = rank(i, j) - rank(i - 1, j) - (j < k ? rank(i, j + 1) - rank(i - 1, j + 1) : 0);
      for (long long t = 0; t < m; ++t)
        out.add(ValueTraits<V>::to_double(crit[i - 1]), j == k ? kInf : ValueTraits<V>::to_double(crit[j]));
    }
  return out;
}

/// Nonzero morphism k(a,b] → k(c,d] exists iff c ≤ a < d ≤ b.
bool hom_nonzero(const Bar& from, const Bar& to);

/// Direct search for δ-interleaving morphisms between barcodes of ≤ 3 bars.
bool interleaving_exists(const Barcode& b1, const Barcode& b2, double delta);

/// Least δ in `grid` (ascending) admitting an interleaving; +∞ if none.
double interleaving_distance(const Barcode& b1, const Barcode& b2, const std::vector<double>& grid);

}  // namespace bce::oracle
