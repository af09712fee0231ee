#include "bce/oracles.hpp"

namespace bce::oracle {

namespace {

struct Iv {
  double l, r;
};

Iv shifted(const Bar& b, double s) { return {b.left - s, b.right - s}; }

bool hom(const Iv& from, const Iv& to) { return to.l <= from.l && from.l < to.r && to.r <= from.r; }

bool meet(const Iv& a, const Iv& b, const Iv& c) { return std::max({a.l, b.l, c.l}) < std::min({a.r, b.r, c.r}); }

// G[δ]∘F = Φ^{2δ} on the side whose bars are `src`, routed through `mid`.
bool composite_ok(const std::vector<Bar>& src, const std::vector<Bar>& mid, double delta, const std::vector<std::vector<int>>& F,
                  const std::vector<std::vector<int>>& G) {
  for (std::size_t i = 0; i < src.size(); ++i)
    for (std::size_t k = 0; k < src.size(); ++k) {
      Iv a = shifted(src[i], 0.0), c = shifted(src[k], 2 * delta);
      if (!hom(a, c)) continue;
      int coef = 0;
      for (std::size_t j = 0; j < mid.size(); ++j)
        if (F[j][i] && G[k][j] && meet(a, shifted(mid[j], delta), c)) coef ^= 1;
      int want = (i == k && src[i].length() > 2 * delta) ? 1 : 0;
      if (coef != want) return false;
    }
  return true;
}

}  // namespace

bool hom_nonzero(const Bar& from, const Bar& to) { return hom(shifted(from, 0.0), shifted(to, 0.0)); }

bool interleaving_exists(const Barcode& b1, const Barcode& b2, double delta) {
  if (b1.size() > 3 || b2.size() > 3) throw CapabilityError("interleaving oracle limited to 3 bars per barcode");
  if (!(delta >= 0.0)) throw DomainError("interleaving oracle: delta must be non-negative");
  const auto& V = b1.bars();
  const auto& W = b2.bars();
  const std::size_t n = V.size(), m = W.size();
  std::vector<std::pair<std::size_t, std::size_t>> fpos, gpos;  // F: (j, i), G: (i, j)
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (hom(shifted(V[i], 0.0), shifted(W[j], delta))) fpos.emplace_back(j, i);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (hom(shifted(W[j], 0.0), shifted(V[i], delta))) gpos.emplace_back(i, j);

  std::vector<std::vector<int>> F(m, std::vector<int>(n, 0)), G(n, std::vector<int>(m, 0));
  for (std::uint32_t fm = 0; fm < (1u << fpos.size()); ++fm) {
    for (std::size_t t = 0; t < fpos.size(); ++t) F[fpos[t].first][fpos[t].second] = (fm >> t) & 1u;
    for (std::uint32_t gm = 0; gm < (1u << gpos.size()); ++gm) {
      for (std::size_t t = 0; t < gpos.size(); ++t) G[gpos[t].first][gpos[t].second] = (gm >> t) & 1u;
      if (composite_ok(V, W, delta, F, G) && composite_ok(W, V, delta, G, F)) return true;
    }
  }
  return false;
}

double interleaving_distance(const Barcode& b1, const Barcode& b2, const std::vector<double>& grid) {
  for (double d : grid)
    if (interleaving_exists(b1, b2, d)) return d;
  return kInf;
}

}  // namespace bce::oracle
