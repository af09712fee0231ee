#include "bce/generators.hpp"

namespace bce::gen {

F2Vec mat_apply(const std::vector<F2Vec>& cols, const F2Vec& v, std::size_t rows) {
  F2Vec out(rows);
  for (auto i = v.find_first(); i != F2Vec::npos; i = v.find_next(i)) out ^= cols[i];
  return out;
}

std::vector<F2Vec> mat_compose(const std::vector<F2Vec>& a, const std::vector<F2Vec>& b, std::size_t rows) {
  std::vector<F2Vec> out;
  out.reserve(b.size());
  for (const auto& col : b) out.push_back(mat_apply(a, col, rows));
  return out;
}

std::vector<F2Vec> mat_add(const std::vector<F2Vec>& a, const std::vector<F2Vec>& b) {
  if (a.size() != b.size()) throw InputError("mat_add: shape mismatch");
  std::vector<F2Vec> out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] ^= b[i];
  return out;
}

std::vector<F2Vec> mat_identity(std::size_t n) {
  std::vector<F2Vec> out(n, F2Vec(n));
  for (std::size_t i = 0; i < n; ++i) out[i].set(i);
  return out;
}

std::vector<F2Vec> mat_random(Rng& rng, std::size_t rows, std::size_t cols, double density) {
  std::vector<F2Vec> out(cols, F2Vec(rows));
  for (auto& c : out)
    for (std::size_t r = 0; r < rows; ++r)
      if (rng.bernoulli(density)) c.set(r);
  return out;
}

std::vector<F2Vec> mat_inverse(const std::vector<F2Vec>& a) {
  const std::size_t n = a.size();
  // Row-reduce [A | I] working on rows.
  std::vector<F2Vec> rows(n, F2Vec(2 * n));
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r)
      if (a[c].test(r)) rows[r].set(c);
  for (std::size_t r = 0; r < n; ++r) rows[r].set(n + r);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && !rows[piv].test(c)) ++piv;
    if (piv == n) throw DomainError("matrix is singular");
    std::swap(rows[c], rows[piv]);
    for (std::size_t r = 0; r < n; ++r)
      if (r != c && rows[r].test(c)) rows[r] ^= rows[c];
  }
  std::vector<F2Vec> inv(n, F2Vec(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (rows[r].test(n + c)) inv[c].set(r);
  return inv;
}

Barcode random_barcode(Rng& rng, std::size_t n, double lo, double hi, double p_inf) {
  Barcode b;
  for (std::size_t i = 0; i < n; ++i) {
    double l = rng.uniform(lo, hi);
    if (rng.bernoulli(p_inf))
      b.add(l, kInf);
    else
      b.add(l, l + rng.uniform(1e-3, hi - lo));
  }
  return b;
}

namespace {

// [[A_VV, A_VW], [0, A_WW]] as columns over V ⊕ W.
std::vector<F2Vec> assemble(const std::vector<F2Vec>& vv, const std::vector<F2Vec>& vw, const std::vector<F2Vec>& ww, std::size_t nv, std::size_t nw) {
  std::vector<F2Vec> out(nv + nw, F2Vec(nv + nw));
  for (std::size_t c = 0; c < nv; ++c)
    for (std::size_t r = 0; r < nv; ++r)
      if (vv[c].test(r)) out[c].set(r);
  for (std::size_t c = 0; c < nw; ++c) {
    for (std::size_t r = 0; r < nv; ++r)
      if (vw[c].test(r)) out[nv + c].set(r);
    for (std::size_t r = 0; r < nw; ++r)
      if (ww[c].test(r)) out[nv + c].set(nv + r);
  }
  return out;
}

// V-to-W coupling A_VW = A_VV K + K A_WW (+ a chain map when one is found).
std::vector<F2Vec> coupling(Rng& rng, const std::vector<F2Vec>& avv, const std::vector<F2Vec>& aww, std::size_t nv, std::size_t nw) {
  if (nv == 0) return std::vector<F2Vec>(nw, F2Vec(0));
  auto K = mat_random(rng, nv, nw, 0.4);
  auto vw = mat_add(mat_compose(avv, K, nv), mat_compose(K, aww, nv));
  for (int attempt = 0; attempt < 10; ++attempt) {
    auto R = mat_random(rng, nv, nw, 0.25);
    if (mat_compose(avv, R, nv) == mat_compose(R, aww, nv)) {
      vw = mat_add(vw, R);
      break;
    }
  }
  return vw;
}

}  // namespace

ShortBarQuery random_short_bar_query(Rng& rng, double eta, bool violate_h2) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const std::size_t n1 = rng.index(4), n2 = rng.index(4), k = 1 + rng.index(5);
    ShortBarQuery q;
    q.E = 0.0;
    q.eta = eta;
    auto cv1 = random_complex<double>(rng, n1, -3.0, 0.0);
    auto cv2 = random_complex<double>(rng, n2, -3.0, 0.0);
    auto cw = random_complex<double>(rng, k, 0.01, 3.0);
    q.V1 = OrthoSpace(make_labels("u", n1), cv1.complex.space().values());
    q.V2 = OrthoSpace(make_labels("v", n2), cv2.complex.space().values());
    q.W = OrthoSpace(make_labels("w", k), cw.complex.space().values());
    const auto& aww = cw.complex.boundary();

    // S = I + N, N lowering action by more than eta (or, for the negative
    // control, by less than eta somewhere).
    auto S = mat_identity(k);
    bool planted = false;
    for (std::size_t c = 0; c < k; ++c)
      for (std::size_t r = 0; r < k; ++r) {
        const double lc = q.W.value(c), lr = q.W.value(r);
        if (lr < lc - eta && rng.bernoulli(0.5)) S[c].flip(r);
        if (violate_h2 && lr < lc && lr >= lc - eta && rng.bernoulli(0.7)) {
          S[c].flip(r);
          planted = true;
        }
      }
    if (violate_h2 && !planted) continue;
    auto bww = mat_compose(S, mat_compose(aww, mat_inverse(S), k), k);

    auto avw = coupling(rng, cv1.complex.boundary(), aww, n1, k);
    auto bvw = coupling(rng, cv2.complex.boundary(), bww, n2, k);
    q.d_C = assemble(cv1.complex.boundary(), avw, aww, n1, k);
    q.d_D = assemble(cv2.complex.boundary(), bvw, bww, n2, k);

    auto bad = short_bar_violations(q);
    if (!violate_h2) {
      if (bad.empty()) return q;
      throw Error("internal: short-bar generator produced an invalid query: " + bad.front());
    }
    bool only_h2 = !bad.empty() && std::all_of(bad.begin(), bad.end(), [](const std::string& s) { return s.rfind("hypothesis (2)", 0) == 0; });
    if (only_h2) return q;
  }
  throw Error("internal: short-bar generator gave up");
}

RadialProfile random_profile(Rng& rng, double T) {
  const double r0 = rng.uniform(1.2, 4.0);
  switch (rng.index(3)) {
    case 0: return RadialProfile::quadratic(r0, T);
    case 1: return RadialProfile::cosh(r0, T, rng.uniform(0.2, 3.0));
    default: return RadialProfile::quartic(r0, T, rng.uniform(0.0, 2.0));
  }
}

ReebSpectrum random_spectrum(Rng& rng, std::size_t n, double lo, double hi) {
  std::vector<double> p;
  for (std::size_t i = 0; i < n; ++i) {
    double t = rng.uniform(lo, hi);
    p.push_back(t);
    if (rng.bernoulli(0.15)) p.push_back(t);  // multiplicity
  }
  return ReebSpectrum::from_periods(std::move(p), std::nullopt, "random");
}

double random_slope(Rng& rng, const ReebSpectrum& s, double lo, double hi) {
  for (;;) {
    double T = rng.uniform(lo, hi);
    if (!s.contains(T, 1e-6)) return T;
  }
}

TemplatePolicy random_policy(Rng& rng) {
  TemplatePolicy p;
  p.seed = rng.next_u64();
  switch (rng.index(3)) {
    case 0: p.kind = PolicyKind::Nested; break;
    case 1:
      p.kind = PolicyKind::Random;
      p.min_length = rng.bernoulli(0.5) ? rng.uniform(0.0, 1.0) : 0.0;
      break;
    default:
      p.kind = PolicyKind::ShortBias;
      p.fraction = rng.uniform(0.0, 1.0);
      break;
  }
  return p;
}

}  // namespace bce::gen
