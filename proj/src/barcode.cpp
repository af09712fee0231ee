#include "bce/barcode.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <queue>
#include <sstream>

namespace bce {

Bar::Bar(double l, double r, bool open) : left(l), right(r), right_open(open) {
  if (!std::isfinite(l)) throw InputError("bar left endpoint must be finite, got " + format_double(l));
  if (std::isnan(r)) throw InputError("bar right endpoint is NaN");
  if (!(l < r)) throw InputError("empty bar (" + format_double(l) + ", " + format_double(r) + "]");
  if (std::isinf(r)) right_open = false;
}

bool operator<(const Bar& a, const Bar& b) {
  if (a.left != b.left) return a.left < b.left;
  if (a.right != b.right) return a.right < b.right;
  return a.right_open < b.right_open;
}

bool operator==(const Bar& a, const Bar& b) { return a.left == b.left && a.right == b.right && a.right_open == b.right_open; }

Barcode Barcode::sorted() const {
  auto v = bars_;
  std::sort(v.begin(), v.end());
  return Barcode(std::move(v));
}

std::size_t Barcode::infinite_count() const {
  return static_cast<std::size_t>(std::count_if(bars_.begin(), bars_.end(), [](const Bar& b) { return b.infinite(); }));
}

bool same_bars(const Barcode& a, const Barcode& b, double tol) {
  if (a.size() != b.size()) return false;
  auto sa = a.sorted(), sb = b.sorted();
  for (std::size_t i = 0; i < sa.size(); ++i) {
    const Bar &x = sa[i], &y = sb[i];
    if (!approx_equal(x.left, y.left, tol) || !approx_equal(x.right, y.right, tol) || x.right_open != y.right_open) return false;
  }
  return true;
}

std::string to_string(const Barcode& b) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& bar : b.sorted().bars()) {
    if (!first) os << ',';
    first = false;
    os << '(' << format_double(bar.left) << ',' << format_double(bar.right) << ((bar.infinite() || bar.right_open) ? ')' : ']');
  }
  os << '}';
  return os.str();
}

Barcode shift(const Barcode& b, double delta) {
  Barcode out;
  for (const auto& bar : b.bars()) out.add(bar.left - delta, bar.right - delta, bar.right_open);
  return out;
}

Barcode truncate(const Barcode& b, double T) {
  if (T == kInf) return b;
  Barcode out;
  for (const auto& bar : b.bars()) {
    if (bar.left >= T) continue;
    if (bar.right < T || (bar.right_open && bar.right == T))
      out.add(bar);
    else
      out.add(bar.left, T, true);
  }
  return out;
}

Reparam Reparam::identity() { return {[](double t) { return t; }, [](double t) { return t; }}; }

Reparam Reparam::linear(double scale, double offset) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw DomainError("linear reparametrization needs a positive finite scale");
  return {[=](double t) { return scale * t + offset; }, [=](double x) { return (x - offset) / scale; }};
}

Barcode reparametrize(const Barcode& b, const Reparam& f) {
  if (!f.inverse) throw InputError("reparametrization is missing its inverse");
  std::vector<double> pts;
  for (const auto& bar : b.bars()) {
    pts.push_back(bar.left);
    if (!bar.infinite()) pts.push_back(bar.right);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<double> img(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    img[i] = f.inverse(pts[i]);
    if (std::isnan(img[i])) throw InputError("reparametrization inverse returned NaN at " + format_double(pts[i]));
    if (i > 0 && !(img[i] > img[i - 1]))
      throw InputError("reparametrization is not strictly increasing between " + format_double(pts[i - 1]) + " and " + format_double(pts[i]));
  }
  auto map = [&](double x) { return img[static_cast<std::size_t>(std::lower_bound(pts.begin(), pts.end(), x) - pts.begin())]; };
  Barcode out;
  for (const auto& bar : b.bars()) out.add(map(bar.left), bar.infinite() ? kInf : map(bar.right), bar.right_open);
  return out;
}

std::size_t n_eps(const Barcode& b, double eps) {
  std::size_t n = 0;
  for (const auto& bar : b.bars())
    if (bar.length() > eps) ++n;
  return n;
}

std::size_t b_eps(const Barcode& b, double eps, double T) {
  std::size_t n = 0;
  for (const auto& bar : b.bars())
    if (bar.length() > eps && bar.left <= T) ++n;
  return n;
}

std::size_t n_eps_truncated(const Barcode& b, double eps, double T) {
  std::size_t n = 0;
  for (const auto& bar : b.bars()) {
    if (bar.left >= T) continue;
    if (std::min(bar.right, T) - bar.left > eps) ++n;
  }
  return n;
}

Barcode positive_short_bars(const Barcode& b, double C) {
  Barcode out;
  for (const auto& bar : b.bars())
    if (bar.left > 0.0 && bar.length() <= C) out.add(bar);
  return out;
}

BarTypes classify_bars(const Barcode& b, double eps, double T) {
  BarTypes t;
  for (const auto& bar : b.bars()) {
    if (bar.left > T) continue;
    const bool is_long = bar.length() > eps;
    const bool beyond = bar.right >= T;
    if (is_long)
      (beyond ? t.nI : t.nII)++;
    else
      (beyond ? t.nIII : t.nIV)++;
  }
  return t;
}

namespace {

// Hopcroft–Karp on a bipartite graph given by adjacency lists.
class HopcroftKarp {
 public:
  HopcroftKarp(std::size_t nl, std::size_t nr, const std::vector<std::vector<std::size_t>>& adj)
      : nl_(nl), nr_(nr), adj_(adj), ml_(nl, kNone), mr_(nr, kNone), dist_(nl) {}

  std::size_t run() {
    std::size_t size = 0;
    while (bfs())
      for (std::size_t u = 0; u < nl_; ++u)
        if (ml_[u] == kNone && dfs(u)) ++size;
    return size;
  }

  const std::vector<std::size_t>& left_match() const { return ml_; }

  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

 private:
  bool bfs() {
    std::queue<std::size_t> q;
    bool found = false;
    for (std::size_t u = 0; u < nl_; ++u) {
      if (ml_[u] == kNone) {
        dist_[u] = 0;
        q.push(u);
      } else {
        dist_[u] = kNone;
      }
    }
    while (!q.empty()) {
      auto u = q.front();
      q.pop();
      for (auto v : adj_[u]) {
        auto w = mr_[v];
        if (w == kNone)
          found = true;
        else if (dist_[w] == kNone) {
          dist_[w] = dist_[u] + 1;
          q.push(w);
        }
      }
    }
    return found;
  }

  bool dfs(std::size_t u) {
    for (auto v : adj_[u]) {
      auto w = mr_[v];
      if (w == kNone || (dist_[w] == dist_[u] + 1 && dfs(w))) {
        ml_[u] = v;
        mr_[v] = u;
        return true;
      }
    }
    dist_[u] = kNone;
    return false;
  }

  std::size_t nl_, nr_;
  const std::vector<std::vector<std::size_t>>& adj_;
  std::vector<std::size_t> ml_, mr_, dist_;
};

double pair_cost(const Bar& a, const Bar& b) { return std::max(std::abs(a.left - b.left), std::abs(a.right - b.right)); }

// Bars whose length exceeds 2δ cannot go to the diagonal and must be matched.
// A matching covering the long bars of both sides exists iff one covering
// each side exists (Mendelsohn–Dulmage), so feasibility needs two sparse
// matchings instead of the diagonal-augmented graph.
struct LeftIndex {
  std::vector<std::size_t> order;
  std::vector<double> lefts;

  explicit LeftIndex(const std::vector<Bar>& bars) : order(bars.size()) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return bars[a].left < bars[b].left; });
    for (auto i : order) lefts.push_back(bars[i].left);
  }
};

constexpr std::size_t kNone = HopcroftKarp::kNone;

// Matching of the long bars of `from` into `to`; partner per `from` bar.
bool cover_long(const std::vector<Bar>& from, const std::vector<Bar>& to, const LeftIndex& idx, double delta, std::vector<std::size_t>& partner) {
  std::vector<std::size_t> longs;
  for (std::size_t i = 0; i < from.size(); ++i)
    if (from[i].length() / 2.0 > delta) longs.push_back(i);
  partner.assign(from.size(), kNone);
  if (longs.empty()) return true;
  std::vector<std::vector<std::size_t>> adj(longs.size());
  for (std::size_t k = 0; k < longs.size(); ++k) {
    const Bar& a = from[longs[k]];
    auto lo = std::lower_bound(idx.lefts.begin(), idx.lefts.end(), a.left - delta);
    for (auto it = lo; it != idx.lefts.end() && *it <= a.left + delta; ++it) {
      std::size_t j = idx.order[static_cast<std::size_t>(it - idx.lefts.begin())];
      if (pair_cost(a, to[j]) <= delta) adj[k].push_back(j);
    }
    if (adj[k].empty()) return false;
  }
  HopcroftKarp hk(longs.size(), to.size(), adj);
  if (hk.run() != longs.size()) return false;
  for (std::size_t k = 0; k < longs.size(); ++k) partner[longs[k]] = hk.left_match()[k];
  return true;
}

// Fills `match` (f1 index -> f2 index, or kNone for the diagonal) when feasible.
bool feasible(const std::vector<Bar>& f1, const std::vector<Bar>& f2, const LeftIndex& idx1, const LeftIndex& idx2, double delta,
              std::vector<std::size_t>* match) {
  std::vector<std::size_t> m1, m2;  // m1: f1 -> f2 covering long f1; m2: f2 -> f1 covering long f2
  if (!cover_long(f1, f2, idx2, delta, m1) || !cover_long(f2, f1, idx1, delta, m2)) return false;
  if (!match) return true;

  const std::size_t n1 = f1.size(), n2 = f2.size();
  // Union graph on vertices 0..n1-1 (f1) and n1..n1+n2-1 (f2); each vertex has
  // at most one edge from each matching.
  std::vector<std::size_t> e1(n1 + n2, kNone), e2(n1 + n2, kNone);
  for (std::size_t i = 0; i < n1; ++i)
    if (m1[i] != kNone) e1[i] = n1 + m1[i], e1[n1 + m1[i]] = i;
  for (std::size_t j = 0; j < n2; ++j)
    if (m2[j] != kNone) e2[n1 + j] = m2[j], e2[m2[j]] = n1 + j;
  auto is_long = [&](std::size_t v) { return v < n1 ? f1[v].length() / 2.0 > delta : f2[v - n1].length() / 2.0 > delta; };

  match->assign(n1, kNone);
  std::vector<bool> seen(n1 + n2, false);
  auto component = [&](std::size_t start) {
    std::vector<std::size_t> comp;
    std::vector<std::size_t> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (auto w : {e1[v], e2[v]})
        if (w != kNone && !seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
    }
    return comp;
  };
  for (std::size_t s = 0; s < n1 + n2; ++s) {
    if (seen[s]) continue;
    auto comp = component(s);
    // Keep whichever matching covers every long vertex of the component.
    bool use1 = std::all_of(comp.begin(), comp.end(), [&](std::size_t v) { return !is_long(v) || e1[v] != kNone; });
    const auto& e = use1 ? e1 : e2;
    for (auto v : comp)
      if (v < n1 && e[v] != kNone) (*match)[v] = e[v] - n1;
  }
  return true;
}

std::uint64_t bits(double d) { return std::bit_cast<std::uint64_t>(d); }
double from_bits(std::uint64_t b) { return std::bit_cast<double>(b); }

}  // namespace

BottleneckResult bottleneck_matching(const Barcode& b1, const Barcode& b2) {
  BottleneckResult res;
  std::vector<std::size_t> inf1, inf2, fin1, fin2;
  for (std::size_t i = 0; i < b1.size(); ++i) (b1[i].infinite() ? inf1 : fin1).push_back(i);
  for (std::size_t j = 0; j < b2.size(); ++j) (b2[j].infinite() ? inf2 : fin2).push_back(j);

  if (inf1.size() != inf2.size()) {
    res.distance = kInf;
    res.matching.unmatched1.resize(b1.size());
    res.matching.unmatched2.resize(b2.size());
    for (std::size_t i = 0; i < b1.size(); ++i) res.matching.unmatched1[i] = i;
    for (std::size_t j = 0; j < b2.size(); ++j) res.matching.unmatched2[j] = j;
    return res;
  }

  // Infinite bars: sorted order is optimal on a line.
  auto by_left = [](const Barcode& b) { return [&b](std::size_t x, std::size_t y) { return b[x].left < b[y].left; }; };
  std::sort(inf1.begin(), inf1.end(), by_left(b1));
  std::sort(inf2.begin(), inf2.end(), by_left(b2));
  double d_inf = 0.0;
  for (std::size_t k = 0; k < inf1.size(); ++k) {
    d_inf = std::max(d_inf, std::abs(b1[inf1[k]].left - b2[inf2[k]].left));
    res.matching.pairs.emplace_back(inf1[k], inf2[k]);
  }

  std::vector<Bar> f1, f2;
  for (auto i : fin1) f1.push_back(b1[i]);
  for (auto j : fin2) f2.push_back(b2[j]);

  // Feasibility is monotone in δ and flips exactly at a pair cost or a half
  // length, so the least feasible double is the exact distance. Non-negative
  // doubles order like their bit patterns.
  LeftIndex idx1(f1), idx2(f2);
  double all_diag = 0.0;
  for (const auto& a : f1) all_diag = std::max(all_diag, a.length() / 2.0);
  for (const auto& b : f2) all_diag = std::max(all_diag, b.length() / 2.0);
  double best = 0.0;
  if (!feasible(f1, f2, idx1, idx2, 0.0, nullptr)) {
    std::uint64_t lo = bits(0.0), hi = bits(all_diag);  // lo infeasible, hi feasible
    while (hi - lo > 1) {
      std::uint64_t mid = lo + (hi - lo) / 2;
      if (feasible(f1, f2, idx1, idx2, from_bits(mid), nullptr))
        hi = mid;
      else
        lo = mid;
    }
    best = from_bits(hi);
  }
  std::vector<std::size_t> m;
  feasible(f1, f2, idx1, idx2, best, &m);
  for (std::size_t i = 0; i < f1.size(); ++i) {
    if (m[i] < f2.size())
      res.matching.pairs.emplace_back(fin1[i], fin2[m[i]]);
    else
      res.matching.unmatched1.push_back(fin1[i]);
  }
  std::vector<bool> hit(f2.size(), false);
  for (std::size_t i = 0; i < f1.size(); ++i)
    if (m[i] < f2.size()) hit[m[i]] = true;
  for (std::size_t j = 0; j < f2.size(); ++j)
    if (!hit[j]) res.matching.unmatched2.push_back(fin2[j]);

  res.distance = std::max(d_inf, best);
  return res;
}

double bottleneck(const Barcode& b1, const Barcode& b2) { return bottleneck_matching(b1, b2).distance; }

bool interleaved(const Barcode& b1, const Barcode& b2, double delta) { return bottleneck(b1, b2) <= delta + tolerance(); }

}  // namespace bce
