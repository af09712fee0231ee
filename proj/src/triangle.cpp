#include "bce/triangle.hpp"

#include "bce/entropy.hpp"

namespace bce {

std::string to_string(TriangleTag t) {
  switch (t) {
    case TriangleTag::Sh0ShShPlus: return "SH0->SH->SH+";
    case TriangleTag::ShShPlusSh0: return "SH->SH+->SH0";
    case TriangleTag::RfhShRfh: return "H->SH->RFH>=0";
  }
  return "?";
}

std::string to_string(Agreement a) {
  switch (a) {
    case Agreement::Agree: return "agree";
    case Agreement::Disagree: return "disagree";
    case Agreement::Undetermined: return "undetermined";
  }
  return "?";
}

Barcode sh0_barcode(std::size_t betti) {
  Barcode b;
  for (std::size_t k = 0; k < betti; ++k) b.add(0.0, kInf);
  return b;
}

Barcode sh_plus_barcode(const Barcode& sh, ShPlusRule rule) {
  Barcode out;
  for (const auto& bar : sh.bars()) {
    if (bar.left > 0.0)
      out.add(bar);
    else if (rule == ShPlusRule::Quotient && !bar.infinite())
      out.add(bar.right, kInf);
  }
  return out;
}

TriangleInstance model_triangle(const Barcode& sh, std::size_t betti, TriangleTag tag, const ShPlusHook& hook) {
  Barcode plus = hook ? hook(sh) : sh_plus_barcode(sh);
  TriangleInstance t;
  t.tag = tag;
  switch (tag) {
    case TriangleTag::Sh0ShShPlus:
    case TriangleTag::RfhShRfh:
      t.U = sh0_barcode(betti);
      t.V = sh;
      t.W = plus;
      break;
    case TriangleTag::ShShPlusSh0:
      t.U = sh;
      t.V = plus;
      t.W = sh0_barcode(betti);
      break;
  }
  return t;
}

bool triangle_count_check(const TriangleInstance& t, double delta, double T) {
  if (!(delta > 0.0)) throw DomainError("triangle check: delta must be positive");
  return n_eps_truncated(t.V, 2.0 * delta, T) <= n_eps_truncated(t.U, delta, T) + n_eps_truncated(t.W, delta, T);
}

SandwichReport entropy_sandwich(const Barcode& sh, std::size_t betti, double eps, const std::vector<double>& T_grid, const ShPlusHook& hook) {
  if (!(eps > 0.0)) throw DomainError("entropy sandwich: eps must be positive");
  Barcode plus = hook ? hook(sh) : sh_plus_barcode(sh);
  const auto b = static_cast<long long>(betti);
  auto cnt = [&](const Barcode& x, double e) {
    auto c = truncated_counts(x, e, T_grid);
    return std::vector<long long>(c.begin(), c.end());
  };
  auto sh1 = cnt(sh, eps), sh2 = cnt(sh, 2 * eps), sh4 = cnt(sh, 4 * eps);
  auto pl1 = cnt(plus, eps), pl2 = cnt(plus, 2 * eps), pl4 = cnt(plus, 4 * eps);
  SandwichReport r;
  for (std::size_t i = 0; i < T_grid.size(); ++i) {
    SandwichRow row;
    row.T = T_grid[i];
    row.lower = sh4[i] - b;
    row.middle = pl2[i];
    row.upper = sh1[i] + b;
    row.ok = row.lower <= row.middle && row.middle <= row.upper && pl4[i] - b <= sh2[i] && sh2[i] <= pl1[i] + b;
    if (!row.ok) ++r.violations;
    r.rows.push_back(row);
  }
  auto s_sh = entropy_eps(sh, eps, T_grid);
  auto s_pl = entropy_eps(plus, eps, T_grid);
  r.slope_sh = s_sh.slope;
  r.slope_plus = s_pl.slope;
  // when the ±betti slack covers every orbit bar the bounds say nothing
  long long top = 0;
  for (auto c : sh1) top = std::max(top, c);
  if (s_sh.degenerate || s_pl.degenerate || top <= 2 * b)
    r.agreement = Agreement::Undetermined;
  else
    r.agreement = std::abs(r.slope_sh - r.slope_plus) <= kSlopeAgreementTol ? Agreement::Agree : Agreement::Disagree;
  return r;
}

}  // namespace bce
