#pragma once

#include "bce/barcode.hpp"

#include <functional>
#include <string>
#include <vector>

namespace bce {

enum class TriangleTag {
  Sh0ShShPlus,  // SH⁰ → SH → SH⁺
  ShShPlusSh0,  // SH → SH⁺ → SH⁰
  RfhShRfh,     // H_* → SH → RFH^{≥0}
};

std::string to_string(TriangleTag t);

struct TriangleInstance {
  Barcode U, V, W;
  TriangleTag tag = TriangleTag::Sh0ShShPlus;
};

/// betti copies of (0, ∞).
Barcode sh0_barcode(std::size_t betti);

/// Quotient: bars with left > 0 stay, (0, b] becomes (b, ∞), (0, ∞) goes.
/// DropBetti: only bars with left > 0 stay (zero connecting map).
enum class ShPlusRule { Quotient, DropBetti };

using ShPlusHook = std::function<Barcode(const Barcode&)>;

Barcode sh_plus_barcode(const Barcode& sh, ShPlusRule rule = ShPlusRule::Quotient);

/// Model triple for `tag`; `hook` overrides the SH⁺ / RFH construction.
TriangleInstance model_triangle(const Barcode& sh, std::size_t betti, TriangleTag tag, const ShPlusHook& hook = {});

/// n_{2δ}(tru(V, T)) ≤ n_δ(tru(U, T)) + n_δ(tru(W, T)).
bool triangle_count_check(const TriangleInstance& t, double delta, double T);

struct SandwichRow {
  double T = 0.0;
  long long lower = 0;    // n_{4ε}(tru(SH, T)) − betti
  long long middle = 0;   // n_{2ε}(tru(SH⁺, T))
  long long upper = 0;    // n_ε(tru(SH, T)) + betti
  bool ok = false;        // both displayed sandwiches hold
};

enum class Agreement { Agree, Disagree, Undetermined };
std::string to_string(Agreement a);

struct SandwichReport {
  std::vector<SandwichRow> rows;
  std::size_t violations = 0;
  double slope_sh = 0.0;
  double slope_plus = 0.0;
  Agreement agreement = Agreement::Undetermined;
};

inline constexpr double kSlopeAgreementTol = 0.02;

/// SH/SH⁺ count sandwich on every T plus fitted-slope agreement at eps.
/// Undetermined when a fit is degenerate or n_eps(SH) never exceeds 2·betti.
SandwichReport entropy_sandwich(const Barcode& sh, std::size_t betti, double eps, const std::vector<double>& T_grid, const ShPlusHook& hook = {});

}  // namespace bce
