#pragma once

#include <cstddef>
#include <string>

#include "qgrowth/expr.hpp"
#include "qgrowth/series.hpp"

namespace qgrowth {

// The largest real root of x^d - x^{d-1} - ... - x - 1, bracketed by a
// dyadic interval certified with exact integer sign evaluations.
struct GammaValue {
  std::size_t d = 1;
  double value = 1.0;
  // lo = lo_num / 2^scale, hi = hi_num / 2^scale; f_d(lo) < 0 < f_d(hi)
  // for d >= 2.  d = 1 returns the exact root lo = hi = 1.
  BigInt lo_num = 1;
  BigInt hi_num = 1;
  std::size_t scale = 0;

  double lo_double() const;
  double hi_double() const;
  std::string lo_decimal() const;  // exact decimal expansion
  std::string hi_decimal() const;
};

// Bisection to width min(tol, 1e-12); exact integer arithmetic decides
// every sign.  Throws OutOfRange for d = 0 or tol < 1e-15.
GammaValue gamma(std::size_t d, double tol = 1e-12);

// Sign of x^d - x^{d-1} - ... - 1 at the rational num/den (den > 0).
int gamma_poly_sign(std::size_t d, const BigInt& num, const BigInt& den);

enum class GrowthTag { Polynomial, SubexponentialIntermediate, ExponentialGamma, TooFast };

std::string growth_tag_name(GrowthTag tag);

struct GrowthClass {
  GrowthTag tag = GrowthTag::Polynomial;
  std::size_t d = 0;             // set for ExponentialGamma
  double degree_estimate = 0.0;  // set for Polynomial
  std::string justification;
};

// The trichotomy decision from structural data: an atom letter group that
// is not highly set-transitive forces faster-than-2^n/poly growth; the
// largest highly set-transitive fiber d >= 2 pins the rate at gamma_d;
// fiber-free shapes split into polynomial and intermediate growth by
// wreath nesting depth.
GrowthClass classify_expr(const GroupExpr& e);

struct GapReport {
  bool passed = false;
  std::size_t d = 1;          // gamma index used as the target rate
  double target = 1.0;        // gamma_d (or exactly 1)
  double max_deviation = 0.0; // |u_{n+1}/u_n - target| over the last quarter
  bool two_sided_bounds = false;
  std::string detail;
};

// Numeric corroboration: ratio tail of profile(e, N) against the target
// rate, plus a two-sided C1*r^n <= u_n <= C2*r^n band check with the
// constants fitted from the tail quarter (factor-2 slack) and verified
// over the whole computed range.
GapReport check_gap(const GroupExpr& e, std::size_t N, double tol);

std::string gamma_to_json(const GammaValue& g);
std::string growth_class_to_json(const GrowthClass& c);
std::string gap_report_to_json(const GapReport& r);

}  // namespace qgrowth
