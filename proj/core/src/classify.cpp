#include "qgrowth/classify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qgrowth/errors.hpp"

namespace qgrowth {

namespace {

double dyadic_double(const BigInt& num, std::size_t scale) {
  return std::ldexp(num.convert_to<double>(), -static_cast<int>(scale));
}

// Exact decimal expansion of num / 2^scale (num >= 0).
std::string dyadic_decimal(const BigInt& num, std::size_t scale) {
  BigInt shifted = num;
  for (std::size_t i = 0; i < scale; ++i) shifted *= 5;
  std::string digits = shifted.str();
  if (digits.size() <= scale) {
    digits.insert(digits.begin(), scale + 1 - digits.size(), '0');
  }
  std::string head = digits.substr(0, digits.size() - scale);
  std::string tail = digits.substr(digits.size() - scale);
  while (tail.size() > 1 && tail.back() == '0') tail.pop_back();
  if (scale == 0 || tail == "0") return head;
  return head + "." + tail;
}

// Natural log of a positive big integer, stable far beyond double range.
double big_ln(const BigInt& v) {
  const std::size_t bits = boost::multiprecision::msb(v);
  if (bits <= 52) return std::log(v.convert_to<double>());
  const BigInt top = v >> (bits - 52);
  return std::log(top.convert_to<double>()) +
         static_cast<double>(bits - 52) * std::log(2.0);
}

bool atom_under_wr(const GroupExpr& e, bool inside_wr) {
  if (e.kind == ExprKind::Atom) return inside_wr;
  const bool next = inside_wr || e.kind == ExprKind::WrOmega;
  for (const GroupExpr& c : e.children) {
    if (atom_under_wr(c, next)) return true;
  }
  return false;
}

}  // namespace

double GammaValue::lo_double() const { return dyadic_double(lo_num, scale); }
double GammaValue::hi_double() const { return dyadic_double(hi_num, scale); }
std::string GammaValue::lo_decimal() const { return dyadic_decimal(lo_num, scale); }
std::string GammaValue::hi_decimal() const { return dyadic_decimal(hi_num, scale); }

int gamma_poly_sign(std::size_t d, const BigInt& num, const BigInt& den) {
  // value * den^d = num^d - sum_{i=0}^{d-1} num^i * den^(d-i)
  BigInt total = 1;
  for (std::size_t i = 0; i < d; ++i) total *= num;
  BigInt power = 1;  // num^i
  for (std::size_t i = 0; i < d; ++i) {
    BigInt term = power;
    for (std::size_t j = i; j < d; ++j) term *= den;
    total -= term;
    power *= num;
  }
  if (total > 0) return 1;
  if (total < 0) return -1;
  return 0;
}

GammaValue gamma(std::size_t d, double tol) {
  if (d == 0) throw OutOfRange("gamma index must be positive");
  if (!(tol >= 1e-15)) throw OutOfRange("tolerance below the supported precision");
  GammaValue g;
  g.d = d;
  if (d == 1) return g;  // x - 1: the root is exactly 1
  const double target = std::min(tol, 1e-12);
  BigInt lo = 1;  // lo / 2^scale, hi = lo + 1
  std::size_t scale = 0;
  double width = 1.0;
  while (width > target) {
    const BigInt mid = 2 * lo + 1;
    const BigInt den = BigInt(1) << (scale + 1);
    const int sign = gamma_poly_sign(d, mid, den);
    if (sign == 0) {
      throw ValidationError("dyadic midpoint cannot be a root of the gap polynomial");
    }
    lo = sign < 0 ? mid : 2 * lo;
    ++scale;
    width /= 2.0;
  }
  g.lo_num = lo;
  g.hi_num = lo + 1;
  g.scale = scale;
  g.value = (g.lo_double() + g.hi_double()) / 2.0;
  return g;
}

std::string growth_tag_name(GrowthTag tag) {
  switch (tag) {
    case GrowthTag::Polynomial: return "polynomial";
    case GrowthTag::SubexponentialIntermediate: return "subexponential_intermediate";
    case GrowthTag::ExponentialGamma: return "exponential_gamma";
    case GrowthTag::TooFast: return "too_fast";
  }
  return "unknown";
}

GrowthClass classify_expr(const GroupExpr& e) {
  const StructureStats stats = structure_stats(e);
  GrowthClass result;
  if (stats.has_non_hst_atom) {
    result.tag = GrowthTag::TooFast;
    result.justification =
        "an atom letter group is not highly set-transitive, so the orbit "
        "counts dominate 2^n over any polynomial";
    return result;
  }
  if (stats.max_fiber_d >= 2) {
    result.tag = GrowthTag::ExponentialGamma;
    result.d = stats.max_fiber_d;
    std::ostringstream why;
    why << "largest highly set-transitive fiber has size " << stats.max_fiber_d;
    result.justification = why.str();
    return result;
  }
  if (stats.all_fibers_one && stats.skeleton_rank <= 1 &&
      !atom_under_wr(e, false)) {
    result.tag = GrowthTag::Polynomial;
    const OrbitSeries u = profile(e, 32);
    const BigInt& half = u.at(16);
    const BigInt& full = u.at(32);
    if (half > 0 && full > 0) {
      result.degree_estimate = (big_ln(full) - big_ln(half)) / std::log(2.0);
    }
    result.justification =
        "every fiber is a single point and the wreath nesting depth is at "
        "most one";
    return result;
  }
  result.tag = GrowthTag::SubexponentialIntermediate;
  result.justification =
      stats.all_fibers_one
          ? "wreath nesting beyond depth one (or an atom inside a wreath "
            "extension) without larger fibers"
          : "fibers beyond one point but none reaching size two with a "
            "highly set-transitive letter group";
  return result;
}

GapReport check_gap(const GroupExpr& e, std::size_t N, double tol) {
  const GrowthClass cls = classify_expr(e);
  GapReport report;
  if (cls.tag == GrowthTag::TooFast) {
    report.d = 0;
    report.target = 0.0;
    report.detail = "growth exceeds every gamma target";
    return report;
  }
  report.d = cls.tag == GrowthTag::ExponentialGamma ? cls.d : 1;
  report.target = report.d >= 2 ? gamma(report.d).value : 1.0;
  const OrbitSeries u = profile(e, N);
  const std::size_t quarter = std::max<std::size_t>(1, N / 4);
  double max_deviation = 0.0;
  bool tail_positive = true;
  for (std::size_t n = N - quarter; n < N; ++n) {
    if (u.at(n) == 0 || u.at(n + 1) == 0) {
      tail_positive = false;
      break;
    }
    const double ratio = std::exp(big_ln(u.at(n + 1)) - big_ln(u.at(n)));
    max_deviation = std::max(max_deviation, std::abs(ratio - report.target));
  }
  if (!tail_positive) {
    report.detail = "series tail vanishes; no ratio target applies";
    return report;
  }
  report.max_deviation = max_deviation;
  report.passed = max_deviation <= tol;
  if (e.kind == ExprKind::Atom) {
    // Two-sided bound: r_n = u_n / target^n must stay inside a band whose
    // constants come from the tail quarter with factor-2 slack.
    const double log_target = std::log(report.target);
    std::vector<double> r(N + 1);
    for (std::size_t n = 0; n <= N; ++n) {
      if (u.at(n) == 0) {
        report.detail = "series vanishes inside the computed range";
        report.passed = false;
        return report;
      }
      r[n] = std::exp(big_ln(u.at(n)) - static_cast<double>(n) * log_target);
    }
    double tail_min = r[N], tail_max = r[N];
    for (std::size_t n = N - quarter; n <= N; ++n) {
      tail_min = std::min(tail_min, r[n]);
      tail_max = std::max(tail_max, r[n]);
    }
    const double c1 = tail_min / 2.0;
    const double c2 = tail_max * 2.0;
    report.two_sided_bounds = true;
    for (std::size_t n = 0; n <= N; ++n) {
      if (r[n] < c1 || r[n] > c2) {
        report.two_sided_bounds = false;
        break;
      }
    }
    report.passed = report.passed && report.two_sided_bounds;
  }
  return report;
}

std::string gamma_to_json(const GammaValue& g) {
  nlohmann::json out;
  out["d"] = g.d;
  out["value"] = g.value;
  out["lo"] = g.lo_decimal();
  out["hi"] = g.hi_decimal();
  return out.dump();
}

std::string growth_class_to_json(const GrowthClass& c) {
  nlohmann::json out;
  out["class"] = growth_tag_name(c.tag);
  if (c.tag == GrowthTag::ExponentialGamma) out["d"] = c.d;
  if (c.tag == GrowthTag::Polynomial) out["degree_estimate"] = c.degree_estimate;
  out["justification"] = c.justification;
  return out.dump();
}

std::string gap_report_to_json(const GapReport& r) {
  nlohmann::json out;
  out["passed"] = r.passed;
  out["d"] = r.d;
  out["target"] = r.target;
  out["max_deviation"] = r.max_deviation;
  out["two_sided_bounds"] = r.two_sided_bounds;
  if (!r.detail.empty()) out["detail"] = r.detail;
  return out.dump();
}

}  // namespace qgrowth
