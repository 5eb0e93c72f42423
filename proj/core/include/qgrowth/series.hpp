#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qgrowth {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr std::size_t kDefaultSeriesOrder = 64;

enum class SeriesKind { U, Ell, O };

std::string series_kind_name(SeriesKind kind);

// Exact truncated counting series c_0 ... c_N.  U counts orbits on
// n-subsets, Ell on injective n-tuples, O on all n-tuples.
struct OrbitSeries {
  SeriesKind kind = SeriesKind::U;
  std::vector<BigInt> coefficients;  // length N+1

  std::size_t order() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }
  const BigInt& at(std::size_t n) const { return coefficients.at(n); }
};

// Throws EmptyCoefficients / ValidationError on invariant violations
// (kind U needs c_0 = 1; all coefficients nonnegative).
OrbitSeries make_series(SeriesKind kind, std::vector<BigInt> coefficients);

// c_n = Σ_k a_k b_{n−k}; the subset-orbit series of a disjoint union.
OrbitSeries convolve(const OrbitSeries& a, const OrbitSeries& b);

// Coefficients of Π_{k≥1} (1−x^k)^{−a_k}: multisets of orbit-labeled
// parts with total size n.  Input kind U with a_0 = 1.
OrbitSeries euler_transform(const OrbitSeries& a);

// The unique series with u_0 = 1 and u_n = Σ_{i=1}^{|h|} h_i·u_{n−i},
// i.e. the expansion of 1/(1 − Σ h_i x^i).
OrbitSeries cover_recursion(const std::vector<BigInt>& h_counts,
                            std::size_t order = kDefaultSeriesOrder);

// One quotient element's view of the letter classes: `weight` elements
// share this table; fixed_class_counts[k-1] = number of classes of
// k-subsets it fixes.
struct BurnsideClassTable {
  std::uint64_t weight = 1;
  std::vector<BigInt> fixed_class_counts;
};

// u_n = (1/quotient_order) Σ_g [xⁿ] 1/(1 − Σ_k c_k(g)x^k).  The average
// must divide exactly; otherwise NonIntegerAverage.
OrbitSeries burnside_sequences(const std::vector<BurnsideClassTable>& tables,
                               std::uint64_t quotient_order,
                               std::size_t order = kDefaultSeriesOrder);

// Stirling numbers of the second kind by the triangle recurrence.
BigInt stirling2(std::size_t n, std::size_t k);

// Ell→O via o_n = Σ_{k=1}^n S(n,k)·ℓ_k; O→Ell by inverting that
// triangular system (UnsupportedConversion unless it solves in
// nonnegative integers).  Converting to the series' own kind is the
// identity; anything else is UnsupportedConversion.
OrbitSeries stirling_convert(const OrbitSeries& series, SeriesKind target);

// Validates u_n ≤ ℓ_n ≤ n!·u_n on a paired (u, ℓ) prefix; returns the
// first violating index, or -1 if none.
long long check_subset_tuple_bounds(const OrbitSeries& u,
                                    const OrbitSeries& ell);

struct GrowthDiagnostics {
  std::size_t start = 0;  // index of the first ratio below
  // exact c_{n+1}/c_n for n = start, start+1, ...
  std::vector<std::pair<BigInt, BigInt>> ratio_tail;
  std::vector<double> root_tail;  // c_n^{1/n}, same indexing
};

// Diagnostic tails only; no convergence claim.  AllZeroTail when the
// series has no strictly positive tail.
GrowthDiagnostics growth_estimate(const OrbitSeries& series);

double ratio_as_double(const std::pair<BigInt, BigInt>& ratio);

// JSON round trip: {"kind":"u","coefficients":["1","1","2",...]}
std::string series_to_json(const OrbitSeries& series);
OrbitSeries series_from_json(const std::string& text);

}  // namespace qgrowth
