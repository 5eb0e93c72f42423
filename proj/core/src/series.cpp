#include "qgrowth/series.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "qgrowth/errors.hpp"

namespace qgrowth {

std::string series_kind_name(SeriesKind kind) {
  switch (kind) {
    case SeriesKind::U: return "u";
    case SeriesKind::Ell: return "ell";
    case SeriesKind::O: return "o";
  }
  return "?";
}

OrbitSeries make_series(SeriesKind kind, std::vector<BigInt> coefficients) {
  if (coefficients.empty()) {
    throw EmptyCoefficients("series needs at least c_0");
  }
  for (const BigInt& c : coefficients) {
    if (c < 0) throw ValidationError("series coefficients must be nonnegative");
  }
  if (kind == SeriesKind::U && coefficients[0] != 1) {
    throw ValidationError("subset series must start with c_0 = 1");
  }
  OrbitSeries s;
  s.kind = kind;
  s.coefficients = std::move(coefficients);
  return s;
}

OrbitSeries convolve(const OrbitSeries& a, const OrbitSeries& b) {
  if (a.kind != SeriesKind::U || b.kind != SeriesKind::U) {
    throw KindMismatch("convolve expects two subset-orbit series");
  }
  std::size_t N = std::min(a.order(), b.order());
  std::vector<BigInt> c(N + 1);
  for (std::size_t n = 0; n <= N; ++n) {
    BigInt sum = 0;
    for (std::size_t k = 0; k <= n; ++k) {
      sum += a.coefficients[k] * b.coefficients[n - k];
    }
    c[n] = std::move(sum);
  }
  return make_series(SeriesKind::U, std::move(c));
}

OrbitSeries euler_transform(const OrbitSeries& a) {
  if (a.kind != SeriesKind::U) {
    throw KindMismatch("euler_transform expects a subset-orbit series");
  }
  std::size_t N = a.order();
  std::vector<BigInt> out(N + 1);
  out[0] = 1;
  // Multiply in (1−x^k)^{−a_k} = Σ_j C(a_k−1+j, j) x^{kj} one k at a time.
  for (std::size_t k = 1; k <= N; ++k) {
    const BigInt& ak = a.coefficients[k];
    if (ak == 0) continue;
    // binomial weights along multiples of k
    std::vector<BigInt> weights;  // weights[j] = C(a_k−1+j, j)
    weights.emplace_back(1);
    for (std::size_t j = 1; j * k <= N; ++j) {
      BigInt w = weights.back() * (ak - 1 + j);
      w /= static_cast<unsigned>(j);  // exact: consecutive binomials
      weights.push_back(std::move(w));
    }
    std::vector<BigInt> next(N + 1);
    for (std::size_t n = 0; n <= N; ++n) {
      BigInt sum = 0;
      for (std::size_t j = 0; j * k <= n; ++j) {
        sum += weights[j] * out[n - j * k];
      }
      next[n] = std::move(sum);
    }
    out = std::move(next);
  }
  return make_series(SeriesKind::U, std::move(out));
}

OrbitSeries cover_recursion(const std::vector<BigInt>& h_counts,
                            std::size_t order) {
  if (h_counts.empty()) {
    throw EmptyCoefficients("cover recursion needs at least one letter count");
  }
  for (const BigInt& h : h_counts) {
    if (h < 0) throw ValidationError("letter counts must be nonnegative");
  }
  std::vector<BigInt> u(order + 1);
  u[0] = 1;
  for (std::size_t n = 1; n <= order; ++n) {
    BigInt sum = 0;
    for (std::size_t i = 1; i <= h_counts.size() && i <= n; ++i) {
      sum += h_counts[i - 1] * u[n - i];
    }
    u[n] = std::move(sum);
  }
  return make_series(SeriesKind::U, std::move(u));
}

OrbitSeries burnside_sequences(const std::vector<BurnsideClassTable>& tables,
                               std::uint64_t quotient_order,
                               std::size_t order) {
  if (quotient_order == 0) throw OutOfRange("quotient order must be positive");
  if (tables.empty()) throw EmptyCoefficients("no class tables given");
  std::uint64_t total_weight = 0;
  std::vector<BigInt> acc(order + 1);
  for (const BurnsideClassTable& table : tables) {
    total_weight += table.weight;
    // per-element sequence count: 1/(1 − Σ_k c_k x^k)
    std::vector<BigInt> f(order + 1);
    f[0] = 1;
    for (std::size_t n = 1; n <= order; ++n) {
      BigInt sum = 0;
      for (std::size_t k = 1; k <= table.fixed_class_counts.size() && k <= n;
           ++k) {
        sum += table.fixed_class_counts[k - 1] * f[n - k];
      }
      f[n] = std::move(sum);
    }
    for (std::size_t n = 0; n <= order; ++n) {
      acc[n] += BigInt(table.weight) * f[n];
    }
  }
  if (total_weight != quotient_order) {
    throw ValidationError("class table weights must sum to the quotient order");
  }
  for (std::size_t n = 0; n <= order; ++n) {
    if (acc[n] % quotient_order != 0) {
      throw NonIntegerAverage("fixed-sequence totals do not average to an integer at n=" +
                              std::to_string(n));
    }
    acc[n] /= quotient_order;
  }
  return make_series(SeriesKind::U, std::move(acc));
}

BigInt stirling2(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  if (n == 0) return 1;  // S(0,0)
  if (k == 0) return 0;
  std::vector<BigInt> row(n + 1, 0);
  row[0] = 1;  // S(0,0)
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = std::min(i, n); j >= 1; --j) {
      row[j] = row[j - 1] + BigInt(static_cast<unsigned>(j)) * row[j];
    }
    row[0] = 0;
  }
  return row[k];
}

OrbitSeries stirling_convert(const OrbitSeries& series, SeriesKind target) {
  if (series.kind == target) return series;
  std::size_t N = series.order();
  if (series.kind == SeriesKind::Ell && target == SeriesKind::O) {
    std::vector<BigInt> o(N + 1);
    o[0] = 1;
    for (std::size_t n = 1; n <= N; ++n) {
      BigInt sum = 0;
      for (std::size_t k = 1; k <= n; ++k) {
        sum += stirling2(n, k) * series.coefficients[k];
      }
      o[n] = std::move(sum);
    }
    return make_series(SeriesKind::O, std::move(o));
  }
  if (series.kind == SeriesKind::O && target == SeriesKind::Ell) {
    // invert the triangular system o_n = Σ S(n,k) ℓ_k (S(n,n) = 1)
    if (series.coefficients[0] != 1) {
      throw UnsupportedConversion("tuple series must start at 1");
    }
    std::vector<BigInt> ell(N + 1);
    ell[0] = 1;
    for (std::size_t n = 1; n <= N; ++n) {
      BigInt rest = 0;
      for (std::size_t k = 1; k < n; ++k) {
        rest += stirling2(n, k) * ell[k];
      }
      BigInt value = series.coefficients[n] - rest;
      if (value < 0) {
        throw UnsupportedConversion(
            "triangular inversion leaves a negative count at n=" +
            std::to_string(n));
      }
      ell[n] = std::move(value);
    }
    return make_series(SeriesKind::Ell, std::move(ell));
  }
  throw UnsupportedConversion("no conversion from " +
                              series_kind_name(series.kind) + " to " +
                              series_kind_name(target));
}

long long check_subset_tuple_bounds(const OrbitSeries& u,
                                    const OrbitSeries& ell) {
  if (u.kind != SeriesKind::U || ell.kind != SeriesKind::Ell) {
    throw KindMismatch("bound check wants a (u, ell) pair");
  }
  std::size_t N = std::min(u.order(), ell.order());
  BigInt factorial = 1;
  for (std::size_t n = 0; n <= N; ++n) {
    if (n > 0) factorial *= static_cast<unsigned>(n);
    if (u.coefficients[n] > ell.coefficients[n] ||
        ell.coefficients[n] > factorial * u.coefficients[n]) {
      return static_cast<long long>(n);
    }
  }
  return -1;
}

GrowthDiagnostics growth_estimate(const OrbitSeries& series) {
  std::size_t N = series.order();
  // first index from which every coefficient is positive
  std::size_t start = N + 1;
  for (std::size_t n = 0; n <= N; ++n) {
    if (series.coefficients[n] > 0) {
      if (start > N) start = n;
    } else {
      start = N + 1;
    }
  }
  if (start > N || start == N) {
    throw AllZeroTail("series has no strictly positive tail");
  }
  GrowthDiagnostics diag;
  diag.start = start;
  for (std::size_t n = start; n < N; ++n) {
    diag.ratio_tail.emplace_back(series.coefficients[n + 1],
                                 series.coefficients[n]);
  }
  for (std::size_t n = std::max<std::size_t>(start, 1); n <= N; ++n) {
    double log_c = 0.0;
    // log via string length is too crude; convert through double when
    // small, else via msb scaling
    const BigInt& c = series.coefficients[n];
    if (c < BigInt(1) << 500) {
      log_c = std::log(c.convert_to<double>());
    } else {
      std::size_t bits = msb(c);
      BigInt scaled = c >> (bits - 400);
      log_c = std::log(scaled.convert_to<double>()) +
              static_cast<double>(bits - 400) * std::log(2.0);
    }
    diag.root_tail.push_back(std::exp(log_c / static_cast<double>(n)));
  }
  return diag;
}

double ratio_as_double(const std::pair<BigInt, BigInt>& ratio) {
  boost::multiprecision::cpp_rational q(ratio.first, ratio.second);
  return q.convert_to<double>();
}

std::string series_to_json(const OrbitSeries& series) {
  nlohmann::ordered_json j;
  j["kind"] = series_kind_name(series.kind);
  nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
  for (const BigInt& c : series.coefficients) {
    coeffs.push_back(c.str());
  }
  j["coefficients"] = std::move(coeffs);
  return j.dump();
}

OrbitSeries series_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("series JSON: ") + e.what());
  }
  if (!j.contains("kind") || !j.contains("coefficients")) {
    throw ValidationError("series JSON needs \"kind\" and \"coefficients\"");
  }
  std::string kind_name = j["kind"].get<std::string>();
  SeriesKind kind;
  if (kind_name == "u") kind = SeriesKind::U;
  else if (kind_name == "ell") kind = SeriesKind::Ell;
  else if (kind_name == "o") kind = SeriesKind::O;
  else throw ValidationError("unknown series kind: " + kind_name);
  std::vector<BigInt> coeffs;
  for (const auto& item : j["coefficients"]) {
    if (item.is_string()) {
      coeffs.emplace_back(item.get<std::string>());
    } else if (item.is_number_unsigned()) {
      coeffs.emplace_back(item.get<std::uint64_t>());
    } else {
      throw ValidationError("coefficients must be decimal strings");
    }
  }
  return make_series(kind, std::move(coeffs));
}

}  // namespace qgrowth
