#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "qgrowth/classify.hpp"
#include "qgrowth/covers.hpp"
#include "qgrowth/dsl.hpp"
#include "qgrowth/errors.hpp"
#include "qgrowth/expr.hpp"
#include "qgrowth/qatoms.hpp"
#include "qgrowth/series.hpp"
#include "qgrowth/wordmodel.hpp"

namespace {

using namespace qgrowth;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::uint64_t env_or(const char* name, std::uint64_t fallback) {
  const char* value = std::getenv(name);
  if (!value || !*value) return fallback;
  return std::stoull(value);
}

std::string series_csv(const OrbitSeries& u,
                       const OrbitSeries* oracle) {
  std::ostringstream out;
  out << "n,u";
  if (oracle) out << ",oracle";
  for (std::size_t n = 0; n < u.coefficients.size(); ++n) {
    out << "\n" << n << "," << u.at(n).str();
    if (oracle) out << "," << oracle->at(n).str();
  }
  return out.str();
}

std::string series_plain(const OrbitSeries& u) {
  std::ostringstream out;
  for (std::size_t n = 0; n < u.coefficients.size(); ++n) {
    if (n) out << ",";
    out << u.at(n).str();
  }
  return out.str();
}

nlohmann::json series_array(const OrbitSeries& u) {
  nlohmann::json list = nlohmann::json::array();
  for (const BigInt& c : u.coefficients) list.push_back(c.str());
  return list;
}

int cmd_profile(const std::string& text, std::size_t n, bool oracle,
                const std::string& format, std::size_t bfs_cap) {
  const GroupExpr e = parse_expr(text);
  const OrbitSeries u = profile(e, n, bfs_cap);
  bool match = true;
  OrbitSeries cross;
  if (oracle) {
    cross = oracle_profile(e, n, bfs_cap);
    match = u.coefficients == cross.coefficients;
  }
  if (format == "csv") {
    std::cout << series_csv(u, oracle ? &cross : nullptr) << "\n";
  } else if (format == "json") {
    nlohmann::json out;
    out["expression"] = print_expr(e);
    out["n"] = n;
    out["series"] = series_array(u);
    if (oracle) {
      out["oracle"] = series_array(cross);
      out["match"] = match;
    }
    std::cout << out.dump() << "\n";
  } else {
    std::cout << series_plain(u) << "\n";
    if (oracle) std::cout << series_plain(cross) << "\n";
  }
  return (oracle && !match) ? 4 : 0;
}

int cmd_classify(const std::string& text, std::size_t n, double tol) {
  const GroupExpr e = parse_expr(text);
  const GrowthClass cls = classify_expr(e);
  nlohmann::json out = nlohmann::json::parse(growth_class_to_json(cls));
  if (cls.tag == GrowthTag::ExponentialGamma) {
    out["gamma"] = nlohmann::json::parse(gamma_to_json(qgrowth::gamma(cls.d)));
  }
  out["gap"] = nlohmann::json::parse(gap_report_to_json(check_gap(e, n, tol)));
  std::cout << out.dump() << "\n";
  return 0;
}

int cmd_gamma(std::size_t d, double tol) {
  std::cout << gamma_to_json(qgrowth::gamma(d, tol)) << "\n";
  return 0;
}

int cmd_catalog_hst(std::size_t degree) {
  nlohmann::json out = nlohmann::json::array();
  for (const FiniteGroup& g : hst_catalog(degree)) {
    nlohmann::json row;
    row["degree"] = g.degree();
    row["order"] = g.order();
    row["group"] = nlohmann::json::parse(group_to_json(g));
    out.push_back(std::move(row));
  }
  std::cout << out.dump() << "\n";
  return 0;
}

int cmd_catalog_covers(std::size_t fiber) {
  nlohmann::json out = nlohmann::json::array();
  for (const CatalogEntry& entry : enumerate_S_catalog(fiber)) {
    nlohmann::json row;
    row["item"] = entry.item;
    row["p_oligomorphic_family"] = entry.p_oligomorphic_family;
    row["spec"] = nlohmann::json::parse(spec_to_json(entry.spec));
    out.push_back(std::move(row));
  }
  std::cout << out.dump() << "\n";
  return 0;
}

int cmd_normal(const std::string& n_path, const std::string& g_path) {
  const FiberCoverSpec specN = spec_from_json(read_file(n_path));
  const FiberCoverSpec specG = spec_from_json(read_file(g_path));
  const NormalPairReport report = classify_normal_pair(specN, specG);
  nlohmann::json out;
  out["is_normal"] = report.is_normal;
  if (report.matched_case) out["matched_case"] = *report.matched_case;
  if (report.quotient_structure) {
    out["quotient_structure"] = *report.quotient_structure;
  }
  if (report.quotient_iso_tag) out["quotient"] = *report.quotient_iso_tag;
  if (report.note) out["note"] = *report.note;
  std::cout << out.dump() << "\n";
  return 0;
}

int cmd_cover(const std::string& action, const std::string& input,
              std::uint64_t order_limit) {
  const std::string text = read_file(input);
  if (action == "analyze") {
    const FiniteCover cover = cover_from_json(text);
    const CoverAnalysis analysis = analyze(cover, order_limit);
    nlohmann::json out;
    out["kernel_order"] = analysis.kernel.order();
    out["trivial"] = analysis.trivial;
    out["strongly_trivial"] = analysis.strongly_trivial;
    out["split"] = analysis.split.has_value() ? nlohmann::json(*analysis.split)
                                              : nlohmann::json(nullptr);
    out["strongly_split"] = analysis.strongly_split.has_value()
                                ? nlohmann::json(*analysis.strongly_split)
                                : nlohmann::json(nullptr);
    out["linked"] = analysis.linked;
    out["finite_fiber_factors"] = analysis.finite_fiber_factors;
    out["points"] = nlohmann::json::array();
    for (const CoverPointAnalysis& p : analysis.points) {
      nlohmann::json row;
      row["fiber"] = p.fiber;
      row["fiber_group_order"] = p.fiber_group.order();
      row["binding_order"] = p.binding.order();
      row["pointwise_binding_order"] = p.pointwise_binding.order();
      out["points"].push_back(std::move(row));
    }
    std::cout << out.dump() << "\n";
    return 0;
  }
  if (action == "decompose") {
    const FiniteCover cover = cover_from_json(text);
    const auto [quotient, descent] = decompose(cover);
    nlohmann::json out;
    out["quotient"] = nlohmann::json::parse(cover_to_json(quotient));
    out["descent"] = nlohmann::json::parse(descent_to_json(descent));
    std::cout << out.dump() << "\n";
    return 0;
  }
  if (action == "build") {
    nlohmann::json in;
    try {
      in = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("invalid build input: ") + e.what());
    }
    if (!in.contains("quotient") || !in.contains("descent")) {
      throw ParseError("build input must carry quotient and descent");
    }
    const FiniteCover quotient = cover_from_json(in["quotient"].dump());
    const DescentData descent = descent_from_json(in["descent"].dump());
    const FiniteCover lifted = build_lift(quotient, descent);
    std::cout << cover_to_json(lifted) << "\n";
    return 0;
  }
  throw ValidationError("unknown cover action: " + action);
}

int cmd_sensitivity(const std::string& text, std::size_t m, std::size_t n_max,
                    std::size_t bfs_cap) {
  const GroupExpr e = parse_expr(text);
  nlohmann::json out;
  if (e.kind == ExprKind::Atom) {
    const WordSensitivityReport report =
        atom_sensitivity(e.atom, m, n_max, bfs_cap);
    out["sensitive"] = report.is_sensitive;
    out["verified_to"] = report.verified_to;
    if (report.witness) {
      out["witness"] = {nlohmann::json::parse(report.witness->first),
                        nlohmann::json::parse(report.witness->second)};
    }
  } else if (e.kind == ExprKind::Finite) {
    const SensitivityReport report = m_sensitivity(e.finite, m, n_max);
    out["sensitive"] = report.is_sensitive;
    out["verified_to"] = report.verified_to;
    if (report.witness) {
      out["witness"] = {report.witness->first, report.witness->second};
    }
  } else {
    throw ValidationError("sensitivity needs an atom or a finite leaf");
  }
  std::cout << out.dump() << "\n";
  return 0;
}

struct SelfTest {
  std::string name;
  bool passed;
};

std::vector<SelfTest> run_selftests(bool full) {
  std::vector<SelfTest> results;
  auto check = [&](const std::string& name, bool ok) {
    results.push_back({name, ok});
  };

  {
    const GroupExpr fib = parse_expr("cover{F=2; H=(0 1); L=(0 1); base=<}");
    const OrbitSeries u = profile(fib, 10);
    const std::vector<std::uint64_t> expected = {1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89};
    bool ok = true;
    for (std::size_t n = 0; n <= 10; ++n) ok = ok && u.at(n) == expected[n];
    check("two-point order fiber gives the Fibonacci numbers", ok);
    const OrbitSeries cross = oracle_profile(fib, 8);
    ok = true;
    for (std::size_t n = 0; n <= 8; ++n) ok = ok && u.at(n) == cross.at(n);
    check("word enumeration agrees with the letter-class recursion", ok);
  }
  {
    const GammaValue g = qgrowth::gamma(2);
    check("gamma(2) brackets the golden ratio",
          g.lo_double() < 1.61803398875 && 1.61803398874 < g.hi_double());
  }
  {
    const GroupExpr e = parse_expr("wr_omega(fin{2; (0 1)})");
    const OrbitSeries u = profile(e, 6);
    const OrbitSeries cross = oracle_profile(e, 6);
    check("wreath extension matches its finite truncation",
          u.coefficients == cross.coefficients);
  }
  {
    const std::vector<std::string> corpus = {
        "triv", "Q <", "Q sym", "prod(Q <, Q <)",
        "wr_omega(fin{1;()})", "cover{F=2; H=(0 1); L=(0 1); base=<}"};
    bool ok = true;
    for (const std::string& text : corpus) {
      const GroupExpr e = parse_expr(text);
      ok = ok && expr_equal(e, parse_expr(print_expr(e)));
    }
    check("parse/print round trip", ok);
  }
  if (full) {
    bool ok = true;
    for (std::size_t fiber = 1; fiber <= 2 && ok; ++fiber) {
      for (const CatalogEntry& entry : enumerate_S_catalog(fiber)) {
        const OrbitSeries u = profile(expr_atom(entry.spec), 6);
        for (std::size_t n = 0; n <= 6 && ok; ++n) {
          ok = u.at(n) == count_subset_orbits(entry.spec, n);
        }
        if (!ok) break;
      }
    }
    check("catalog profiles match word enumeration", ok);

    const FiniteGroup s2 = FiniteGroup::from_generators(
        {Permutation::from_cycles("(0 1)", 2)}, 2);
    const FiniteCover cover =
        make_cover(kernel_LH(2, s2, s2, 3), {0, 0, 1, 1, 2, 2});
    const auto [quotient, descent] = decompose(cover);
    check("cover round trip", cover_isomorphic(build_lift(quotient, descent), cover));
  }
  return results;
}

int cmd_selftest(const std::string& level) {
  const std::vector<SelfTest> results = run_selftests(level == "full");
  bool all = true;
  for (const SelfTest& t : results) {
    std::cout << (t.passed ? "ok   " : "FAIL ") << t.name << "\n";
    all = all && t.passed;
  }
  std::cout << (all ? "all checks passed" : "some checks FAILED") << "\n";
  return all ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orbit growth calculator for oligomorphic permutation groups"};
  app.require_subcommand(1);

  std::uint64_t order_limit = env_or("ORDER_LIMIT", kDefaultOrderLimit);
  std::uint64_t bfs_cap = env_or("BFS_CAP", kDefaultBfsCap);
  std::uint64_t series_n = env_or("SERIES_N", kDefaultSeriesOrder);
  app.add_option("--order-limit", order_limit, "group element cap");
  app.add_option("--bfs-cap", bfs_cap, "word enumeration state cap");
  app.add_option("--series-n", series_n, "default series order");

  auto* profile_cmd = app.add_subcommand("profile", "orbit counting series");
  std::string profile_expr_text, profile_format = "plain";
  std::size_t profile_n = 0;
  bool profile_oracle = false;
  bool profile_n_set = false;
  profile_cmd->add_option("expression", profile_expr_text)->required();
  profile_cmd->add_option("--n", profile_n)->each([&](const std::string&) {
    profile_n_set = true;
  });
  profile_cmd->add_flag("--oracle", profile_oracle);
  profile_cmd->add_option("--format", profile_format)
      ->check(CLI::IsMember({"plain", "csv", "json"}));

  auto* classify_cmd = app.add_subcommand("classify", "growth trichotomy");
  std::string classify_expr_text;
  std::size_t classify_n = 60;
  double classify_tol = 1e-4;
  classify_cmd->add_option("expression", classify_expr_text)->required();
  classify_cmd->add_option("--n", classify_n);
  classify_cmd->add_option("--tol", classify_tol);

  auto* gamma_cmd = app.add_subcommand("gamma", "certified growth constants");
  std::size_t gamma_d = 2;
  double gamma_tol = 1e-12;
  gamma_cmd->add_option("d", gamma_d)->required();
  gamma_cmd->add_option("--tol", gamma_tol);

  auto* catalog_cmd = app.add_subcommand("catalog", "built-in catalogs");
  std::string catalog_kind;
  std::size_t catalog_degree = 5, catalog_fiber = 1;
  catalog_cmd->add_option("kind", catalog_kind)
      ->required()
      ->check(CLI::IsMember({"hst", "covers"}));
  catalog_cmd->add_option("--degree", catalog_degree);
  catalog_cmd->add_option("--fiber", catalog_fiber);

  auto* normal_cmd = app.add_subcommand("normal", "normality of a spec pair");
  std::string normal_n, normal_g;
  normal_cmd->add_option("N", normal_n)->required();
  normal_cmd->add_option("G", normal_g)->required();

  auto* cover_cmd = app.add_subcommand("cover", "finite cover operations");
  std::string cover_action, cover_input;
  cover_cmd->add_option("action", cover_action)
      ->required()
      ->check(CLI::IsMember({"analyze", "build", "decompose"}));
  cover_cmd->add_option("--input", cover_input)->required();

  auto* sens_cmd = app.add_subcommand("sensitivity", "projection sensitivity");
  std::string sens_expr_text;
  std::size_t sens_m = 2, sens_max_n = 6;
  sens_cmd->add_option("expression", sens_expr_text)->required();
  sens_cmd->add_option("--m", sens_m);
  sens_cmd->add_option("--max-n", sens_max_n);

  auto* selftest_cmd = app.add_subcommand("selftest", "built-in cross checks");
  std::string selftest_level = "quick";
  selftest_cmd->add_option("--level", selftest_level)
      ->check(CLI::IsMember({"quick", "full"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*profile_cmd) {
      const std::size_t n = profile_n_set ? profile_n : series_n;
      return cmd_profile(profile_expr_text, n, profile_oracle, profile_format,
                         bfs_cap);
    }
    if (*classify_cmd) return cmd_classify(classify_expr_text, classify_n, classify_tol);
    if (*gamma_cmd) return cmd_gamma(gamma_d, gamma_tol);
    if (*catalog_cmd) {
      return catalog_kind == "hst" ? cmd_catalog_hst(catalog_degree)
                                   : cmd_catalog_covers(catalog_fiber);
    }
    if (*normal_cmd) return cmd_normal(normal_n, normal_g);
    if (*cover_cmd) return cmd_cover(cover_action, cover_input, order_limit);
    if (*sens_cmd) return cmd_sensitivity(sens_expr_text, sens_m, sens_max_n, bfs_cap);
    if (*selftest_cmd) return cmd_selftest(selftest_level);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return static_cast<int>(e.exit_code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
