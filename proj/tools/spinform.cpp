// spinform: extendability of periodic surface homology actions over the
// 4-sphere, plus the exhaustive checks behind the classification tables.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spinform/action.hpp"
#include "spinform/errors.hpp"
#include "spinform/families.hpp"
#include "spinform/matrix_io.hpp"
#include "spinform/number_theory.hpp"
#include "spinform/spin.hpp"
#include "spinform/verify.hpp"

namespace {

using namespace spinform;

constexpr uint64_t kDefaultSeed = 0x5eed;

struct MapSource {
  std::string family;
  std::string matrix_path;
  int genus = 0;

  // Family constructors need --genus; matrix files carry their own genus
  // and --genus, when given, must agree.
  HomologyMap resolve(std::string& label) const {
    if (!matrix_path.empty()) {
      HomologyMap map = load_homology_map(matrix_path);
      if (genus > 0 && genus != map.genus())
        throw std::invalid_argument(
            "--genus " + std::to_string(genus) + " disagrees with " +
            matrix_path + " (genus " + std::to_string(map.genus()) + ")");
      label = matrix_path;
      return map;
    }
    auto kind = parse_family(family);
    if (!kind)
      throw std::invalid_argument("unknown family '" + family +
                                  "' (expected tau, v, eta or wiman)");
    if (genus < 1)
      throw std::invalid_argument("--genus is required with --family");
    label = family_name(*kind);
    return families::make(*kind, genus);
  }
};

std::string report_json(const FixedPointReport& report) {
  return report.to_json();
}

int cmd_extendable(const MapSource& source, const std::string& format,
                   int cutoff, int conjugates, uint64_t seed) {
  std::string label;
  HomologyMap f = source.resolve(label);
  FixedPointReport report = invariant_structures(f, cutoff);

  if (format == "json") {
    std::cout << report_json(report) << "\n";
  } else {
    std::cout << "map: " << label << "  genus: " << report.genus
              << "  homology order: " << report.map_order << "\n";
    std::cout << "extendable: " << (report.extendable() ? "true" : "false")
              << "\n";
    if (report.extendable())
      std::cout << "witness: " << report.fixed_bounded.front().hex_id() << "\n";
    std::cout << "fixed structures: " << report.fixed_bounded.size()
              << " bounded, " << report.fixed_unbounded.size()
              << " unbounded\n";
  }

  if (conjugates > 0) {
    int agree = 0;
    for (int i = 1; i <= conjugates; ++i) {
      HomologyMap h = random_symplectic(f.form_ptr(), seed + static_cast<uint64_t>(i));
      bool verdict = is_extendable(conjugate(f, h), cutoff).extendable;
      agree += (verdict == report.extendable());
    }
    std::cout << "conjugate verdicts agree: " << agree << "/" << conjugates
              << "\n";
    if (agree != conjugates) return 1;
  }
  return 0;
}

int cmd_survey(const std::string& family, int g_from, int g_to,
               const std::string& format, int cutoff) {
  auto kind = parse_family(family);
  if (!kind)
    throw std::invalid_argument("unknown family '" + family + "'");
  if (g_from < 1 || g_to < g_from)
    throw std::invalid_argument("need 1 <= --genus-from <= --genus-to");

  struct Row {
    int genus;
    uint32_t order;
    bool extendable;
    size_t bounded, unbounded;
    std::string witness;
  };
  std::vector<Row> rows;
  for (int g = g_from; g <= g_to; ++g) {
    FixedPointReport report = invariant_structures(families::make(*kind, g), cutoff);
    Row row{g, report.map_order, report.extendable(),
            report.fixed_bounded.size(), report.fixed_unbounded.size(), ""};
    if (report.extendable()) row.witness = report.fixed_bounded.front().hex_id();
    rows.push_back(std::move(row));
  }

  std::string name = family_name(*kind);
  if (format == "json") {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& r : rows)
      list.push_back({{"genus", r.genus},
                      {"family", name},
                      {"homology_order", r.order},
                      {"extendable", r.extendable},
                      {"fixed_bounded", r.bounded},
                      {"fixed_unbounded", r.unbounded},
                      {"witness", r.witness}});
    std::cout << list.dump(2) << "\n";
  } else if (format == "csv") {
    std::cout << "genus,family,homology_order,extendable,fixed_bounded,"
                 "fixed_unbounded,witness\n";
    for (const auto& r : rows)
      std::cout << r.genus << "," << name << "," << r.order << ","
                << (r.extendable ? "true" : "false") << "," << r.bounded << ","
                << r.unbounded << "," << r.witness << "\n";
  } else {
    std::printf("%-6s %-7s %-6s %-11s %-8s %-10s %s\n", "genus", "family",
                "order", "extendable", "bounded", "unbounded", "witness");
    for (const auto& r : rows)
      std::printf("%-6d %-7s %-6u %-11s %-8zu %-10zu %s\n", r.genus,
                  name.c_str(), r.order, r.extendable ? "true" : "false",
                  r.bounded, r.unbounded, r.witness.c_str());
  }
  return 0;
}

int cmd_invariants(const MapSource& source, std::optional<int> arf_filter,
                   const std::string& format, int cutoff) {
  std::string label;
  HomologyMap f = source.resolve(label);
  FixedPointReport report = invariant_structures(f, cutoff);

  std::vector<std::pair<std::string, unsigned>> lines;
  auto add = [&](const std::vector<SpinStructure>& list, unsigned arf) {
    if (arf_filter && static_cast<unsigned>(*arf_filter) != arf) return;
    for (const auto& q : list) lines.emplace_back(q.hex_id(), arf);
  };
  add(report.fixed_bounded, 0);
  add(report.fixed_unbounded, 1);
  std::sort(lines.begin(), lines.end());

  if (format == "json") {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& [id, arf] : lines)
      list.push_back({{"id", id}, {"arf", arf}});
    std::cout << list.dump() << "\n";
  } else {
    for (const auto& [id, arf] : lines)
      std::cout << id << " arf=" << arf << "\n";
  }
  return 0;
}

int cmd_verify(const std::string& check, int g_max,
               const std::string& output) {
  std::vector<VerificationReport> reports;
  if (check == "all") {
    reports = run_all(g_max, output);
  } else {
    if (check == "cardinality") reports.push_back(verify_cardinality(g_max));
    else if (check == "bu") reports.push_back(verify_bu(g_max));
    else if (check == "counts") reports.push_back(verify_invariant_counts(g_max));
    else if (check == "zero-formulas") reports.push_back(verify_zero_formulas(g_max));
    else if (check == "extendability") reports.push_back(verify_extendability(g_max));
    else if (check == "pgroup") {
      reports.push_back(verify_pgroup(1));
      if (g_max <= 0 || g_max >= 2) reports.push_back(verify_pgroup(2));
    } else if (check == "transitivity") reports.push_back(verify_transitivity(g_max));
    else if (check == "divisibility") reports.push_back(verify_thm13_divisibility(g_max));
    else
      throw std::invalid_argument("unknown check '" + check + "'");
    if (!output.empty()) {
      std::string payload = reports_to_json(reports);
      std::ofstream out(output, std::ios::trunc);
      if (!out) throw IoError(output, "cannot open for writing");
      out << payload;
      out.close();
      if (!out) throw IoError(output, "write failed");
    }
  }

  for (const auto& r : reports) {
    std::printf("check %-16s [g %d..%d]  %s  (%.1f ms)\n", r.check_id.c_str(),
                r.genus_lo, r.genus_hi, r.passed ? "pass" : "FAIL",
                r.elapsed_ms);
    for (const auto& m : r.mismatches)
      std::printf("  g=%d expected %s, observed %s\n", m.genus,
                  m.expected.c_str(), m.observed.c_str());
  }
  return all_passed(reports) ? 0 : 1;
}

int cmd_primes(uint64_t limit, uint64_t check_divisor, uint64_t genus_to,
               const std::string& format) {
  if (check_divisor > 0) {
    if (genus_to < 1)
      throw std::invalid_argument("--check-divisor needs --genus-to");
    if (format == "json") {
      nlohmann::json list = nlohmann::json::array();
      for (uint64_t g = 1; g <= genus_to; ++g)
        list.push_back({{"genus", g},
                        {"p", check_divisor},
                        {"divides_bg", divides_bg(check_divisor, g)}});
      std::cout << list.dump() << "\n";
    } else {
      for (uint64_t g = 1; g <= genus_to; ++g)
        std::cout << "g=" << g << " divides_bg="
                  << (divides_bg(check_divisor, g) ? "true" : "false") << "\n";
    }
    return 0;
  }

  std::vector<PrimeVerdict> verdicts;
  for (uint64_t p : primes_below(limit))
    if (p > 2) verdicts.push_back(prime_verdict(p));

  if (format == "json") {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& v : verdicts)
      list.push_back({{"p", v.p},
                      {"8k7", v.is_8k7},
                      {"ord2", v.order_of_two},
                      {"never_divides_bg", v.never_divides_bg}});
    std::cout << list.dump() << "\n";
  } else {
    for (const auto& v : verdicts)
      std::cout << "p=" << v.p << " 8k7=" << (v.is_8k7 ? "true" : "false")
                << " ord2=" << v.order_of_two << " never_divides_bg="
                << (v.never_divides_bg ? "true" : "false") << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "spinform: decides when a periodic homology action on a surface "
      "extends over the 4-sphere, by searching for bounded invariant spin "
      "structures, and re-derives the supporting classification tables."};
  app.require_subcommand(1);

  std::string format = "text";
  int cutoff = kEnumerationCutoff;

  // ---- extendable ----
  MapSource ext_source;
  int ext_conjugates = 0;
  uint64_t ext_seed = kDefaultSeed;
  auto* ext = app.add_subcommand(
      "extendable", "Decide extendability for one map");
  ext->add_option("--family", ext_source.family, "tau, v, eta or wiman");
  ext->add_option("--genus", ext_source.genus, "surface genus");
  ext->add_option("--matrix", ext_source.matrix_path,
                  "matrix file; row i is the image of x_i in x_1..x_2g");
  ext->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  ext->add_option("--cutoff", cutoff, "enumeration cutoff genus");
  ext->add_option("--conjugates", ext_conjugates,
                  "re-check the verdict on this many random conjugates");
  ext->add_option("--seed", ext_seed, "seed for the conjugate stress test");

  // ---- survey ----
  std::string survey_family;
  int survey_from = 1, survey_to = 1;
  auto* survey = app.add_subcommand(
      "survey", "Per-genus verdict table for one family");
  survey->add_option("--family", survey_family)->required();
  survey->add_option("--genus-from", survey_from)->required();
  survey->add_option("--genus-to", survey_to)->required();
  survey->add_option("--format", format)
      ->check(CLI::IsMember({"text", "csv", "json"}));
  survey->add_option("--cutoff", cutoff);

  // ---- invariants ----
  MapSource inv_source;
  int inv_arf = -1;
  auto* inv = app.add_subcommand(
      "invariants", "List the invariant spin structures of one map");
  inv->add_option("--family", inv_source.family);
  inv->add_option("--genus", inv_source.genus);
  inv->add_option("--matrix", inv_source.matrix_path);
  inv->add_option("--arf", inv_arf, "only structures of this Arf class")
      ->check(CLI::IsMember({"0", "1"}));
  inv->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  inv->add_option("--cutoff", cutoff);

  // ---- verify ----
  std::string verify_check = "all";
  int verify_gmax = 0;
  std::string verify_output;
  auto* verify = app.add_subcommand(
      "verify", "Run the exhaustive verification suite");
  verify->add_option("--check", verify_check,
                     "all, cardinality, bu, counts, zero-formulas, "
                     "extendability, pgroup, transitivity or divisibility");
  verify->add_option("--genus-to", verify_gmax,
                     "upper genus; clamped to each check's cap");
  verify->add_option("--output", verify_output, "write the JSON report here");

  // ---- primes ----
  uint64_t primes_limit = 100;
  uint64_t primes_divisor = 0;
  uint64_t primes_gto = 0;
  auto* primes = app.add_subcommand(
      "primes", "Prime scans for the divisibility arguments");
  primes->add_option("--limit", primes_limit, "scan odd primes below this");
  primes->add_option("--check-divisor", primes_divisor,
                     "report whether this prime divides |B_g| per genus");
  primes->add_option("--genus-to", primes_gto);
  primes->add_option("--format", format)
      ->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
      return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (ext->parsed())
      return cmd_extendable(ext_source, format, cutoff, ext_conjugates,
                            ext_seed);
    if (survey->parsed())
      return cmd_survey(survey_family, survey_from, survey_to, format, cutoff);
    if (inv->parsed()) {
      std::optional<int> filter;
      if (inv_arf >= 0) filter = inv_arf;
      return cmd_invariants(inv_source, filter, format, cutoff);
    }
    if (verify->parsed())
      return cmd_verify(verify_check, verify_gmax, verify_output);
    if (primes->parsed())
      return cmd_primes(primes_limit, primes_divisor, primes_gto, format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
