#include "spinform/verify.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>

#include <json.hpp>

#include "spinform/action.hpp"
#include "spinform/errors.hpp"
#include "spinform/families.hpp"
#include "spinform/number_theory.hpp"
#include "spinform/spin.hpp"

namespace spinform {

namespace {

int clamp_cap(int g_max, int cap) {
  if (g_max <= 0) return cap;
  return std::min(g_max, cap);
}

template <class Body>
VerificationReport timed_check(std::string id, std::string anchor, int lo,
                               int hi, Body&& body) {
  VerificationReport report;
  report.check_id = std::move(id);
  report.anchor = std::move(anchor);
  report.genus_lo = lo;
  report.genus_hi = hi;
  auto start = std::chrono::steady_clock::now();
  body(report.mismatches);
  auto stop = std::chrono::steady_clock::now();
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(stop - start).count();
  report.passed = report.mismatches.empty();
  return report;
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

// Basis-value lists of a fixed set, both Arf classes merged, ascending.
std::vector<Gf2Vector> fixed_values(const FixedPointReport& report) {
  std::vector<Gf2Vector> out;
  for (const auto& q : report.fixed_bounded) out.push_back(q.basis_values());
  for (const auto& q : report.fixed_unbounded) out.push_back(q.basis_values());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

ModelMaps ModelMaps::standard() {
  ModelMaps maps;
  maps.tau = [](int g) { return families::tau(g); };
  maps.v = [](int g) { return families::v(g); };
  maps.wiman = [](int g) { return families::wiman(g); };
  return maps;
}

VerificationReport verify_cardinality(int g_max) {
  int hi = clamp_cap(g_max, caps::cardinality);
  return timed_check(
      "cardinality",
      "|B_g| = 2^(2g-1) + 2^(g-1) and |U_g| = 2^(2g-1) - 2^(g-1)", 1, hi,
      [&](std::vector<Mismatch>& mismatches) {
        for (int g = 1; g <= hi; ++g) {
          Census c = census(g);
          u128 bg = bg_card(g), ug = ug_card(g);
          if (c.bounded != bg || c.unbounded != ug) {
            mismatches.push_back(
                {g, "B=" + to_string(bg) + " U=" + to_string(ug),
                 "B=" + std::to_string(c.bounded) +
                     " U=" + std::to_string(c.unbounded)});
          }
        }
      });
}

VerificationReport verify_bu(int g_max) {
  int hi = clamp_cap(g_max, caps::bu);
  return timed_check(
      "bu",
      "q is bounded iff it vanishes on exactly 2^(2g-1)+2^(g-1) classes, "
      "unbounded iff on 2^(2g-1)-2^(g-1)",
      1, hi, [&](std::vector<Mismatch>& mismatches) {
        for (int g = 1; g <= hi; ++g) {
          IntersectionForm form = IntersectionForm::standard(g);
          SymplecticBasis basis = symplectic_basis(form);
          uint64_t bg = static_cast<uint64_t>(bg_card(g));
          uint64_t ug = static_cast<uint64_t>(ug_card(g));
          enumerate_structures(form, [&](const SpinStructure& q) {
            uint64_t zeros = q.zero_count();
            uint64_t want = q.arf(basis) == Arf::bounded ? bg : ug;
            if (zeros != want) {
              mismatches.push_back({g, q.hex_id() + " zeros=" + std::to_string(want),
                                    "zeros=" + std::to_string(zeros)});
            }
          });
        }
      });
}

VerificationReport verify_invariant_counts(int g_max, const ModelMaps& maps) {
  int hi = clamp_cap(g_max, caps::invariant_counts);
  return timed_check(
      "invariant_counts",
      "exactly one tau-invariant structure, constant g mod 2 on the basis; "
      "exactly two v-invariant structures, the all-0 and all-1 patterns",
      1, hi, [&](std::vector<Mismatch>& mismatches) {
        for (int g = 1; g <= hi; ++g) {
          try {
            FixedPointReport tf = invariant_structures(maps.tau(g));
            size_t tau_count = tf.fixed_bounded.size() + tf.fixed_unbounded.size();
            if (tau_count != 1) {
              mismatches.push_back({g, "1 tau-fixed structure",
                                    std::to_string(tau_count) + " tau-fixed"});
            } else {
              Gf2Vector expected = (g % 2 == 1) ? Gf2Vector::all_ones(g)
                                                : Gf2Vector(g);
              Gf2Vector got = fixed_values(tf).front();
              if (got != expected)
                mismatches.push_back({g, "tau-fixed values constant " +
                                             std::to_string(g % 2),
                                      "values " + got.to_string()});
            }

            FixedPointReport vf = invariant_structures(maps.v(g));
            std::vector<Gf2Vector> got = fixed_values(vf);
            std::vector<Gf2Vector> expected{Gf2Vector(g),
                                            Gf2Vector::all_ones(g)};
            if (got != expected)
              mismatches.push_back({g, "v-fixed = {all-0, all-1}",
                                    std::to_string(got.size()) + " v-fixed"});
          } catch (const std::exception& e) {
            mismatches.push_back({g, "valid model maps", e.what()});
          }
        }
      });
}

VerificationReport verify_zero_formulas(int g_max) {
  int hi = clamp_cap(g_max, caps::zero_formulas);
  return timed_check(
      "zero_formulas",
      "the constant-0 orbit structure vanishes on A_0+A_1 classes, the "
      "constant-1 on A_0+A_3",
      1, hi, [&](std::vector<Mismatch>& mismatches) {
        for (int g = 1; g <= hi; ++g) {
          FormPtr form = share(IntersectionForm::standard(g));
          for (unsigned constant = 0; constant <= 1; ++constant) {
            Gf2Vector values =
                constant ? Gf2Vector::all_ones(g) : Gf2Vector(g);
            uint64_t zeros = SpinStructure(form, values).zero_count();
            u128 predicted = zero_count_prediction(g, constant);
            if (u128{zeros} != predicted) {
              mismatches.push_back(
                  {g, "constant-" + std::to_string(constant) + " zeros = " +
                          to_string(predicted),
                   "zeros = " + std::to_string(zeros)});
            }
          }
        }
      });
}

VerificationReport verify_extendability(int g_max, const ModelMaps& maps) {
  int hi = clamp_cap(g_max, caps::extendability);
  return timed_check(
      "extendability",
      "wiman and tau admit a bounded invariant structure iff g = 0,3 mod 4; "
      "v iff g = 0,1,3 mod 4; tau and wiman fix the same structures",
      1, hi, [&](std::vector<Mismatch>& mismatches) {
        for (int g = 1; g <= hi; ++g) {
          try {
            bool expect_w = (g % 4 == 0) || (g % 4 == 3);
            bool expect_v = (g % 4 != 2);

            HomologyMap w = maps.wiman(g);
            HomologyMap t = maps.tau(g);
            bool got_w = is_extendable(w).extendable;
            bool got_t = is_extendable(t).extendable;
            bool got_v = is_extendable(maps.v(g)).extendable;
            if (got_w != expect_w)
              mismatches.push_back({g, "wiman extendable " + bool_str(expect_w),
                                    bool_str(got_w)});
            if (got_t != expect_w)
              mismatches.push_back({g, "tau extendable " + bool_str(expect_w),
                                    bool_str(got_t)});
            if (got_v != expect_v)
              mismatches.push_back({g, "v extendable " + bool_str(expect_v),
                                    bool_str(got_v)});

            if (g <= 8 &&
                fixed_values(invariant_structures(w)) !=
                    fixed_values(invariant_structures(t)))
              mismatches.push_back(
                  {g, "tau and wiman fixed sets identical", "differ"});
          } catch (const std::exception& e) {
            mismatches.push_back({g, "valid model maps", e.what()});
          }
        }
      });
}

VerificationReport verify_pgroup(int genus) {
  if (genus != 1 && genus != 2)
    throw std::invalid_argument("pgroup sweep runs at genus 1 or 2");
  return timed_check(
      "pgroup_g" + std::to_string(genus),
      "an element of odd prime-power order p^m fixes a structure in every "
      "Arf class of size coprime to p; fixed counts match class sizes mod p",
      genus, genus, [&](std::vector<Mismatch>& mismatches) {
        const int g = genus;
        IntersectionForm form = IntersectionForm::standard(g);
        FormPtr shared = share(form);
        std::vector<uint64_t> keys = symplectic_group_keys(form);

        const uint64_t expected_size = (g == 1) ? 6 : 720;
        if (keys.size() != expected_size) {
          mismatches.push_back({g, "group size " + std::to_string(expected_size),
                                std::to_string(keys.size())});
          return;
        }

        const uint64_t bg = static_cast<uint64_t>(bg_card(g));
        const uint64_t ug = static_cast<uint64_t>(ug_card(g));
        for (uint64_t key : keys) {
          HomologyMap f = map_from_key(shared, key);
          uint32_t n = f.order().value();
          // odd prime powers only
          uint64_t p = 0;
          for (uint64_t d = 3; d <= n; d += 2)
            if (n % d == 0) {
              p = d;
              break;
            }
          if (n == 1 || n % 2 == 0 || p == 0) continue;
          uint64_t q = n;
          while (q % p == 0) q /= p;
          if (q != 1) continue;

          FixedPointReport fixed = invariant_structures(f);
          uint64_t fb = fixed.fixed_bounded.size();
          uint64_t fu = fixed.fixed_unbounded.size();
          std::string elem = "element 0x" + [&] {
            char buf[20];
            std::snprintf(buf, sizeof buf, "%llx",
                          static_cast<unsigned long long>(key));
            return std::string(buf);
          }();
          if (fb % p != bg % p)
            mismatches.push_back({g, elem + " fixed bounded = " +
                                         std::to_string(bg % p) + " mod " +
                                         std::to_string(p),
                                  std::to_string(fb)});
          if (fu % p != ug % p)
            mismatches.push_back({g, elem + " fixed unbounded = " +
                                         std::to_string(ug % p) + " mod " +
                                         std::to_string(p),
                                  std::to_string(fu)});
          if (bg % p != 0 && fb == 0)
            mismatches.push_back(
                {g, elem + " has a fixed bounded structure", "none"});
          if (ug % p != 0 && fu == 0)
            mismatches.push_back(
                {g, elem + " has a fixed unbounded structure", "none"});
        }
      });
}

VerificationReport verify_transitivity(int g_max) {
  int hi = clamp_cap(g_max, caps::transitivity);
  return timed_check(
      "transitivity",
      "the transvection group acts transitively on each Arf class", 1, hi,
      [&](std::vector<Mismatch>& mismatches) {
        for (int g = 1; g <= hi; ++g) {
          std::vector<SpinOrbit> parts =
              transvection_spin_orbits(IntersectionForm::standard(g));
          uint64_t bg = static_cast<uint64_t>(bg_card(g));
          uint64_t ug = static_cast<uint64_t>(ug_card(g));
          bool ok = parts.size() == 2 &&
                    parts[0].arf_class != parts[1].arf_class;
          for (const auto& o : parts)
            ok = ok && o.size == (o.arf_class == Arf::bounded ? bg : ug);
          if (!ok) {
            std::string got;
            for (const auto& o : parts) {
              if (!got.empty()) got += ", ";
              got += std::to_string(o.size) +
                     (o.arf_class == Arf::bounded ? "B" : "U");
            }
            mismatches.push_back({g, "orbits " + std::to_string(bg) + "B, " +
                                         std::to_string(ug) + "U",
                                  "orbits " + got});
          }
        }
      });
}

VerificationReport verify_thm13_divisibility(int g_max) {
  int hi = clamp_cap(g_max, caps::divisibility);
  return timed_check(
      "divisibility",
      "3 | |B_g| iff g odd; 5 | |B_g| iff g = 2 mod 4; 7 never divides |B_g|",
      1, hi, [&](std::vector<Mismatch>& mismatches) {
        for (int g = 1; g <= hi; ++g) {
          uint64_t ug = static_cast<uint64_t>(g);
          bool d3 = divides_bg(3, ug);
          bool d5 = divides_bg(5, ug);
          bool d7 = divides_bg(7, ug);
          if (d3 != (g % 2 == 1))
            mismatches.push_back(
                {g, "3 divides iff g odd", "divides=" + bool_str(d3)});
          if (d5 != (g % 4 == 2))
            mismatches.push_back(
                {g, "5 divides iff g = 2 mod 4", "divides=" + bool_str(d5)});
          if (d7)
            mismatches.push_back({g, "7 never divides", "divides=true"});
        }
      });
}

std::string VerificationReport::to_json() const {
  nlohmann::json j;
  j["check_id"] = check_id;
  j["anchor"] = anchor;
  j["genus_range"] = {genus_lo, genus_hi};
  j["status"] = passed ? "pass" : "fail";
  nlohmann::json ms = nlohmann::json::array();
  for (const auto& m : mismatches)
    ms.push_back({{"genus", m.genus},
                  {"expected", m.expected},
                  {"observed", m.observed}});
  j["mismatches"] = ms;
  j["elapsed_ms"] = elapsed_ms;
  return j.dump();
}

std::string reports_to_json(const std::vector<VerificationReport>& reports) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& r : reports)
    list.push_back(nlohmann::json::parse(r.to_json()));
  return list.dump(2) + "\n";
}

bool all_passed(const std::vector<VerificationReport>& reports) {
  for (const auto& r : reports)
    if (!r.passed) return false;
  return true;
}

std::vector<VerificationReport> run_all(int g_max,
                                        const std::string& output_path) {
  std::vector<VerificationReport> reports;
  reports.push_back(verify_cardinality(g_max));
  reports.push_back(verify_bu(g_max));
  reports.push_back(verify_invariant_counts(g_max));
  reports.push_back(verify_zero_formulas(g_max));
  reports.push_back(verify_extendability(g_max));
  reports.push_back(verify_pgroup(1));
  if (g_max <= 0 || g_max >= 2) reports.push_back(verify_pgroup(2));
  reports.push_back(verify_transitivity(g_max));
  reports.push_back(verify_thm13_divisibility(g_max));

  if (!output_path.empty()) {
    std::string payload = reports_to_json(reports);
    std::ofstream out(output_path, std::ios::trunc);
    if (!out) throw IoError(output_path, "cannot open for writing");
    out << payload;
    out.close();
    if (!out) throw IoError(output_path, "write failed");
  }
  return reports;
}

}  // namespace spinform
