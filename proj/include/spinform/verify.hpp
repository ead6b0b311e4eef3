#pragma once

#include <functional>
#include <string>
#include <vector>

#include "spinform/gf2.hpp"

namespace spinform {

// One verification routine per statement in scope. Every check recomputes
// its claim from scratch with exact arithmetic and reports the evidence;
// genus ranges clamp to per-check caps chosen to stay under about a minute
// single-threaded.
namespace caps {
inline constexpr int cardinality = 8;
inline constexpr int bu = 6;
inline constexpr int invariant_counts = 8;
inline constexpr int zero_formulas = 6;
inline constexpr int extendability = 12;
inline constexpr int pgroup = 2;
inline constexpr int transitivity = 3;
inline constexpr int divisibility = 40;
}  // namespace caps

struct Mismatch {
  int genus = 0;
  std::string expected;
  std::string observed;
};

struct VerificationReport {
  std::string check_id;
  std::string anchor;  // the statement under test
  int genus_lo = 1;
  int genus_hi = 1;
  bool passed = false;
  std::vector<Mismatch> mismatches;
  double elapsed_ms = 0.0;

  std::string to_json() const;
};

// Injectable model-map constructors so corruption tests can feed the checks
// deliberately broken matrices.
struct ModelMaps {
  std::function<HomologyMap(int)> tau;
  std::function<HomologyMap(int)> v;
  std::function<HomologyMap(int)> wiman;
  static ModelMaps standard();
};

// census(g) equals the closed-form class sizes.
VerificationReport verify_cardinality(int g_max);
// every structure's zero count hits the two-value dichotomy and matches its
// Arf class.
VerificationReport verify_bu(int g_max);
// exactly one tau-fixed structure (constant = g mod 2) and exactly two
// v-fixed structures (all-0 and all-1).
VerificationReport verify_invariant_counts(
    int g_max, const ModelMaps& maps = ModelMaps::standard());
// constant-0 structure vanishes A_0+A_1 times, constant-1 A_0+A_3 times.
VerificationReport verify_zero_formulas(int g_max);
// wiman extendable iff g = 0,3 mod 4; v extendable iff g = 0,1,3 mod 4;
// tau and wiman have identical fixed sets.
VerificationReport verify_extendability(
    int g_max, const ModelMaps& maps = ModelMaps::standard());
// full symplectic-group sweep at one genus (1 or 2): every odd prime-power
// order element obeys the orbit-counting fixed-point bound.
VerificationReport verify_pgroup(int genus);
// the transvection group has exactly two orbits on structures, of the two
// class sizes.
VerificationReport verify_transitivity(int g_max);
// 3 | |B_g| iff g odd; 5 | |B_g| iff g = 2 mod 4; 7 never divides.
VerificationReport verify_thm13_divisibility(int g_max);

// Runs every check, clamped per cap; writes a JSON report when output_path
// is nonempty (all-or-nothing). g_max <= 0 means "use each cap".
std::vector<VerificationReport> run_all(int g_max = 0,
                                        const std::string& output_path = "");

bool all_passed(const std::vector<VerificationReport>& reports);
std::string reports_to_json(const std::vector<VerificationReport>& reports);

}  // namespace spinform
