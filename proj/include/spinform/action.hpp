#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spinform/gf2.hpp"
#include "spinform/spin.hpp"

namespace spinform {

// (f*q)(x) = q(f(x)). Contravariant: (f.compose(h))* = h* after f*.
SpinStructure pullback(const HomologyMap& f, const SpinStructure& q);
bool is_invariant(const HomologyMap& f, const SpinStructure& q);

struct FixedPointReport {
  int genus = 0;
  uint32_t map_order = 0;
  std::vector<SpinStructure> fixed_bounded;
  std::vector<SpinStructure> fixed_unbounded;
  bool extendable() const { return !fixed_bounded.empty(); }
  std::string to_json() const;
};

// Exact fixed set of the pullback action, partitioned by Arf class, each
// list in increasing basis-value order. Full 2^(2g) scan, so capped.
FixedPointReport invariant_structures(const HomologyMap& f,
                                      int cutoff = kEnumerationCutoff);

struct ExtendabilityResult {
  bool extendable = false;
  std::optional<SpinStructure> witness;  // least fixed bounded structure
};

// A bounded invariant structure exists iff the map extends over the
// 4-sphere for a trivial embedding.
ExtendabilityResult is_extendable(const HomologyMap& f,
                                  int cutoff = kEnumerationCutoff);

struct OrbitRecord {
  SpinStructure representative;  // least element of the orbit
  uint64_t size = 0;
  uint64_t stabilizer_order = 0;  // size * stabilizer_order = |<f>|
};

// Orbit decomposition of one Arf class under the cyclic group generated by
// f. Records are sorted by representative.
std::vector<OrbitRecord> orbits(const HomologyMap& f, Arf arf_class,
                                int cutoff = kEnumerationCutoff);

enum class Guarantee { guaranteed, not_guaranteed };

struct PgroupFixedPoint {
  Guarantee guarantee = Guarantee::not_guaranteed;
  std::vector<SpinStructure> fixed;  // actual fixed set in the chosen class
};

// Orbit-counting guarantee for a map of odd prime-power order p^m: when p
// does not divide the class cardinality, some orbit is a singleton. The
// actual fixed set is computed either way; a guaranteed-but-empty outcome
// is impossible and throws.
PgroupFixedPoint pgroup_fixed_point_guarantee(const HomologyMap& f, uint64_t p,
                                              uint32_t m, Arf arf_class,
                                              int cutoff = kEnumerationCutoff);

// h^-1 f h
HomologyMap conjugate(const HomologyMap& f, const HomologyMap& h);

// Solution space of pullback(f, q) = q over the basis values, as an affine
// subspace. Exact at any genus; the scan above is its small-genus oracle.
struct InvariantSpace {
  explicit InvariantSpace(int genus) : particular(genus) {}
  bool empty = true;
  Gf2Vector particular;           // valid when !empty
  std::vector<Gf2Vector> basis;   // fixed count = 2^basis.size()
  int dimension() const { return empty ? -1 : static_cast<int>(basis.size()); }
  uint64_t count() const;         // throws once 2^dim leaves 64 bits
};
InvariantSpace invariant_value_space(const HomologyMap& f);

// All transvections T_u, u nonzero. 2^(2g) - 1 maps, ascending by u.
std::vector<HomologyMap> transvection_generators(const FormPtr& form);

struct SpinOrbit {
  SpinStructure representative;
  uint64_t size = 0;
  Arf arf_class = Arf::bounded;
};

// Orbit partition of all spin structures under the group generated by every
// transvection. Sorted by representative.
std::vector<SpinOrbit> transvection_spin_orbits(const IntersectionForm& form,
                                                int cutoff = 6);

// Whole form-preserving group by breadth-first closure of the transvection
// generators. Elements are packed column keys (byte j = column j), genus
// <= 3 (|Sp(6,2)| = 1451520). Sorted ascending.
std::vector<uint64_t> symplectic_group_keys(const IntersectionForm& form);
uint64_t pack_columns(const HomologyMap& f);
HomologyMap map_from_key(FormPtr form, uint64_t key);

// Deterministic pseudo-random product of transvections; `count` defaults to
// 3 * 2g draws.
HomologyMap random_symplectic(const FormPtr& form, uint64_t seed, int count = 0);

}  // namespace spinform
