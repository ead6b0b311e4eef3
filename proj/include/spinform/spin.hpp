#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "spinform/gf2.hpp"

namespace spinform {

// Arf class of a quadratic refinement: 0 = bounded (B_g), 1 = unbounded
// (U_g).
enum class Arf : unsigned { bounded = 0, unbounded = 1 };

inline unsigned arf_bit(Arf a) { return static_cast<unsigned>(a); }

// Default cap for full 2^(2g) sweeps (2^28 evaluations at the cap).
inline constexpr int kEnumerationCutoff = 14;

// Quadratic refinement q of an intersection form, determined by its values
// on the basis: q(u+v) = q(u) + q(v) + u.v.
class SpinStructure {
 public:
  SpinStructure(IntersectionForm form, Gf2Vector basis_values);
  SpinStructure(FormPtr form, Gf2Vector basis_values);

  int genus() const { return form_->genus(); }
  int dim() const { return form_->dim(); }
  const IntersectionForm& form() const { return *form_; }
  const FormPtr& form_ptr() const { return form_; }
  const Gf2Vector& basis_values() const { return values_; }
  unsigned basis_value(int i) const { return values_.bit(i) ? 1u : 0u; }

  // Sum of basis values over the support plus all pairwise intersections
  // inside the support.
  unsigned evaluate(const Gf2Vector& x) const;

  // Product formula over a symplectic basis; O(g) once the basis is known.
  Arf arf() const;
  Arf arf(const SymplecticBasis& basis) const;

  // |{x : q(x) = 0}| over all 2^(2g) classes. Full sweep, so capped.
  uint64_t zero_count(int cutoff = kEnumerationCutoff) const;

  // "q:" + lowercase hex of the packed basis values, LSB = q(x_1).
  std::string hex_id() const;

  bool operator==(const SpinStructure& rhs) const;
  bool operator!=(const SpinStructure& rhs) const { return !(*this == rhs); }

 private:
  FormPtr form_;
  Gf2Vector values_;
};

struct Census {
  uint64_t bounded = 0;
  uint64_t unbounded = 0;
  bool operator==(const Census&) const = default;
};

// Counts all 2^(2g) structures by Arf class.
Census census(const IntersectionForm& form, int cutoff = kEnumerationCutoff);
Census census(int genus, int cutoff = kEnumerationCutoff);

// Visits every structure once, in increasing basis-value integer order.
void enumerate_structures(const IntersectionForm& form,
                          const std::function<void(const SpinStructure&)>& fn,
                          int cutoff = kEnumerationCutoff);

// q evaluated at a fixed class v, as an affine functional of the packed
// basis values b: q(v) = parity(b & mask) ^ offset. Requires 2g <= 64.
struct AffineEval {
  uint64_t mask = 0;
  unsigned offset = 0;
  unsigned operator()(uint64_t b) const {
    return (static_cast<unsigned>(std::popcount(b & mask)) ^ offset) & 1u;
  }
};

AffineEval affine_eval_at(const IntersectionForm& form, const Gf2Vector& v);

// Sum of all pairwise intersections inside the support of v; equals the
// evaluation of the all-zero structure.
unsigned pairwise_intersection_parity(const IntersectionForm& form,
                                      const Gf2Vector& v);

}  // namespace spinform
