#pragma once

#include <bit>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace spinform {

// Element of H1(Fg; Z2) in the x-basis: bit i-1 holds the coefficient of
// x_i, least significant first. Genus <= 32 stays in a single 64-bit word;
// larger vectors spill into a heap-backed word array.
class Gf2Vector {
 public:
  explicit Gf2Vector(int genus);

  // x_i for i in 1..2g.
  static Gf2Vector basis(int genus, int i);
  // Low 2g bits of mask; requires 2g <= 64.
  static Gf2Vector from_mask(int genus, uint64_t mask);
  // x_1 + ... + x_{2g}; this is how x_{2g+1} materializes.
  static Gf2Vector all_ones(int genus);

  int genus() const { return genus_; }
  int dim() const { return 2 * genus_; }

  bool bit(int pos) const;  // 0-based
  void set_bit(int pos, bool value);
  bool is_zero() const;
  int popcount() const;
  int lowest_bit() const;  // -1 when zero

  Gf2Vector& operator^=(const Gf2Vector& rhs);
  friend Gf2Vector operator^(Gf2Vector lhs, const Gf2Vector& rhs) {
    lhs ^= rhs;
    return lhs;
  }
  // addition over GF(2) is xor
  Gf2Vector& operator+=(const Gf2Vector& rhs) { return *this ^= rhs; }
  friend Gf2Vector operator+(Gf2Vector lhs, const Gf2Vector& rhs) {
    lhs ^= rhs;
    return lhs;
  }

  bool operator==(const Gf2Vector& rhs) const;
  bool operator!=(const Gf2Vector& rhs) const { return !(*this == rhs); }
  // integer order of the packed bits, high word first
  bool operator<(const Gf2Vector& rhs) const;

  uint64_t and_popcount(const Gf2Vector& rhs) const;
  unsigned parity_and(const Gf2Vector& rhs) const {
    return static_cast<unsigned>(and_popcount(rhs) & 1);
  }

  int word_count() const { return 1 + static_cast<int>(tail_.size()); }
  uint64_t word(int w) const { return w == 0 ? head_ : tail_[w - 1]; }
  void set_word(int w, uint64_t bits);
  // packed value; requires 2g <= 64
  uint64_t mask() const;

  std::string to_string() const;  // "x1+x3", "0" for the zero class
  size_t hash() const;

 private:
  void trim_last_word();
  int genus_ = 0;
  uint64_t head_ = 0;
  std::vector<uint64_t> tail_;
};

template <class Fn>
inline void for_each_set_bit(const Gf2Vector& v, Fn&& fn) {
  for (int w = 0; w < v.word_count(); ++w) {
    uint64_t bits = v.word(w);
    while (bits) {
      fn(w * 64 + std::countr_zero(bits));
      bits &= bits - 1;
    }
  }
}

// Rank of a list of vectors over GF(2).
int gf2_rank(std::vector<Gf2Vector> vecs);
bool gf2_invertible(const std::vector<Gf2Vector>& columns);
// Inverse of the square matrix whose i-th column is columns[i]; nullopt when
// singular.
std::optional<std::vector<Gf2Vector>> gf2_inverse_columns(
    const std::vector<Gf2Vector>& columns);

// Symmetric, alternating (zero diagonal), nondegenerate Gram matrix over
// GF(2). Immutable after construction.
class IntersectionForm {
 public:
  // The surface pairing in the x-basis: x_i . x_j = 1 for all i != j.
  static IntersectionForm standard(int genus);
  // Block-diagonal hyperbolic pairs (x_1,x_2), (x_3,x_4), ...
  static IntersectionForm hyperbolic(int genus);
  // Validates all invariants; throws std::invalid_argument otherwise.
  static IntersectionForm from_gram(int genus, std::vector<Gf2Vector> rows);

  int genus() const { return genus_; }
  int dim() const { return 2 * genus_; }
  const Gf2Vector& row(int i) const { return rows_[i]; }

  // u^T gram v over GF(2)
  unsigned pair(const Gf2Vector& u, const Gf2Vector& v) const;

  bool operator==(const IntersectionForm& rhs) const;
  bool operator!=(const IntersectionForm& rhs) const { return !(*this == rhs); }

 private:
  IntersectionForm(int genus, std::vector<Gf2Vector> rows)
      : genus_(genus), rows_(std::move(rows)) {}
  int genus_;
  std::vector<Gf2Vector> rows_;
};

using FormPtr = std::shared_ptr<const IntersectionForm>;

inline FormPtr share(IntersectionForm form) {
  return std::make_shared<const IntersectionForm>(std::move(form));
}

struct FormCheck {
  bool ok = true;
  int i = -1, j = -1;  // failing basis pair (1-based) when a pairing breaks
  std::string reason;
};

// Checks invertibility and pair(M x_i, M x_j) = x_i . x_j for all i < j.
FormCheck check_form_preserving(const IntersectionForm& form,
                                const std::vector<Gf2Vector>& columns);
bool is_form_preserving(const IntersectionForm& form,
                        const std::vector<Gf2Vector>& columns);

// Invertible, form-preserving action on H1(Fg; Z2). Column i is the image
// of x_{i+1}, written in the x-basis. Construction validates both
// properties and throws std::invalid_argument on failure.
class HomologyMap {
 public:
  static constexpr uint32_t kDefaultOrderCap = 1u << 16;

  HomologyMap(IntersectionForm form, std::vector<Gf2Vector> columns);
  HomologyMap(FormPtr form, std::vector<Gf2Vector> columns);

  static HomologyMap identity(IntersectionForm form);
  static HomologyMap identity(FormPtr form);

  int genus() const { return form_->genus(); }
  int dim() const { return form_->dim(); }
  const IntersectionForm& form() const { return *form_; }
  const FormPtr& form_ptr() const { return form_; }
  const Gf2Vector& column(int i) const { return cols_[i]; }
  const std::vector<Gf2Vector>& columns() const { return cols_; }

  Gf2Vector apply(const Gf2Vector& x) const;
  // this after inner: (this.compose(inner))(x) = this(inner(x))
  HomologyMap compose(const HomologyMap& inner) const;
  HomologyMap power(uint64_t k) const;
  HomologyMap inverse() const;

  // Least k >= 1 with f^k = id, or nullopt past the cap.
  std::optional<uint32_t> order(uint32_t cap = kDefaultOrderCap) const;
  bool is_identity() const;

  bool operator==(const HomologyMap& rhs) const;
  bool operator!=(const HomologyMap& rhs) const { return !(*this == rhs); }

 private:
  struct unchecked_t {};
  HomologyMap(FormPtr form, std::vector<Gf2Vector> columns, unchecked_t)
      : form_(std::move(form)), cols_(std::move(columns)) {}
  static HomologyMap unchecked(FormPtr form, std::vector<Gf2Vector> columns) {
    return HomologyMap(std::move(form), std::move(columns), unchecked_t{});
  }

  FormPtr form_;
  std::vector<Gf2Vector> cols_;
};

// x -> x + (x.u) u; an involution preserving the form.
HomologyMap transvection(FormPtr form, const Gf2Vector& u);
inline HomologyMap transvection(const IntersectionForm& form,
                                const Gf2Vector& u) {
  return transvection(share(form), u);
}

// Hyperbolic pairs (a_i, b_i): a_i . b_j = delta_ij, all other pairings 0,
// and the 2g vectors span.
struct SymplecticBasis {
  std::vector<std::pair<Gf2Vector, Gf2Vector>> pairs;
};

// GF(2) symplectic reduction. Deterministic: each round takes the
// lowest-index remaining vector and its lowest-index partner.
SymplecticBasis symplectic_basis(const IntersectionForm& form);
bool is_symplectic_basis(const IntersectionForm& form,
                         const SymplecticBasis& basis);

}  // namespace spinform
