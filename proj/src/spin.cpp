#include "spinform/spin.hpp"

#include <bit>
#include <stdexcept>

#include "spinform/errors.hpp"
#include "spinform/parallel.hpp"

namespace spinform {

namespace {

void require_within_cutoff(int genus, int cutoff) {
  if (cutoff > 31) cutoff = 31;  // 2^(2g) sweep indices must fit one word
  if (genus > cutoff) throw CutoffError(genus, cutoff);
}

// Gram rows packed into single words; valid only when 2g <= 64.
std::vector<uint64_t> packed_rows(const IntersectionForm& form) {
  std::vector<uint64_t> rows(static_cast<size_t>(form.dim()));
  for (int i = 0; i < form.dim(); ++i) rows[static_cast<size_t>(i)] = form.row(i).mask();
  return rows;
}

// Twice the pairwise intersection sum inside the support of x.
inline uint64_t ordered_pair_count(const std::vector<uint64_t>& rows,
                                   uint64_t x) {
  uint64_t total = 0;
  uint64_t bits = x;
  while (bits) {
    int k = std::countr_zero(bits);
    total += static_cast<uint64_t>(std::popcount(rows[static_cast<size_t>(k)] & x));
    bits &= bits - 1;
  }
  return total;
}

}  // namespace

SpinStructure::SpinStructure(IntersectionForm form, Gf2Vector basis_values)
    : SpinStructure(share(std::move(form)), std::move(basis_values)) {}

SpinStructure::SpinStructure(FormPtr form, Gf2Vector basis_values)
    : form_(std::move(form)), values_(std::move(basis_values)) {
  if (values_.genus() != form_->genus())
    throw std::invalid_argument("spin structure: genus mismatch (" +
                                std::to_string(values_.genus()) + " vs form " +
                                std::to_string(form_->genus()) + ")");
}

unsigned SpinStructure::evaluate(const Gf2Vector& x) const {
  if (x.genus() != genus())
    throw std::invalid_argument("evaluate: genus mismatch");
  // The symmetric gram double-counts each unordered pair in the support.
  uint64_t twice = 0;
  for_each_set_bit(x, [&](int k) { twice += form_->row(k).and_popcount(x); });
  return values_.parity_and(x) ^ static_cast<unsigned>((twice >> 1) & 1);
}

Arf SpinStructure::arf() const { return arf(symplectic_basis(*form_)); }

Arf SpinStructure::arf(const SymplecticBasis& basis) const {
  unsigned acc = 0;
  for (const auto& [a, b] : basis.pairs) acc ^= evaluate(a) & evaluate(b);
  return static_cast<Arf>(acc);
}

uint64_t SpinStructure::zero_count(int cutoff) const {
  require_within_cutoff(genus(), cutoff);
  const std::vector<uint64_t> rows = packed_rows(*form_);
  const uint64_t bmask = values_.mask();
  const uint64_t total = uint64_t{1} << dim();

  std::vector<uint64_t> zeros(static_cast<size_t>(worker_count()), 0);
  parallel_ranges(total, [&](int slot, uint64_t lo, uint64_t hi) {
    uint64_t z = 0;
    for (uint64_t x = lo; x < hi; ++x) {
      unsigned q = static_cast<unsigned>((ordered_pair_count(rows, x) >> 1) ^
                                         static_cast<uint64_t>(std::popcount(bmask & x))) &
                   1u;
      z += (q == 0);
    }
    zeros[static_cast<size_t>(slot)] = z;
  });

  uint64_t out = 0;
  for (uint64_t z : zeros) out += z;
  return out;
}

std::string SpinStructure::hex_id() const {
  static const char* digits = "0123456789abcdef";
  std::string hex;
  int nibbles = (values_.dim() + 3) / 4;
  for (int n = nibbles - 1; n >= 0; --n) {
    unsigned nib = static_cast<unsigned>(values_.word(n / 16) >> (4 * (n % 16))) & 0xF;
    if (hex.empty() && nib == 0 && n != 0) continue;
    hex += digits[nib];
  }
  return "q:" + hex;
}

bool SpinStructure::operator==(const SpinStructure& rhs) const {
  return form() == rhs.form() && values_ == rhs.values_;
}

unsigned pairwise_intersection_parity(const IntersectionForm& form,
                                      const Gf2Vector& v) {
  uint64_t twice = 0;
  for_each_set_bit(v, [&](int k) { twice += form.row(k).and_popcount(v); });
  return static_cast<unsigned>((twice >> 1) & 1);
}

AffineEval affine_eval_at(const IntersectionForm& form, const Gf2Vector& v) {
  if (form.dim() > 64)
    throw std::invalid_argument("affine_eval_at requires 2g <= 64");
  if (v.genus() != form.genus())
    throw std::invalid_argument("affine_eval_at: genus mismatch");
  return AffineEval{v.mask(), pairwise_intersection_parity(form, v)};
}

Census census(const IntersectionForm& form, int cutoff) {
  require_within_cutoff(form.genus(), cutoff);
  const SymplecticBasis basis = symplectic_basis(form);
  std::vector<std::pair<AffineEval, AffineEval>> evals;
  evals.reserve(basis.pairs.size());
  for (const auto& [a, b] : basis.pairs)
    evals.emplace_back(affine_eval_at(form, a), affine_eval_at(form, b));

  const uint64_t total = uint64_t{1} << form.dim();
  std::vector<uint64_t> unbounded(static_cast<size_t>(worker_count()), 0);
  parallel_ranges(total, [&](int slot, uint64_t lo, uint64_t hi) {
    uint64_t u = 0;
    for (uint64_t b = lo; b < hi; ++b) {
      unsigned arf = 0;
      for (const auto& [ea, eb] : evals) arf ^= ea(b) & eb(b);
      u += arf;
    }
    unbounded[static_cast<size_t>(slot)] = u;
  });

  Census out;
  for (uint64_t u : unbounded) out.unbounded += u;
  out.bounded = total - out.unbounded;
  return out;
}

Census census(int genus, int cutoff) {
  return census(IntersectionForm::standard(genus), cutoff);
}

void enumerate_structures(const IntersectionForm& form,
                          const std::function<void(const SpinStructure&)>& fn,
                          int cutoff) {
  require_within_cutoff(form.genus(), cutoff);
  FormPtr shared = share(form);
  const uint64_t total = uint64_t{1} << form.dim();
  for (uint64_t b = 0; b < total; ++b)
    fn(SpinStructure(shared, Gf2Vector::from_mask(form.genus(), b)));
}

}  // namespace spinform
