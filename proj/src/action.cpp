#include "spinform/action.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

#include "spinform/errors.hpp"
#include "spinform/number_theory.hpp"
#include "spinform/parallel.hpp"

namespace spinform {

namespace {

void require_same_setting(const HomologyMap& f, const SpinStructure& q) {
  if (f.genus() != q.genus())
    throw std::invalid_argument("pullback: genus mismatch");
  if (f.form() != q.form())
    throw std::invalid_argument("pullback: structures live over a different form");
}

int clamp_cutoff(int cutoff) { return std::min(cutoff, 31); }

void require_within_cutoff(int genus, int cutoff) {
  if (genus > clamp_cutoff(cutoff)) throw CutoffError(genus, clamp_cutoff(cutoff));
}

// The pullback action on packed basis values: bit i of the image is the
// affine functional q -> q(f(x_i)).
struct PullbackKernel {
  int dim = 0;
  std::vector<AffineEval> cols;

  static PullbackKernel from(const HomologyMap& f) {
    PullbackKernel k;
    k.dim = f.dim();
    k.cols.reserve(static_cast<size_t>(k.dim));
    for (int i = 0; i < k.dim; ++i)
      k.cols.push_back(affine_eval_at(f.form(), f.column(i)));
    return k;
  }

  uint64_t operator()(uint64_t b) const {
    uint64_t out = 0;
    for (int i = 0; i < dim; ++i)
      out |= static_cast<uint64_t>(cols[static_cast<size_t>(i)](b)) << i;
    return out;
  }

  bool fixes(uint64_t b) const {
    for (int i = 0; i < dim; ++i)
      if (cols[static_cast<size_t>(i)](b) != ((b >> i) & 1)) return false;
    return true;
  }
};

// Arf of packed basis values via affine evaluations over a symplectic basis.
struct ArfKernel {
  std::vector<std::pair<AffineEval, AffineEval>> pairs;

  static ArfKernel from(const IntersectionForm& form) {
    ArfKernel k;
    SymplecticBasis basis = symplectic_basis(form);
    k.pairs.reserve(basis.pairs.size());
    for (const auto& [a, b] : basis.pairs)
      k.pairs.emplace_back(affine_eval_at(form, a), affine_eval_at(form, b));
    return k;
  }

  unsigned operator()(uint64_t b) const {
    unsigned acc = 0;
    for (const auto& [ea, eb] : pairs) acc ^= ea(b) & eb(b);
    return acc;
  }
};

uint32_t required_order(const HomologyMap& f) {
  auto n = f.order();
  if (!n)
    throw std::invalid_argument("map order exceeds the search cap");
  return *n;
}

std::vector<uint64_t> scan_fixed_masks(const PullbackKernel& kernel) {
  const uint64_t total = uint64_t{1} << kernel.dim;
  std::vector<std::vector<uint64_t>> found(
      static_cast<size_t>(worker_count()));
  parallel_ranges(total, [&](int slot, uint64_t lo, uint64_t hi) {
    auto& out = found[static_cast<size_t>(slot)];
    for (uint64_t b = lo; b < hi; ++b)
      if (kernel.fixes(b)) out.push_back(b);
  });
  std::vector<uint64_t> merged;
  for (auto& part : found)
    merged.insert(merged.end(), part.begin(), part.end());
  return merged;  // ascending: slots cover ascending ranges
}

uint64_t checked_pow(uint64_t p, uint32_t m) {
  uint64_t out = 1;
  for (uint32_t i = 0; i < m; ++i) {
    if (out > UINT64_MAX / p) throw std::invalid_argument("p^m overflows");
    out *= p;
  }
  return out;
}

uint64_t key_mul(uint64_t a, uint64_t b, int dim) {
  // column j of (a . b) applies a to column j of b
  uint64_t out = 0;
  for (int j = 0; j < dim; ++j) {
    uint64_t bj = (b >> (8 * j)) & 0xFF;
    uint64_t cj = 0;
    while (bj) {
      int k = std::countr_zero(bj);
      cj ^= (a >> (8 * k)) & 0xFF;
      bj &= bj - 1;
    }
    out |= cj << (8 * j);
  }
  return out;
}

}  // namespace

SpinStructure pullback(const HomologyMap& f, const SpinStructure& q) {
  require_same_setting(f, q);
  Gf2Vector values(q.genus());
  for (int i = 0; i < q.dim(); ++i)
    values.set_bit(i, q.evaluate(f.column(i)) != 0);
  return SpinStructure(q.form_ptr(), std::move(values));
}

bool is_invariant(const HomologyMap& f, const SpinStructure& q) {
  require_same_setting(f, q);
  for (int i = 0; i < q.dim(); ++i)
    if (q.evaluate(f.column(i)) != q.basis_value(i)) return false;
  return true;
}

FixedPointReport invariant_structures(const HomologyMap& f, int cutoff) {
  require_within_cutoff(f.genus(), cutoff);
  FixedPointReport report;
  report.genus = f.genus();
  report.map_order = required_order(f);

  const PullbackKernel kernel = PullbackKernel::from(f);
  const ArfKernel arf = ArfKernel::from(f.form());
  for (uint64_t b : scan_fixed_masks(kernel)) {
    SpinStructure q(f.form_ptr(), Gf2Vector::from_mask(f.genus(), b));
    (arf(b) ? report.fixed_unbounded : report.fixed_bounded).push_back(std::move(q));
  }
  return report;
}

ExtendabilityResult is_extendable(const HomologyMap& f, int cutoff) {
  FixedPointReport report = invariant_structures(f, cutoff);
  ExtendabilityResult out;
  out.extendable = report.extendable();
  if (out.extendable) out.witness = report.fixed_bounded.front();
  return out;
}

std::vector<OrbitRecord> orbits(const HomologyMap& f, Arf arf_class,
                                int cutoff) {
  require_within_cutoff(f.genus(), cutoff);
  const uint32_t n = required_order(f);
  const PullbackKernel kernel = PullbackKernel::from(f);
  const ArfKernel arf = ArfKernel::from(f.form());

  const uint64_t total = uint64_t{1} << f.dim();
  std::vector<uint64_t> visited((total + 63) / 64, 0);
  auto seen = [&](uint64_t b) {
    return (visited[b >> 6] >> (b & 63)) & 1;
  };
  auto mark = [&](uint64_t b) { visited[b >> 6] |= uint64_t{1} << (b & 63); };

  std::vector<OrbitRecord> out;
  for (uint64_t b = 0; b < total; ++b) {
    if (arf(b) != arf_bit(arf_class) || seen(b)) continue;
    uint64_t size = 0;
    uint64_t cur = b;
    do {
      mark(cur);
      ++size;
      cur = kernel(cur);
    } while (cur != b);
    if (n % size != 0)
      throw std::logic_error("orbit size does not divide the map order");
    out.push_back(OrbitRecord{
        SpinStructure(f.form_ptr(), Gf2Vector::from_mask(f.genus(), b)), size,
        n / size});
  }
  return out;
}

PgroupFixedPoint pgroup_fixed_point_guarantee(const HomologyMap& f, uint64_t p,
                                              uint32_t m, Arf arf_class,
                                              int cutoff) {
  if (!is_odd_prime(p))
    throw std::invalid_argument(std::to_string(p) + " is not an odd prime");
  if (m < 1) throw std::invalid_argument("exponent m must be >= 1");
  const uint32_t n = required_order(f);
  if (static_cast<uint64_t>(n) != checked_pow(p, m))
    throw std::invalid_argument(
        "map order " + std::to_string(n) + " is not " + std::to_string(p) +
        "^" + std::to_string(m));

  const uint64_t g = static_cast<uint64_t>(f.genus());
  const bool divides = (arf_class == Arf::bounded) ? divides_bg(p, g)
                                                   : divides_ug(p, g);

  PgroupFixedPoint out;
  out.guarantee = divides ? Guarantee::not_guaranteed : Guarantee::guaranteed;
  FixedPointReport fixed = invariant_structures(f, cutoff);
  out.fixed = (arf_class == Arf::bounded) ? std::move(fixed.fixed_bounded)
                                          : std::move(fixed.fixed_unbounded);
  if (out.guarantee == Guarantee::guaranteed && out.fixed.empty())
    throw std::logic_error(
        "orbit counting guarantees a fixed structure but the scan found none");
  return out;
}

HomologyMap conjugate(const HomologyMap& f, const HomologyMap& h) {
  if (f.form() != h.form())
    throw std::invalid_argument("conjugate: maps live over different forms");
  return h.inverse().compose(f).compose(h);
}

uint64_t InvariantSpace::count() const {
  if (empty) return 0;
  if (basis.size() >= 64)
    throw std::overflow_error("fixed-space size exceeds 64 bits");
  return uint64_t{1} << basis.size();
}

InvariantSpace invariant_value_space(const HomologyMap& f) {
  const int d = f.dim();
  const int g = f.genus();

  // Row i: parity(b & (col_i ^ e_i)) = t_i, with t_i the pairwise term of
  // column i.
  std::vector<Gf2Vector> rows;
  std::vector<unsigned> rhs;
  rows.reserve(static_cast<size_t>(d));
  rhs.reserve(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) {
    rows.push_back(f.column(i) + Gf2Vector::basis(g, i + 1));
    rhs.push_back(pairwise_intersection_parity(f.form(), f.column(i)));
  }

  // Gauss-Jordan with pivot columns in ascending order.
  std::vector<std::pair<int, int>> pivots;  // (column, row)
  int rank = 0;
  for (int p = 0; p < d && rank < d; ++p) {
    int pivot = -1;
    for (int r = rank; r < d; ++r)
      if (rows[static_cast<size_t>(r)].bit(p)) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[static_cast<size_t>(rank)], rows[static_cast<size_t>(pivot)]);
    std::swap(rhs[static_cast<size_t>(rank)], rhs[static_cast<size_t>(pivot)]);
    for (int r = 0; r < d; ++r) {
      if (r != rank && rows[static_cast<size_t>(r)].bit(p)) {
        rows[static_cast<size_t>(r)] ^= rows[static_cast<size_t>(rank)];
        rhs[static_cast<size_t>(r)] ^= rhs[static_cast<size_t>(rank)];
      }
    }
    pivots.emplace_back(p, rank);
    ++rank;
  }

  InvariantSpace out(g);
  for (int r = rank; r < d; ++r)
    if (rhs[static_cast<size_t>(r)]) return out;  // inconsistent: empty
  out.empty = false;

  std::vector<bool> is_pivot_col(static_cast<size_t>(d), false);
  for (const auto& [col, row] : pivots) {
    is_pivot_col[static_cast<size_t>(col)] = true;
    out.particular.set_bit(col, rhs[static_cast<size_t>(row)] != 0);
  }
  for (int j = 0; j < d; ++j) {
    if (is_pivot_col[static_cast<size_t>(j)]) continue;
    Gf2Vector h(g);
    h.set_bit(j, true);
    for (const auto& [col, row] : pivots)
      if (rows[static_cast<size_t>(row)].bit(j)) h.set_bit(col, true);
    out.basis.push_back(std::move(h));
  }
  return out;
}

std::vector<HomologyMap> transvection_generators(const FormPtr& form) {
  const int g = form->genus();
  if (g > 8) throw CutoffError(g, 8);
  const uint64_t total = uint64_t{1} << form->dim();
  std::vector<HomologyMap> out;
  out.reserve(static_cast<size_t>(total - 1));
  for (uint64_t u = 1; u < total; ++u)
    out.push_back(transvection(form, Gf2Vector::from_mask(g, u)));
  return out;
}

std::vector<SpinOrbit> transvection_spin_orbits(const IntersectionForm& form,
                                                int cutoff) {
  const int g = form.genus();
  require_within_cutoff(g, cutoff);
  FormPtr shared = share(form);

  std::vector<PullbackKernel> kernels;
  for (const auto& t : transvection_generators(shared))
    kernels.push_back(PullbackKernel::from(t));
  const ArfKernel arf = ArfKernel::from(form);

  const uint64_t total = uint64_t{1} << form.dim();
  std::vector<bool> visited(total, false);
  std::vector<SpinOrbit> out;
  std::vector<uint64_t> stack;
  for (uint64_t b = 0; b < total; ++b) {
    if (visited[b]) continue;
    uint64_t size = 0;
    stack.push_back(b);
    visited[b] = true;
    while (!stack.empty()) {
      uint64_t cur = stack.back();
      stack.pop_back();
      ++size;
      for (const auto& k : kernels) {
        uint64_t next = k(cur);
        if (!visited[next]) {
          visited[next] = true;
          stack.push_back(next);
        }
      }
    }
    out.push_back(SpinOrbit{SpinStructure(shared, Gf2Vector::from_mask(g, b)),
                            size, static_cast<Arf>(arf(b))});
  }
  return out;
}

uint64_t pack_columns(const HomologyMap& f) {
  if (f.dim() > 8)
    throw std::invalid_argument("packed keys require 2g <= 8");
  uint64_t key = 0;
  for (int j = 0; j < f.dim(); ++j)
    key |= f.column(j).mask() << (8 * j);
  return key;
}

HomologyMap map_from_key(FormPtr form, uint64_t key) {
  const int d = form->dim();
  if (d > 8) throw std::invalid_argument("packed keys require 2g <= 8");
  std::vector<Gf2Vector> cols;
  cols.reserve(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j)
    cols.push_back(
        Gf2Vector::from_mask(form->genus(), (key >> (8 * j)) & 0xFF));
  return HomologyMap(std::move(form), std::move(cols));
}

std::vector<uint64_t> symplectic_group_keys(const IntersectionForm& form) {
  const int g = form.genus();
  if (g > 3) throw CutoffError(g, 3);
  const int d = form.dim();
  FormPtr shared = share(form);

  std::vector<uint64_t> gens;
  for (const auto& t : transvection_generators(shared))
    gens.push_back(pack_columns(t));

  uint64_t id = 0;
  for (int j = 0; j < d; ++j) id |= uint64_t{1} << (j + 8 * j);

  std::unordered_set<uint64_t> seen;
  seen.reserve(1u << 21);
  seen.insert(id);
  std::vector<uint64_t> frontier{id};
  while (!frontier.empty()) {
    std::vector<uint64_t> next;
    for (uint64_t key : frontier) {
      for (uint64_t gen : gens) {
        uint64_t prod = key_mul(key, gen, d);
        if (seen.insert(prod).second) next.push_back(prod);
      }
    }
    frontier = std::move(next);
  }

  std::vector<uint64_t> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

HomologyMap random_symplectic(const FormPtr& form, uint64_t seed, int count) {
  const int g = form->genus();
  const int d = form->dim();
  if (count <= 0) count = 3 * d;
  std::mt19937_64 eng(seed);

  HomologyMap map = HomologyMap::identity(form);
  for (int n = 0; n < count; ++n) {
    Gf2Vector u(g);
    do {
      for (int w = 0; w < u.word_count(); ++w) u.set_word(w, eng());
    } while (u.is_zero());
    map = map.compose(transvection(form, u));
  }
  return map;
}

std::string FixedPointReport::to_json() const {
  nlohmann::json j;
  j["genus"] = genus;
  j["map_order"] = map_order;
  auto ids = [](const std::vector<SpinStructure>& list) {
    std::vector<std::string> out;
    out.reserve(list.size());
    for (const auto& q : list) out.push_back(q.hex_id());
    return out;
  };
  j["fixed_bounded"] = ids(fixed_bounded);
  j["fixed_unbounded"] = ids(fixed_unbounded);
  j["extendable"] = extendable();
  return j.dump();
}

}  // namespace spinform
