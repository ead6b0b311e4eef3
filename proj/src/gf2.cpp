#include "spinform/gf2.hpp"

#include <algorithm>
#include <stdexcept>

namespace spinform {

namespace {

void require_positive_genus(int genus) {
  if (genus < 1)
    throw std::invalid_argument("genus must be positive, got " +
                                std::to_string(genus));
}

void require_same_genus(int a, int b, const char* where) {
  if (a != b)
    throw std::invalid_argument(std::string(where) + ": genus mismatch (" +
                                std::to_string(a) + " vs " + std::to_string(b) +
                                ")");
}

}  // namespace

Gf2Vector::Gf2Vector(int genus) : genus_(genus) {
  require_positive_genus(genus);
  int words = (2 * genus + 63) / 64;
  tail_.assign(static_cast<size_t>(words - 1), 0);
}

Gf2Vector Gf2Vector::basis(int genus, int i) {
  Gf2Vector v(genus);
  if (i < 1 || i > 2 * genus)
    throw std::invalid_argument("basis index " + std::to_string(i) +
                                " outside 1..2g for g=" + std::to_string(genus));
  v.set_bit(i - 1, true);
  return v;
}

Gf2Vector Gf2Vector::from_mask(int genus, uint64_t mask) {
  Gf2Vector v(genus);
  int d = v.dim();
  if (d > 64) throw std::invalid_argument("from_mask requires 2g <= 64");
  if (d < 64 && (mask >> d) != 0)
    throw std::invalid_argument("mask has bits outside the 2g-bit range");
  v.head_ = mask;
  return v;
}

Gf2Vector Gf2Vector::all_ones(int genus) {
  Gf2Vector v(genus);
  v.head_ = ~uint64_t{0};
  for (auto& w : v.tail_) w = ~uint64_t{0};
  v.trim_last_word();
  return v;
}

void Gf2Vector::trim_last_word() {
  int used = dim() % 64;
  if (used == 0) return;
  uint64_t keep = (uint64_t{1} << used) - 1;
  if (tail_.empty())
    head_ &= keep;
  else
    tail_.back() &= keep;
}

bool Gf2Vector::bit(int pos) const {
  if (pos < 0 || pos >= dim())
    throw std::out_of_range("bit position " + std::to_string(pos));
  return (word(pos / 64) >> (pos % 64)) & 1;
}

void Gf2Vector::set_bit(int pos, bool value) {
  if (pos < 0 || pos >= dim())
    throw std::out_of_range("bit position " + std::to_string(pos));
  uint64_t m = uint64_t{1} << (pos % 64);
  uint64_t w = word(pos / 64);
  w = value ? (w | m) : (w & ~m);
  set_word(pos / 64, w);
}

void Gf2Vector::set_word(int w, uint64_t bits) {
  if (w == 0)
    head_ = bits;
  else
    tail_[static_cast<size_t>(w - 1)] = bits;
  if (w == word_count() - 1) trim_last_word();
}

bool Gf2Vector::is_zero() const {
  if (head_ != 0) return false;
  for (uint64_t w : tail_)
    if (w != 0) return false;
  return true;
}

int Gf2Vector::popcount() const {
  int n = std::popcount(head_);
  for (uint64_t w : tail_) n += std::popcount(w);
  return n;
}

int Gf2Vector::lowest_bit() const {
  for (int w = 0; w < word_count(); ++w)
    if (word(w) != 0) return w * 64 + std::countr_zero(word(w));
  return -1;
}

Gf2Vector& Gf2Vector::operator^=(const Gf2Vector& rhs) {
  require_same_genus(genus_, rhs.genus_, "xor");
  head_ ^= rhs.head_;
  for (size_t i = 0; i < tail_.size(); ++i) tail_[i] ^= rhs.tail_[i];
  return *this;
}

bool Gf2Vector::operator==(const Gf2Vector& rhs) const {
  return genus_ == rhs.genus_ && head_ == rhs.head_ && tail_ == rhs.tail_;
}

bool Gf2Vector::operator<(const Gf2Vector& rhs) const {
  require_same_genus(genus_, rhs.genus_, "compare");
  for (int w = word_count() - 1; w >= 0; --w)
    if (word(w) != rhs.word(w)) return word(w) < rhs.word(w);
  return false;
}

uint64_t Gf2Vector::and_popcount(const Gf2Vector& rhs) const {
  require_same_genus(genus_, rhs.genus_, "and_popcount");
  uint64_t n = static_cast<uint64_t>(std::popcount(head_ & rhs.head_));
  for (size_t i = 0; i < tail_.size(); ++i)
    n += static_cast<uint64_t>(std::popcount(tail_[i] & rhs.tail_[i]));
  return n;
}

uint64_t Gf2Vector::mask() const {
  if (dim() > 64) throw std::invalid_argument("mask() requires 2g <= 64");
  return head_;
}

std::string Gf2Vector::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for_each_set_bit(*this, [&](int pos) {
    if (!out.empty()) out += "+";
    out += "x" + std::to_string(pos + 1);
  });
  return out;
}

size_t Gf2Vector::hash() const {
  uint64_t h = 0xcbf29ce484222325ull ^ static_cast<uint64_t>(genus_);
  auto mix = [&h](uint64_t w) {
    h ^= w;
    h *= 0x100000001b3ull;
  };
  mix(head_);
  for (uint64_t w : tail_) mix(w);
  return static_cast<size_t>(h);
}

int gf2_rank(std::vector<Gf2Vector> vecs) {
  std::vector<std::pair<int, Gf2Vector>> pivots;
  for (auto& v : vecs) {
    for (const auto& [pb, pv] : pivots)
      if (v.bit(pb)) v ^= pv;
    int lb = v.lowest_bit();
    if (lb >= 0) pivots.emplace_back(lb, v);
  }
  return static_cast<int>(pivots.size());
}

bool gf2_invertible(const std::vector<Gf2Vector>& columns) {
  if (columns.empty()) return false;
  if (static_cast<int>(columns.size()) != columns.front().dim()) return false;
  return gf2_rank(columns) == columns.front().dim();
}

std::optional<std::vector<Gf2Vector>> gf2_inverse_columns(
    const std::vector<Gf2Vector>& columns) {
  if (columns.empty()) return std::nullopt;
  int n = columns.front().dim();
  if (static_cast<int>(columns.size()) != n) return std::nullopt;
  int genus = columns.front().genus();

  // Gauss-Jordan on pairs (a_j, u_j) with a_j = M u_j, starting u_j = e_j.
  std::vector<Gf2Vector> a = columns;
  std::vector<Gf2Vector> u;
  u.reserve(static_cast<size_t>(n));
  for (int j = 1; j <= n; ++j) u.push_back(Gf2Vector::basis(genus, j));

  for (int p = 0; p < n; ++p) {
    int piv = -1;
    for (int j = p; j < n; ++j)
      if (a[j].bit(p)) {
        piv = j;
        break;
      }
    if (piv < 0) return std::nullopt;
    std::swap(a[p], a[piv]);
    std::swap(u[p], u[piv]);
    for (int j = 0; j < n; ++j) {
      if (j != p && a[j].bit(p)) {
        a[j] ^= a[p];
        u[j] ^= u[p];
      }
    }
  }
  return u;
}

IntersectionForm IntersectionForm::standard(int genus) {
  require_positive_genus(genus);
  std::vector<Gf2Vector> rows;
  rows.reserve(static_cast<size_t>(2 * genus));
  for (int i = 1; i <= 2 * genus; ++i)
    rows.push_back(Gf2Vector::all_ones(genus) + Gf2Vector::basis(genus, i));
  return IntersectionForm(genus, std::move(rows));
}

IntersectionForm IntersectionForm::hyperbolic(int genus) {
  require_positive_genus(genus);
  std::vector<Gf2Vector> rows;
  rows.reserve(static_cast<size_t>(2 * genus));
  for (int i = 1; i <= 2 * genus; ++i) {
    int partner = (i % 2 == 1) ? i + 1 : i - 1;
    rows.push_back(Gf2Vector::basis(genus, partner));
  }
  return IntersectionForm(genus, std::move(rows));
}

IntersectionForm IntersectionForm::from_gram(int genus,
                                             std::vector<Gf2Vector> rows) {
  require_positive_genus(genus);
  int d = 2 * genus;
  if (static_cast<int>(rows.size()) != d)
    throw std::invalid_argument("gram matrix needs " + std::to_string(d) +
                                " rows, got " + std::to_string(rows.size()));
  for (int i = 0; i < d; ++i) {
    require_same_genus(rows[i].genus(), genus, "from_gram");
    if (rows[i].bit(i))
      throw std::invalid_argument("gram diagonal entry (" +
                                  std::to_string(i + 1) + "," +
                                  std::to_string(i + 1) + ") must be 0");
    for (int j = i + 1; j < d; ++j)
      if (rows[i].bit(j) != rows[j].bit(i))
        throw std::invalid_argument("gram matrix not symmetric at (" +
                                    std::to_string(i + 1) + "," +
                                    std::to_string(j + 1) + ")");
  }
  if (gf2_rank(rows) != d)
    throw std::invalid_argument("gram matrix is degenerate");
  return IntersectionForm(genus, std::move(rows));
}

unsigned IntersectionForm::pair(const Gf2Vector& u, const Gf2Vector& v) const {
  require_same_genus(u.genus(), genus_, "pair");
  require_same_genus(v.genus(), genus_, "pair");
  unsigned acc = 0;
  for_each_set_bit(u, [&](int k) { acc ^= rows_[k].parity_and(v); });
  return acc;
}

bool IntersectionForm::operator==(const IntersectionForm& rhs) const {
  return genus_ == rhs.genus_ && rows_ == rhs.rows_;
}

FormCheck check_form_preserving(const IntersectionForm& form,
                                const std::vector<Gf2Vector>& columns) {
  FormCheck out;
  int d = form.dim();
  if (static_cast<int>(columns.size()) != d) {
    out.ok = false;
    out.reason = "expected " + std::to_string(d) + " columns, got " +
                 std::to_string(columns.size());
    return out;
  }
  for (const auto& c : columns) {
    if (c.genus() != form.genus()) {
      out.ok = false;
      out.reason = "column genus mismatch";
      return out;
    }
  }
  if (!gf2_invertible(columns)) {
    out.ok = false;
    out.reason = "matrix is singular over GF(2)";
    return out;
  }
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      unsigned expected = form.row(i).bit(j) ? 1u : 0u;
      unsigned got = form.pair(columns[i], columns[j]);
      if (got != expected) {
        out.ok = false;
        out.i = i + 1;
        out.j = j + 1;
        out.reason = "does not preserve the intersection form: pair(M x" +
                     std::to_string(i + 1) + ", M x" + std::to_string(j + 1) +
                     ") = " + std::to_string(got) + ", expected " +
                     std::to_string(expected);
        return out;
      }
    }
  }
  return out;
}

bool is_form_preserving(const IntersectionForm& form,
                        const std::vector<Gf2Vector>& columns) {
  return check_form_preserving(form, columns).ok;
}

HomologyMap::HomologyMap(IntersectionForm form, std::vector<Gf2Vector> columns)
    : HomologyMap(share(std::move(form)), std::move(columns)) {}

HomologyMap::HomologyMap(FormPtr form, std::vector<Gf2Vector> columns)
    : form_(std::move(form)), cols_(std::move(columns)) {
  FormCheck check = check_form_preserving(*form_, cols_);
  if (!check.ok) throw std::invalid_argument(check.reason);
}

HomologyMap HomologyMap::identity(IntersectionForm form) {
  return identity(share(std::move(form)));
}

HomologyMap HomologyMap::identity(FormPtr form) {
  std::vector<Gf2Vector> cols;
  int g = form->genus();
  cols.reserve(static_cast<size_t>(2 * g));
  for (int i = 1; i <= 2 * g; ++i) cols.push_back(Gf2Vector::basis(g, i));
  return unchecked(std::move(form), std::move(cols));
}

Gf2Vector HomologyMap::apply(const Gf2Vector& x) const {
  require_same_genus(x.genus(), genus(), "apply");
  Gf2Vector out(genus());
  for_each_set_bit(x, [&](int k) { out ^= cols_[k]; });
  return out;
}

HomologyMap HomologyMap::compose(const HomologyMap& inner) const {
  if (form() != inner.form())
    throw std::invalid_argument("compose: maps live over different forms");
  std::vector<Gf2Vector> cols;
  cols.reserve(cols_.size());
  for (const auto& c : inner.cols_) cols.push_back(apply(c));
  return unchecked(form_, std::move(cols));
}

HomologyMap HomologyMap::power(uint64_t k) const {
  HomologyMap result = identity(form_);
  HomologyMap base = *this;
  while (k) {
    if (k & 1) result = result.compose(base);
    k >>= 1;
    if (k) base = base.compose(base);
  }
  return result;
}

HomologyMap HomologyMap::inverse() const {
  auto inv = gf2_inverse_columns(cols_);
  if (!inv) throw std::logic_error("form-preserving map must be invertible");
  return unchecked(form_, std::move(*inv));
}

std::optional<uint32_t> HomologyMap::order(uint32_t cap) const {
  if (cap < 1) throw std::invalid_argument("order cap must be >= 1");
  HomologyMap acc = *this;
  for (uint32_t k = 1; k <= cap; ++k) {
    if (acc.is_identity()) return k;
    acc = acc.compose(*this);
  }
  return std::nullopt;
}

bool HomologyMap::is_identity() const {
  for (int i = 0; i < dim(); ++i) {
    if (cols_[static_cast<size_t>(i)] != Gf2Vector::basis(genus(), i + 1))
      return false;
  }
  return true;
}

bool HomologyMap::operator==(const HomologyMap& rhs) const {
  return form() == rhs.form() && cols_ == rhs.cols_;
}

HomologyMap transvection(FormPtr form, const Gf2Vector& u) {
  require_same_genus(u.genus(), form->genus(), "transvection");
  if (u.is_zero())
    throw std::invalid_argument("transvection direction must be nonzero");
  int g = form->genus();
  std::vector<Gf2Vector> cols;
  cols.reserve(static_cast<size_t>(2 * g));
  for (int i = 1; i <= 2 * g; ++i) {
    Gf2Vector c = Gf2Vector::basis(g, i);
    if (form->pair(c, u)) c ^= u;
    cols.push_back(std::move(c));
  }
  return HomologyMap(std::move(form), std::move(cols));
}

SymplecticBasis symplectic_basis(const IntersectionForm& form) {
  SymplecticBasis out;
  int g = form.genus();
  std::vector<Gf2Vector> remaining;
  remaining.reserve(static_cast<size_t>(2 * g));
  for (int i = 1; i <= 2 * g; ++i)
    remaining.push_back(Gf2Vector::basis(g, i));

  for (int round = 0; round < g; ++round) {
    // Lowest-index remaining vector, then its lowest-index partner; on a
    // nondegenerate restriction a partner always exists.
    const Gf2Vector a = remaining.front();
    size_t partner = 0;
    for (size_t j = 1; j < remaining.size(); ++j) {
      if (form.pair(a, remaining[j])) {
        partner = j;
        break;
      }
    }
    if (partner == 0)
      throw std::logic_error("degenerate form slipped past validation");
    const Gf2Vector b = remaining[partner];

    std::vector<Gf2Vector> next;
    next.reserve(remaining.size() - 2);
    for (size_t j = 1; j < remaining.size(); ++j) {
      if (j == partner) continue;
      Gf2Vector w = remaining[j];
      if (form.pair(w, b)) w ^= a;
      if (form.pair(w, a)) w ^= b;
      next.push_back(std::move(w));
    }
    out.pairs.emplace_back(a, b);
    remaining = std::move(next);
  }
  return out;
}

bool is_symplectic_basis(const IntersectionForm& form,
                         const SymplecticBasis& basis) {
  int g = form.genus();
  if (static_cast<int>(basis.pairs.size()) != g) return false;
  std::vector<Gf2Vector> all;
  for (const auto& [a, b] : basis.pairs) {
    all.push_back(a);
    all.push_back(b);
  }
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < g; ++j) {
      unsigned want = (i == j) ? 1u : 0u;
      if (form.pair(basis.pairs[i].first, basis.pairs[j].second) != want)
        return false;
      if (i < j) {
        if (form.pair(basis.pairs[i].first, basis.pairs[j].first) != 0)
          return false;
        if (form.pair(basis.pairs[i].second, basis.pairs[j].second) != 0)
          return false;
      }
    }
  }
  return gf2_rank(all) == 2 * g;
}

}  // namespace spinform
