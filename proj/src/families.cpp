#include "spinform/families.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace spinform {

std::optional<FamilyKind> parse_family(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "tau") return FamilyKind::tau;
  if (lower == "v") return FamilyKind::v;
  if (lower == "eta") return FamilyKind::eta;
  if (lower == "wiman") return FamilyKind::wiman;
  return std::nullopt;
}

std::string family_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::tau: return "tau";
    case FamilyKind::v: return "v";
    case FamilyKind::eta: return "eta";
    case FamilyKind::wiman: return "wiman";
  }
  return "?";
}

namespace families {

HomologyMap tau(int genus) {
  FormPtr form = share(IntersectionForm::standard(genus));
  std::vector<Gf2Vector> cols;
  cols.reserve(static_cast<size_t>(2 * genus));
  for (int i = 1; i < 2 * genus; ++i)
    cols.push_back(Gf2Vector::basis(genus, i + 1));
  cols.push_back(Gf2Vector::all_ones(genus));
  return HomologyMap(std::move(form), std::move(cols));
}

HomologyMap v(int genus) {
  FormPtr form = share(IntersectionForm::standard(genus));
  std::vector<Gf2Vector> cols;
  cols.reserve(static_cast<size_t>(2 * genus));
  for (int i = 1; i < 2 * genus; ++i)
    cols.push_back(Gf2Vector::basis(genus, i + 1));
  cols.push_back(Gf2Vector::basis(genus, 1));
  return HomologyMap(std::move(form), std::move(cols));
}

HomologyMap eta(int genus) {
  return HomologyMap::identity(IntersectionForm::standard(genus));
}

HomologyMap wiman(int genus) {
  return tau(genus).power(static_cast<uint64_t>(genus) + 1);
}

HomologyMap make(FamilyKind kind, int genus) {
  switch (kind) {
    case FamilyKind::tau: return tau(genus);
    case FamilyKind::v: return v(genus);
    case FamilyKind::eta: return eta(genus);
    case FamilyKind::wiman: return wiman(genus);
  }
  throw std::invalid_argument("unknown family");
}

uint32_t surface_order(FamilyKind kind, int genus) {
  uint32_t g = static_cast<uint32_t>(genus);
  switch (kind) {
    case FamilyKind::tau: return 2 * g + 1;
    case FamilyKind::v: return 4 * g;
    case FamilyKind::eta: return 2;
    case FamilyKind::wiman: return 4 * g + 2;
  }
  throw std::invalid_argument("unknown family");
}

}  // namespace families

}  // namespace spinform
