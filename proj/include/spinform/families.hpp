#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "spinform/gf2.hpp"

namespace spinform {

enum class FamilyKind { tau, v, eta, wiman };

struct FamilyId {
  FamilyKind kind;
  int genus;
};

std::optional<FamilyKind> parse_family(std::string_view name);  // case-insensitive
std::string family_name(FamilyKind kind);

namespace families {

// Cycle x_1 -> x_2 -> ... -> x_{2g} -> x_1+...+x_{2g}; homology order 2g+1.
HomologyMap tau(int genus);

// Cyclic permutation of the basis x_1 -> ... -> x_{2g} -> x_1; homology
// order 2g.
HomologyMap v(int genus);

// Identity on Z2-homology (the surface rotation negates every x_i).
HomologyMap eta(int genus);

// tau^{g+1}; squares back to tau. Homology action of the maximal-order map.
HomologyMap wiman(int genus);

HomologyMap make(FamilyKind kind, int genus);

// Order of the underlying surface map. Recorded metadata; only homology
// orders are ever computed here.
uint32_t surface_order(FamilyKind kind, int genus);

}  // namespace families

}  // namespace spinform
