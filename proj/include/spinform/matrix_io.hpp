#pragma once

#include <istream>
#include <string>

#include "spinform/gf2.hpp"

namespace spinform {

// Homology-map file format:
//   # optional comments
//   genus <g>
//   2g rows of 2g space-separated 0/1 digits
// Row i lists the image of x_i in the x-basis, so file rows become map
// columns. The ambient pairing is the standard surface form.
HomologyMap parse_homology_map(std::istream& in, const std::string& source);
HomologyMap load_homology_map(const std::string& path);

}  // namespace spinform
