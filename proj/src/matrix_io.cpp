#include "spinform/matrix_io.hpp"

#include <fstream>
#include <sstream>

#include "spinform/errors.hpp"

namespace spinform {

namespace {

bool skippable(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;  // blank
}

}  // namespace

HomologyMap parse_homology_map(std::istream& in, const std::string& source) {
  std::string line;
  int lineno = 0;
  int genus = 0;

  auto next_data_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (!skippable(line)) return true;
    }
    return false;
  };

  if (!next_data_line())
    throw ParseError(source, lineno + 1, "missing 'genus <g>' header");
  {
    std::istringstream header(line);
    std::string keyword;
    header >> keyword;
    if (keyword != "genus")
      throw ParseError(source, lineno, "expected 'genus <g>', got '" + line + "'");
    if (!(header >> genus) || genus < 1)
      throw ParseError(source, lineno, "genus must be a positive integer");
    if (genus > 4096)
      throw ParseError(source, lineno,
                       "genus " + std::to_string(genus) + " is too large");
    std::string trailing;
    if (header >> trailing)
      throw ParseError(source, lineno, "unexpected trailing text '" + trailing + "'");
  }

  const int d = 2 * genus;
  std::vector<Gf2Vector> columns;
  columns.reserve(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) {
    if (!next_data_line())
      throw ParseError(source, lineno + 1,
                       "expected " + std::to_string(d) + " matrix rows, got " +
                           std::to_string(i));
    std::istringstream row(line);
    Gf2Vector col(genus);
    std::string token;
    for (int j = 0; j < d; ++j) {
      if (!(row >> token))
        throw ParseError(source, lineno,
                         "expected " + std::to_string(d) + " entries, got " +
                             std::to_string(j));
      if (token == "1")
        col.set_bit(j, true);
      else if (token != "0")
        throw ParseError(source, lineno, "entry '" + token + "' is not 0 or 1");
    }
    std::string trailing;
    if (row >> trailing)
      throw ParseError(source, lineno,
                       "row has more than " + std::to_string(d) + " entries");
    columns.push_back(std::move(col));
  }
  if (next_data_line())
    throw ParseError(source, lineno, "unexpected extra data after the matrix");

  return HomologyMap(IntersectionForm::standard(genus), std::move(columns));
}

HomologyMap load_homology_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open for reading");
  return parse_homology_map(in, path);
}

}  // namespace spinform
