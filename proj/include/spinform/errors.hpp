#pragma once

#include <stdexcept>
#include <string>

namespace spinform {

// Thrown when an exhaustive sweep is requested above the configured genus
// cutoff.
class CutoffError : public std::invalid_argument {
 public:
  CutoffError(int genus, int cutoff)
      : std::invalid_argument("genus " + std::to_string(genus) +
                              " exceeds enumeration cutoff " +
                              std::to_string(cutoff)),
        genus_(genus),
        cutoff_(cutoff) {}

  int genus() const { return genus_; }
  int cutoff() const { return cutoff_; }

 private:
  int genus_;
  int cutoff_;
};

// Input-file errors carry the source name and 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, int line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const { return source_; }
  int line() const { return line_; }

 private:
  std::string source_;
  int line_;
};

class IoError : public std::runtime_error {
 public:
  IoError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what) {}
};

}  // namespace spinform
