// DIMACS CNF reading and writing.
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "mcsat/cnf.hpp"

namespace mcsat {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

Formula parse_dimacs(std::string_view text);
Formula read_dimacs_file(const std::string& path);
std::string emit_dimacs(const Formula& f);

}  // namespace mcsat
