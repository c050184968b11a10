#pragma once

#include "leibniz/algebra.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace leibniz {

// Text format, one record per line, '#' starts a comment:
//
//   leibniz-algebra 1
//   dim 3
//   labels e0 e1 e2          (optional; defaults e0..)
//   family F1 5              (optional metadata: id and n)
//   param theta 1            (optional, repeatable)
//   entry 0 0 2 1            ([e_0,e_0] = 1 e_2; coefficient p or p/q)
//
// Omitted entries are zero. Writing omits zeros and sorts entries by (i,j,k).
struct ParseError : std::runtime_error {
    ParseError(const std::string& source, long line, const std::string& what);
    long line;
};

Algebra parse_algebra(std::istream& in, const std::string& source = "<input>");
Algebra parse_algebra_string(const std::string& text);
std::string format_algebra(const Algebra& a);

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "-" is stdin/stdout. Throws IoError when the file cannot be opened.
Algebra read_algebra_file(const std::string& path);
void write_algebra_file(const Algebra& a, const std::string& path);

}  // namespace leibniz
