#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "opmeans/matrix.hpp"

namespace opmeans {

// Text format for labeled Hermitian matrices:
//
//   # comment
//   name: A
//   hmat 2
//   0.3 0.1+0.2i
//   0.1-0.2i 0.3
//
// Entries are `<re>`, `<re>+<im>i` or `<re>-<im>i`, printed with the
// shortest decimal that round-trips. Blank lines separate matrices.
struct LabeledMatrix {
  std::string label;  // empty when no name: line precedes the block
  HermitianMatrix matrix;
};

std::string format_complex(Complex z);
Complex parse_complex(std::string_view token, int line = 0);

std::string format_matrix_file(const std::vector<LabeledMatrix>& matrices);
std::string format_matrix(const HermitianMatrix& m, std::string_view label = {});
// Throws ParseError with the offending line number.
std::vector<LabeledMatrix> parse_matrix_file(std::string_view text);

// Reads `path`, or standard input when path is "-".
std::string read_text(const std::string& path);

}  // namespace opmeans
