#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "twostage/dense.hpp"

namespace twostage {

/// Parses comma-separated rows. Blank lines and lines starting with '#' are
/// skipped; the shape is inferred. Throws ParseError.
DenseMatrix parse_matrix_csv(std::string_view text);
DenseMatrix read_matrix_csv(const std::string& path);

/// Parses "1,2,3" (whitespace tolerated) into a vector.
DenseVector parse_vector_list(std::string_view text);

/// Shortest text that round-trips (17 significant digits).
std::string format_double(double v);

void write_matrix_csv(std::ostream& out, const DenseMatrix& m);

}  // namespace twostage
