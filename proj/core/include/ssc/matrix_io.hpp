#pragma once

#include <iosfwd>

#include "ssc/exactq.hpp"
#include "ssc/numerics.hpp"

namespace ssc {

/// Square matrix text format: line 1 is the dimension k, then k lines of k
/// whitespace-separated entries, each a decimal or "p/q". Decimals are read
/// exactly. Blank lines and '#' comments are skipped.
MatrixQ read_matrix(std::istream& in);

void write_matrix(std::ostream& out, const MatrixQ& m);
/// Doubles are written with 17 significant digits so they round-trip.
void write_matrix(std::ostream& out, const Matrix& m);

}  // namespace ssc
