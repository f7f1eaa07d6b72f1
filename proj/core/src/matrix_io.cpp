#include "ssc/matrix_io.hpp"

#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "ssc/error.hpp"

namespace ssc {
namespace {

bool content_line(std::istream& in, std::string& line, int& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

}  // namespace

MatrixQ read_matrix(std::istream& in) {
  std::string line;
  int line_no = 0;
  if (!content_line(in, line, line_no)) throw ParseError(line_no + 1, "missing dimension line");
  long k = 0;
  {
    std::istringstream row(line);
    std::string extra;
    if (!(row >> k) || (row >> extra) || k < 1) throw ParseError(line_no, "expected a positive dimension");
  }
  const auto n = static_cast<std::size_t>(k);
  MatrixQ m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!content_line(in, line, line_no)) throw ParseError(line_no + 1, "expected " + std::to_string(k) + " rows");
    std::istringstream row(line);
    std::string tok;
    std::size_t c = 0;
    while (row >> tok) {
      if (c == n) throw ParseError(line_no, "too many entries in row");
      try {
        m(r, c++) = parse_rational(tok);
      } catch (const InputError& e) {
        throw ParseError(line_no, e.what());
      }
    }
    if (c != n) throw ParseError(line_no, "too few entries in row");
  }
  if (content_line(in, line, line_no)) throw ParseError(line_no, "trailing content after matrix");
  return m;
}

void write_matrix(std::ostream& out, const MatrixQ& m) {
  out << m.rows() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? " " : "") << to_string(m(r, c));
    out << '\n';
  }
}

void write_matrix(std::ostream& out, const Matrix& m) {
  std::ostringstream buf;
  buf << std::setprecision(17);
  buf << m.rows() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) buf << (c ? " " : "") << m(r, c);
    buf << '\n';
  }
  out << buf.str();
}

}  // namespace ssc
