#include "specloc/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace specloc {

void dump_operator(std::ostream& out, const LocalOperator& op) {
  out << op.box().dim() << ' ' << op.internal_dim() << ' ' << op.box().radius() << ' '
      << (op.hermitian() ? 1 : 0) << ' ' << (op.chiral() ? 1 : 0) << '\n';
  char buf[96];
  const Matrix& m = op.matrix();
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      const Complex v = m(r, c);
      if (v == Complex(0.0, 0.0)) continue;
      std::snprintf(buf, sizeof(buf), "%lld %lld %.17g %.17g", static_cast<long long>(r),
                    static_cast<long long>(c), v.real(), v.imag());
      out << buf << '\n';
    }
  }
}

LocalOperator read_operator(std::istream& in) {
  int d = 0, n = 0, ell = 0, hermitian = 0, chiral = 0;
  if (!(in >> d >> n >> ell >> hermitian >> chiral)) {
    throw std::runtime_error("operator dump: malformed header");
  }
  LatticeBox box(d, ell);
  const Index dim = box.num_sites() * n;
  Matrix m = Matrix::Zero(dim, dim);
  long long r = 0, c = 0;
  double re = 0.0, im = 0.0;
  while (in >> r >> c >> re >> im) {
    if (r < 0 || r >= dim || c < 0 || c >= dim) {
      throw std::runtime_error("operator dump: entry index out of range");
    }
    m(r, c) = Complex(re, im);
  }
  return LocalOperator(box, n, std::move(m), hermitian != 0, chiral != 0);
}

std::string format_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace specloc
