#include "specloc/lattice.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "specloc/operators.hpp"

namespace specloc {

LatticeBox::LatticeBox(int dim, int radius) : dim_(dim), radius_(radius) {
  if (dim != 1 && dim != 2) {
    throw std::invalid_argument("invalid-dimension: box dimension must be 1 or 2, got " +
                                std::to_string(dim));
  }
  if (radius < 1) {
    throw std::invalid_argument("invalid-radius: box radius must be >= 1, got " +
                                std::to_string(radius));
  }
  const int ymin = (dim == 2) ? -radius : 0;
  const int ymax = (dim == 2) ? radius : 0;
  sites_.reserve(static_cast<std::size_t>(2 * radius + 1) * static_cast<std::size_t>(ymax - ymin + 1));
  for (int y = ymin; y <= ymax; ++y) {
    for (int x = -radius; x <= radius; ++x) {
      sites_.push_back(Site{x, y});
    }
  }
}

bool LatticeBox::contains(const Site& s) const {
  if (std::abs(s.x) > radius_) return false;
  if (dim_ == 1) return s.y == 0;
  return std::abs(s.y) <= radius_;
}

Index LatticeBox::index_of(const Site& s) const {
  if (!contains(s)) {
    throw std::out_of_range("site (" + std::to_string(s.x) + "," + std::to_string(s.y) +
                            ") outside box of radius " + std::to_string(radius_));
  }
  const Index row = (dim_ == 2) ? static_cast<Index>(s.y + radius_) : 0;
  return row * static_cast<Index>(2 * radius_ + 1) + static_cast<Index>(s.x + radius_);
}

LatticeBox enumerate_box(int dim, int radius) { return LatticeBox(dim, radius); }

Complex f_ell_value(const Site& s, int ell) {
  const Complex z(static_cast<double>(s.x), static_cast<double>(s.y));
  const double r = std::abs(z);
  if (r == 0.0) return Complex(1.0, 0.0);
  if (r < static_cast<double>(ell)) return z;
  return static_cast<double>(ell) * z / r;
}

int sign_value(int x) { return x >= 0 ? 1 : -1; }

Complex position_value(const Site& s, const PositionFunction& fun) {
  switch (fun.kind) {
    case PositionKind::kRawAmended: {
      const Complex z(static_cast<double>(s.x), static_cast<double>(s.y));
      return z == Complex(0.0, 0.0) ? Complex(1.0, 0.0) : z;
    }
    case PositionKind::kClampedRadial:
      return f_ell_value(s, fun.ell);
    case PositionKind::kSign:
      if (fun.dim != 1) throw std::invalid_argument("invalid-dimension: sign profile is 1-d only");
      return Complex(static_cast<double>(sign_value(s.x)), 0.0);
    case PositionKind::kLaughlinPhase: {
      if (fun.dim != 2)
        throw std::invalid_argument("invalid-dimension: Laughlin phase is 2-d only");
      const Complex z(static_cast<double>(s.x), static_cast<double>(s.y));
      const double r = std::abs(z);
      return r == 0.0 ? Complex(1.0, 0.0) : z / r;
    }
    case PositionKind::kClampedSquare: {
      if (fun.dim != 2)
        throw std::invalid_argument("invalid-dimension: square clamp is 2-d only");
      // ell * phase + indicator_{[-ell,ell]^2} (x - ell * phase) + origin fix:
      // inside the square this is the raw amended position, outside it clamps
      // onto the circle of radius ell along the Laughlin phase.
      if (std::abs(s.x) <= fun.ell && std::abs(s.y) <= fun.ell) {
        const Complex z(static_cast<double>(s.x), static_cast<double>(s.y));
        return z == Complex(0.0, 0.0) ? Complex(1.0, 0.0) : z;
      }
      const Complex z(static_cast<double>(s.x), static_cast<double>(s.y));
      return static_cast<double>(fun.ell) * z / std::abs(z);
    }
  }
  throw std::logic_error("unreachable position kind");
}

LocalOperator build_position_operator(const LatticeBox& box, const PositionFunction& fun,
                                      int internal_dim) {
  if (fun.dim != box.dim() || fun.ell != box.radius()) {
    throw std::invalid_argument("dimension-mismatch: position function (d=" +
                                std::to_string(fun.dim) + ", ell=" + std::to_string(fun.ell) +
                                ") does not match box (d=" + std::to_string(box.dim()) +
                                ", ell=" + std::to_string(box.radius()) + ")");
  }
  std::vector<Complex> values;
  values.reserve(static_cast<std::size_t>(box.num_sites()));
  for (const Site& s : box.sites()) values.push_back(position_value(s, fun));
  return LocalOperator::Diagonal(box, internal_dim, values);
}

LocalOperator half_space_projection(const LatticeBox& box, int axis, int internal_dim) {
  if (axis < 1 || axis > box.dim()) {
    throw std::invalid_argument("invalid-axis: axis " + std::to_string(axis) +
                                " for a " + std::to_string(box.dim()) + "-d box");
  }
  std::vector<Complex> values;
  values.reserve(static_cast<std::size_t>(box.num_sites()));
  for (const Site& s : box.sites()) {
    const int c = (axis == 1) ? s.x : s.y;
    values.push_back(Complex(c >= 0 ? 1.0 : 0.0, 0.0));
  }
  return LocalOperator::Diagonal(box, internal_dim, values);
}

}  // namespace specloc
