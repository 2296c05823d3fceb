#include "wigner_lab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wigner_lab/errors.hpp"

namespace wigner_lab {

Grid1D::Grid1D(double center, double half_width, std::size_t n)
    : center_(center), half_width_(half_width), n_(n) {
  if (n < 4 || n % 2 != 0)
    throw SizingError("grid size must be even and at least 4, got " + std::to_string(n));
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw SizingError("grid half-width must be positive and finite");
  if (!std::isfinite(center)) throw SizingError("grid center must be finite");
}

Grid1D Grid1D::reciprocal() const {
  return Grid1D(0.0, static_cast<double>(n_) / (4.0 * half_width_), n_);
}

Grid1D Grid1D::refined(std::size_t factor) const {
  if (factor == 0) throw SizingError("refinement factor must be positive");
  return Grid1D(center_, half_width_, n_ * factor);
}

long Grid1D::index_of(double x) const {
  const double r = std::round((x - start()) / spacing());
  if (r < 0.0 || r >= static_cast<double>(n_)) return -1;
  return static_cast<long>(r);
}

bool Grid1D::operator==(const Grid1D& other) const {
  const double tol = 1e-12 * std::max(1.0, std::abs(half_width_));
  return n_ == other.n_ && std::abs(center_ - other.center_) <= tol &&
         std::abs(half_width_ - other.half_width_) <= tol;
}

const Grid1D& Grid4D::axis(int a) const {
  switch (a) {
    case 0: return x;
    case 1: return xi;
    case 2: return y;
    case 3: return eta;
  }
  throw SizingError("axis index out of range: " + std::to_string(a));
}

const char* axis_name(int axis) {
  static const char* names[] = {"x", "xi", "y", "eta"};
  if (axis < 0 || axis > 3) throw SizingError("axis index out of range");
  return names[axis];
}

int axis_from_name(std::string_view name) {
  if (name == "x") return 0;
  if (name == "xi") return 1;
  if (name == "y") return 2;
  if (name == "eta") return 3;
  throw SizingError("unknown axis name '" + std::string(name) + "' (expected x, xi, y, eta)");
}

}  // namespace wigner_lab
