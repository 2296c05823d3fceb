#pragma once

#include <array>
#include <cstddef>
#include <string_view>

namespace wigner_lab {

/// Uniform centered lattice x_j = center - half_width + j * spacing, j = 0..n-1.
/// The spacing is derived (2 * half_width / n) and never stored.
class Grid1D {
 public:
  Grid1D(double center, double half_width, std::size_t n);

  double center() const { return center_; }
  double half_width() const { return half_width_; }
  std::size_t n() const { return n_; }
  double spacing() const { return 2.0 * half_width_ / static_cast<double>(n_); }
  double start() const { return center_ - half_width_; }
  double point(std::size_t j) const { return start() + static_cast<double>(j) * spacing(); }

  /// Reciprocal lattice of the discrete Fourier transform: center 0, half-width n / (4 h).
  Grid1D reciprocal() const;

  /// Same extent, n * factor samples.
  Grid1D refined(std::size_t factor) const;

  /// Nearest index to x, or -1 if x falls outside [start, start + 2h).
  long index_of(double x) const;
  bool contains(double x) const { return x >= start() && x < start() + 2.0 * half_width_; }

  bool operator==(const Grid1D& other) const;
  bool operator!=(const Grid1D& other) const { return !(*this == other); }

 private:
  double center_;
  double half_width_;
  std::size_t n_;
};

struct Grid2D {
  Grid1D axis0;
  Grid1D axis1;

  std::size_t size() const { return axis0.n() * axis1.n(); }
  bool operator==(const Grid2D& o) const { return axis0 == o.axis0 && axis1 == o.axis1; }
};

// Axis order (x, xi, y, eta), matching k_W(x, xi, y, eta).
enum class Axis4 : int { x = 0, xi = 1, y = 2, eta = 3 };

struct Grid4D {
  Grid1D x;
  Grid1D xi;
  Grid1D y;
  Grid1D eta;

  const Grid1D& axis(int a) const;
  std::array<std::size_t, 4> shape() const { return {x.n(), xi.n(), y.n(), eta.n()}; }
  std::size_t size() const { return x.n() * xi.n() * y.n() * eta.n(); }
  bool operator==(const Grid4D& o) const {
    return x == o.x && xi == o.xi && y == o.y && eta == o.eta;
  }
};

const char* axis_name(int axis);
int axis_from_name(const std::string_view name);

}  // namespace wigner_lab
