#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "wigner_lab/grid.hpp"
#include "wigner_lab/profile.hpp"

namespace wigner_lab {

using cplx = std::complex<double>;

struct Signal {
  Grid1D grid;
  std::vector<cplx> samples;

  Signal(Grid1D g, std::vector<cplx> s);
  explicit Signal(Grid1D g) : grid(g), samples(g.n()) {}

  template <class F>
  static Signal sample(const Grid1D& g, F&& f) {
    Signal s(g);
    for (std::size_t j = 0; j < g.n(); ++j) s.samples[j] = f(g.point(j));
    return s;
  }

  cplx operator[](std::size_t j) const { return samples[j]; }
  cplx& operator[](std::size_t j) { return samples[j]; }
};

/// Complex samples over a product lattice, axis0 major.
struct PhaseSpaceField {
  Grid2D grid;
  std::vector<cplx> samples;

  explicit PhaseSpaceField(Grid2D g) : grid(g), samples(g.size()) {}
  PhaseSpaceField(Grid2D g, std::vector<cplx> s);

  template <class F>
  static PhaseSpaceField sample(const Grid2D& g, F&& f) {
    PhaseSpaceField out(g);
    for (std::size_t j = 0; j < g.axis0.n(); ++j)
      for (std::size_t k = 0; k < g.axis1.n(); ++k)
        out.at(j, k) = f(g.axis0.point(j), g.axis1.point(k));
    return out;
  }

  cplx& at(std::size_t j, std::size_t k) { return samples[j * grid.axis1.n() + k]; }
  cplx at(std::size_t j, std::size_t k) const { return samples[j * grid.axis1.n() + k]; }

  double max_abs() const;
  double max_abs_imag() const;
};

/// Dense samples of k(x, xi, y, eta), row-major in that axis order.
struct DenseKernel {
  Grid4D grid;
  std::vector<cplx> samples;

  explicit DenseKernel(Grid4D g) : grid(g), samples(g.size()) {}

  std::size_t index(std::size_t ix, std::size_t ixi, std::size_t iy, std::size_t ieta) const {
    return ((ix * grid.xi.n() + ixi) * grid.y.n() + iy) * grid.eta.n() + ieta;
  }
  cplx& at(std::size_t ix, std::size_t ixi, std::size_t iy, std::size_t ieta) {
    return samples[index(ix, ixi, iy, ieta)];
  }
  cplx at(std::size_t ix, std::size_t ixi, std::size_t iy, std::size_t ieta) const {
    return samples[index(ix, ixi, iy, ieta)];
  }
  double max_abs() const;
};

/// One summand of a factored kernel:
///   weight * e^{2 pi i (x_freq x + eta_freq eta)} * P(y - x + shift(eta)) * Q(xi - eta - offset)
/// with shift a polynomial in eta (lowest degree first).
struct FactoredTerm {
  cplx weight{1.0, 0.0};
  double x_freq = 0.0;
  double eta_freq = 0.0;
  std::vector<double> shift;  // empty means 0
  Profile position;           // P
  double offset = 0.0;
  Profile frequency;          // Q

  double shift_at(double eta) const;
  bool shift_is_constant() const;
};

/// A 1D convolution not yet folded into the profiles; `radius` bounds the
/// smoother's numerical support.
struct PendingSmoother {
  Profile profile;
  double radius = 0.0;
};

/// Kernel kept as a sum of profile products. Smoothing in x and eta that
/// cannot be folded into a profile is held as a pending 1D convolution and
/// resolved by quadrature when the kernel is evaluated.
struct FactoredKernel {
  Grid4D grid;
  std::vector<FactoredTerm> terms;
  std::optional<PendingSmoother> pending_x;
  std::optional<PendingSmoother> pending_eta;
  /// Quadrature step for pending convolutions.
  double quadrature_step = 1.0 / 256.0;

  cplx operator()(double x, double xi, double y, double eta) const;

  /// True when no retained delta factor is left unresolved.
  bool pointwise() const;
};

struct KernelField {
  std::variant<DenseKernel, FactoredKernel> representation;

  const Grid4D& grid() const;
  bool is_dense() const { return std::holds_alternative<DenseKernel>(representation); }
  const DenseKernel& dense() const { return std::get<DenseKernel>(representation); }
  const FactoredKernel& factored() const { return std::get<FactoredKernel>(representation); }

  /// Value at an arbitrary point: dense kernels use the nearest grid node,
  /// factored kernels are evaluated exactly.
  cplx evaluate(double x, double xi, double y, double eta) const;

  /// Factored kernels are sampled on their grid; errors if a delta factor remains.
  DenseKernel densify() const;
};

}  // namespace wigner_lab
