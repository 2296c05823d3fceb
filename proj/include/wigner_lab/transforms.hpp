#pragma once

#include "wigner_lab/field.hpp"

namespace wigner_lab {

/// Gaussian window e^{-pi t^2} times a normalization constant:
/// l2 gives 2^{1/4} (unit L2 norm), none gives 1, gabor gives 2^{-1/4}.
struct WindowSpec {
  enum class Kind { standard_gaussian };
  enum class Normalization { l2, none, gabor };

  Kind kind = Kind::standard_gaussian;
  Normalization normalization = Normalization::l2;

  double amplitude() const;
  double operator()(double t) const;
};

/// W(f, g)(x, xi) = \int f(x + t/2) conj(g(x - t/2)) e^{-2 pi i xi t} dt.
/// The x-axis is the input grid; the xi-axis is Grid1D(0, n / (4 h), n).
PhaseSpaceField cross_wigner(const Signal& f, const Signal& g);
PhaseSpaceField wigner(const Signal& f);

/// V_g f(x, xi) = \int f(t) conj(g(t - x)) e^{-2 pi i xi t} dt on (grid, grid.reciprocal()).
PhaseSpaceField stft(const Signal& f, const WindowSpec& window);

/// |V_phi f|^2 with the unnormalized window phi(t) = e^{-pi t^2}.
PhaseSpaceField husimi(const Signal& f);

/// W(phi) * W(f) by a 2D lattice convolution; agrees with husimi().
PhaseSpaceField husimi_via_convolution(const Signal& f);

/// max |W(f+g) - Wf - Wg - 2 Re W(f,g)| over the lattice.
double polarization_check(const Signal& f, const Signal& g);

/// Wigner distribution of a function of two variables k(x1, x2) sampled on
/// `k.grid`. The result is indexed (x1, xi1, x2, xi2). With `fine_positions`
/// the position axes are the 2n-point lattices of the same extent; W has
/// position bandwidth twice that of k, so this is the alias-free sampling.
DenseKernel wigner_2d(const PhaseSpaceField& k, bool fine_positions = false);

}  // namespace wigner_lab
