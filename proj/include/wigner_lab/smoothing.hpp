#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "wigner_lab/field.hpp"

namespace wigner_lab {

/// Per-axis smoother: Gaussian e^{-2 pi u^2} (not renormalized, mass 2^{-1/2}) or
/// the Bessel potential v_M, whose Fourier transform is <omega>^M.
struct SmoothingSpec {
  enum class Kind { gaussian, bessel };

  Kind kind = Kind::gaussian;
  int M = -6;
  std::vector<int> axes{0, 1, 2, 3};

  static SmoothingSpec gaussian(std::vector<int> axes = {0, 1, 2, 3});
  static SmoothingSpec bessel(int M, std::vector<int> axes = {0, 1, 2, 3});

  /// Fourier transform of the 1D smoother.
  cplx multiplier(double omega) const;
  Spectrum spectrum() const;
  /// 1D smoother profile.
  Profile profile() const;
  /// |u| beyond which the smoother is below 1e-16 of its peak.
  double radius() const;
  /// Which decay hypotheses the chosen order satisfies.
  std::string hypotheses() const;

  nlohmann::json to_json() const;
  static SmoothingSpec from_json(const nlohmann::json& j);
};

/// v_M(x) = \int e^{2 pi i x omega} <omega>^M d omega on `grid`, by an inverse DFT
/// over a widened reciprocal lattice (|omega| < widening * Nyquist). widening = 0
/// picks max(8, the power of two reaching |omega| >= 4096). The node x = 0 also
/// receives the exact truncated tail 2 \int_Omega^inf <omega>^M d omega.
Signal bessel_potential(int M, const Grid1D& grid, std::size_t widening = 0);

/// Closed form 2 pi^s / Gamma(s) |x|^{s-1/2} K_{s-1/2}(2 pi |x|), s = -M/2.
double bessel_potential_exact(int M, double x);

/// max |v_M(widening) - v_M(2 widening)| on the grid.
double bessel_potential_convergence(int M, const Grid1D& grid, std::size_t widening = 0);

/// Smoothing of a Wigner kernel over the axes in `spec`. Dense kernels are
/// multiplied by the smoother spectrum along each axis (zero-padded); factored
/// kernels convolve their profiles exactly.
KernelField smooth_kernel(const KernelField& k, const SmoothingSpec& spec, std::vector<std::string>* warnings = nullptr);

}  // namespace wigner_lab
