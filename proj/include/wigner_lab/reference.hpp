#pragma once

#include <vector>

#include "wigner_lab/field.hpp"

namespace wigner_lab {

/// Airy(lambda) = \int e^{-i pi r^3 / 2} e^{-2 pi i lambda r} dr, valid for |lambda| <= 60.
/// With c = (3 pi / 2)^{1/3}: Airy(lambda) = (2 pi / c) Ai(2 pi lambda / c).
double airy_paper(double lambda);

struct AiryEvaluation {
  double value = 0.0;
  double imag_residual = 0.0;
};
/// Same integral with the imaginary part of the two half-line contributions kept.
/// `panel` is the Gauss-Legendre panel width on the real segment.
AiryEvaluation airy_paper_detail(double lambda, double panel = 0.025);

double airy_scale_factor();  // 2 pi / (3 pi / 2)^{1/3}

/// psi = Airy * e^{-2 pi l^2}, by quadrature on the steepest-descent line of
/// its Fourier integral; accurate far into the decaying side.
double airy_gaussian(double lambda);

/// Singular part of a distribution on the plane: a line {axis coordinate = position}
/// carrying `density` times the 1D delta across it and constant along it.
struct SingularLine {
  int axis = 0;
  double position = 0.0;
  double density = 1.0;
};

/// W(1 + delta) = delta (x) 1 + 1 (x) delta + 4 cos(4 pi x xi).
struct AppendixWigner {
  PhaseSpaceField smooth;
  std::vector<SingularLine> lines;

  /// Always throws: the lines are not functions.
  PhaseSpaceField densify() const;

  /// Convolution with s_x(x) s_xi(xi). Both profiles need a spectrum; the
  /// lines are resolved by sifting and the cosine part by 1D quadrature over
  /// |a| <= radius.
  PhaseSpaceField smoothed(const Profile& s_x, const Profile& s_xi, double radius) const;
};

AppendixWigner appendix_wigner_one_plus_delta(const Grid2D& grid);

/// W(1, delta)(x, xi) = 2 e^{-4 pi i x xi}.
PhaseSpaceField appendix_wigner_one_delta(const Grid2D& grid);

/// V_phi 1 = e^{-2 pi i x xi} e^{-pi xi^2} and V_phi delta = e^{-pi x^2}.
PhaseSpaceField appendix_stft_one(const Grid2D& grid);
PhaseSpaceField appendix_stft_delta(const Grid2D& grid);

/// H(1 + delta) = e^{-2 pi x^2} + e^{-2 pi xi^2} + 2 cos(2 pi x xi) e^{-pi (x^2 + xi^2)}.
PhaseSpaceField appendix_husimi_one_plus_delta(const Grid2D& grid);

/// W(1 + delta) * e^{-|u| - |v|} split into the line terms 2 (e^{-|x|} + e^{-|xi|})
/// and the cosine term 4 cos(4 pi u v) * e^{-|u| - |v|}.
struct BesselSmoothed {
  PhaseSpaceField lines;
  PhaseSpaceField cosine;
  PhaseSpaceField total;
};
BesselSmoothed appendix_bessel_smoothed_parts(const Grid2D& grid);
PhaseSpaceField appendix_bessel_smoothed(const Grid2D& grid);

}  // namespace wigner_lab
