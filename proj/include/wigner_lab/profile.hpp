#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <optional>

#include "wigner_lab/grid.hpp"

namespace wigner_lab {

struct Signal;

/// Fourier-side description of a profile p(l) = \int s(r) e^{-2 pi i l r} dr, with
/// the envelope bound |s(r)| <= C exp(-gaussian_rate r^2) <r>^algebraic_order.
struct Spectrum {
  std::function<std::complex<double>(double)> fn;
  double gaussian_rate = 0.0;
  double algebraic_order = 0.0;
  /// Carries a polynomial chirp (e.g. e^{-i pi r^3 / 2}); with only algebraic
  /// decay such a spectrum cannot be sampled out to its cutoff without aliasing.
  bool chirped = false;

  /// Integrable enough to realize the profile as a bounded function.
  bool realizable() const { return gaussian_rate > 0.0 || (!chirped && algebraic_order <= -2.0); }
  Spectrum times(const Spectrum& other) const;
  /// Spectrum of p(l) e^{2 pi i nu l}.
  Spectrum shifted(double nu) const;
};

/// A one-variable factor of a factored kernel: a delta, a function, or a
/// sampled profile. Profiles that carry a spectrum convolve exactly by
/// multiplying spectra.
class Profile {
 public:
  static Profile delta();
  static Profile from_function(std::function<std::complex<double>(double)> fn,
                               std::optional<Spectrum> spectrum = std::nullopt);
  static Profile from_spectrum(Spectrum spectrum);
  static Profile from_samples(const Signal& samples, std::optional<Spectrum> spectrum = std::nullopt);

  bool is_delta() const { return kind_ == Kind::delta; }
  bool pointwise() const;
  std::complex<double> operator()(double l) const;

  const std::optional<Spectrum>& spectrum() const { return spectrum_; }

  /// (this * other)(l) = \int this(l - u) other(u) du. Uses the product of
  /// spectra when it is realizable, else the lattice samples of the pointwise
  /// factor times the exact spectrum of the other.
  Profile convolve(const Profile& other) const;

  /// Sampled realization on the canonical profile grid (or the grid of origin).
  const Signal& samples() const;

  /// Canonical lattice for realized profiles: [-64, 64) at spacing 1/128.
  static Grid1D canonical_grid();

 private:
  enum class Kind { delta, function, sampled, spectral };
  Kind kind_ = Kind::delta;
  std::function<std::complex<double>(double)> fn_;
  std::optional<Spectrum> spectrum_;
  mutable std::shared_ptr<const Signal> samples_;

  void realize() const;
};

/// Realize p(l) = \int s(r) e^{-2 pi i l r} dr on `grid` by a Riemann sum over
/// |r| < cutoff. Exposed for the Bessel potential and tests.
Signal realize_spectrum(const Spectrum& s, const Grid1D& grid, double cutoff);

/// Sixth-order Lagrange interpolation of uniformly sampled data; 0 outside.
std::complex<double> interpolate(const Signal& s, double x);

}  // namespace wigner_lab
