#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "wigner_lab/field.hpp"

namespace wigner_lab {

enum class FourierSign { forward, inverse };

/// Riemann-sum approximation of \int f(t) e^{-+2 pi i t w} dt on the reciprocal
/// lattice. The output is sampled on Grid1D(out_center, n / (4 h), n); the
/// forward transform defaults to center 0. An inverse transform of a
/// forward-transformed signal reproduces it when out_center is the original center.
Signal dft(const Signal& signal, FourierSign sign, double out_center = 0.0);

/// Band-limited (periodic) upsampling: n * factor samples over the same extent.
Signal fourier_interpolate(const Signal& signal, std::size_t factor);

/// Continuous convolution approximated on the lattice: both axes of `field`
/// convolved with `smoother`, which must share spacings and sizes and be
/// centered at the origin. Values outside the lattice are taken as zero.
PhaseSpaceField convolve_field(const PhaseSpaceField& field, const PhaseSpaceField& smoother);

/// Separable variant: convolve the listed axes with per-axis 1D smoothers
/// (centered at 0, same spacing and size as the field axis).
PhaseSpaceField convolve_field(const PhaseSpaceField& field, std::span<const int> axes,
                               std::span<const Signal> smoothers);
DenseKernel convolve_field(const DenseKernel& field, std::span<const int> axes,
                           std::span<const Signal> smoothers);

namespace detail {

/// In-place unnormalized FFT (FFTW plan cache, thread-safe).
void fft_inplace(std::span<std::complex<double>> data, FourierSign sign);

/// Multiply the zero-padded (2n) spectrum of every line along `axis` by
/// `weights` (length 2n, standard FFT bin order) and transform back.
void apply_axis_weights(std::vector<std::complex<double>>& data, std::span<const std::size_t> shape,
                        int axis, std::span<const std::complex<double>> weights);

/// Apply a multiplier m(w_k) along one axis, zero-padding the axis to twice
/// its length. `spacing` is the axis sample spacing; w_k are the padded DFT
/// frequencies.
template <class Multiplier>
void multiply_along_axis(std::vector<std::complex<double>>& data, std::span<const std::size_t> shape,
                         int axis, double spacing, Multiplier&& m);

}  // namespace detail
}  // namespace wigner_lab

#include "wigner_lab/detail/fourier_impl.hpp"
