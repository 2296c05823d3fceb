#include "wigner_lab/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "wigner_lab/errors.hpp"
#include "wigner_lab/parallel.hpp"

namespace wigner_lab {
namespace detail {
namespace {

// FFTW planning is not thread-safe; execution with new arrays is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    const auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    auto* buf = fftw_alloc_complex(n);
    fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    plans_.emplace(key, p);
    return p;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

}  // namespace

void fft_inplace(std::span<std::complex<double>> data, FourierSign sign) {
  if (data.empty()) return;
  const int s = sign == FourierSign::forward ? FFTW_FORWARD : FFTW_BACKWARD;
  fftw_plan p = plan_cache().get(data.size(), s);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(p, ptr, ptr);
}

void apply_axis_weights(std::vector<std::complex<double>>& data, std::span<const std::size_t> shape,
                        int axis, std::span<const std::complex<double>> weights) {
  const std::size_t len = shape[axis];
  const std::size_t padded = 2 * len;
  if (weights.size() != padded) throw SizingError("axis weights must have twice the axis length");
  std::size_t stride = 1;
  for (std::size_t a = axis + 1; a < shape.size(); ++a) stride *= shape[a];
  std::size_t outer = 1;
  for (int a = 0; a < axis; ++a) outer *= shape[a];
  const double norm = 1.0 / static_cast<double>(padded);

  parallel_for(outer * stride, [&](std::size_t line) {
    const std::size_t base = (line / stride) * len * stride + line % stride;
    std::vector<std::complex<double>> buf(padded);
    for (std::size_t j = 0; j < len; ++j) buf[j] = data[base + j * stride];
    fft_inplace(buf, FourierSign::forward);
    for (std::size_t k = 0; k < padded; ++k) buf[k] *= weights[k] * norm;
    fft_inplace(buf, FourierSign::inverse);
    for (std::size_t j = 0; j < len; ++j) data[base + j * stride] = buf[j];
  });
}

}  // namespace detail

Signal dft(const Signal& signal, FourierSign sign, double out_center) {
  const Grid1D& in = signal.grid;
  const std::size_t n = in.n();
  if (n % 2 != 0) throw SizingError("dft requires an even number of samples");
  const Grid1D out(out_center, static_cast<double>(n) / (4.0 * in.half_width()), n);
  const double s = sign == FourierSign::forward ? -1.0 : 1.0;
  const double a = in.start();
  const double b = out.start();
  constexpr double two_pi = 2.0 * std::numbers::pi;

  std::vector<cplx> buf(n);
  for (std::size_t k = 0; k < n; ++k)
    buf[k] = signal.samples[k] * std::polar(1.0, s * two_pi * b * in.point(k));
  detail::fft_inplace(buf, sign);
  Signal result(out);
  const double dx = in.spacing();
  for (std::size_t j = 0; j < n; ++j)
    result.samples[j] = dx * std::polar(1.0, s * two_pi * a * out.point(j)) * buf[j];
  return result;
}

Signal fourier_interpolate(const Signal& signal, std::size_t factor) {
  if (factor == 0) throw SizingError("interpolation factor must be at least 1");
  if (factor == 1) return signal;
  const std::size_t n = signal.grid.n();
  const std::size_t m = n * factor;
  std::vector<cplx> spec(signal.samples);
  detail::fft_inplace(spec, FourierSign::forward);
  std::vector<cplx> up(m, cplx{});
  const std::size_t half = n / 2;
  for (std::size_t k = 0; k < half; ++k) up[k] = spec[k];
  for (std::size_t k = half + 1; k < n; ++k) up[m - n + k] = spec[k];
  // Nyquist bin is split evenly between +n/2 and -n/2.
  up[half] = 0.5 * spec[half];
  up[m - half] = 0.5 * spec[half];
  detail::fft_inplace(up, FourierSign::inverse);
  const double norm = 1.0 / static_cast<double>(n);
  for (auto& v : up) v *= norm;
  // Original nodes are reproduced exactly in exact arithmetic; pin them.
  for (std::size_t j = 0; j < n; ++j) up[j * factor] = signal.samples[j];
  return Signal(signal.grid.refined(factor), std::move(up));
}

namespace {

void require_centered_match(const Grid1D& field, const Grid1D& smoother, const char* what) {
  if (smoother.n() != field.n() || std::abs(smoother.spacing() - field.spacing()) > 1e-12 * field.spacing() ||
      std::abs(smoother.center()) > 1e-12 * smoother.half_width())
    throw GridMismatch(std::string(what) +
                       ": smoother must be centered at 0 with the field's spacing and size");
}

// Padded spectrum of a centered smoother, scaled by its spacing.
std::vector<cplx> smoother_spectrum(const Signal& s) {
  const std::size_t n = s.grid.n();
  const std::size_t padded = 2 * n;
  std::vector<cplx> buf(padded, cplx{});
  for (std::size_t i = 0; i < n; ++i) {
    const long d = static_cast<long>(i) - static_cast<long>(n / 2);
    buf[static_cast<std::size_t>((d + static_cast<long>(padded)) % static_cast<long>(padded))] =
        s.samples[i] * s.grid.spacing();
  }
  detail::fft_inplace(buf, FourierSign::forward);
  return buf;
}

}  // namespace

PhaseSpaceField convolve_field(const PhaseSpaceField& field, const PhaseSpaceField& smoother) {
  require_centered_match(field.grid.axis0, smoother.grid.axis0, "convolve_field axis 0");
  require_centered_match(field.grid.axis1, smoother.grid.axis1, "convolve_field axis 1");
  const std::size_t n0 = field.grid.axis0.n(), n1 = field.grid.axis1.n();
  const std::size_t p0 = 2 * n0, p1 = 2 * n1;

  auto fft2 = [&](std::vector<cplx>& a, FourierSign sign) {
    const std::array<std::size_t, 2> shape{p0, p1};
    // rows
    parallel_for(p0, [&](std::size_t r) { detail::fft_inplace(std::span(a).subspan(r * p1, p1), sign); });
    // columns
    parallel_for(p1, [&](std::size_t c) {
      std::vector<cplx> col(p0);
      for (std::size_t r = 0; r < p0; ++r) col[r] = a[r * p1 + c];
      detail::fft_inplace(col, sign);
      for (std::size_t r = 0; r < p0; ++r) a[r * p1 + c] = col[r];
    });
    (void)shape;
  };

  std::vector<cplx> a(p0 * p1, cplx{}), b(p0 * p1, cplx{});
  for (std::size_t j = 0; j < n0; ++j)
    for (std::size_t k = 0; k < n1; ++k) a[j * p1 + k] = field.at(j, k);
  const double cell = smoother.grid.axis0.spacing() * smoother.grid.axis1.spacing();
  for (std::size_t j = 0; j < n0; ++j) {
    const long dj = static_cast<long>(j) - static_cast<long>(n0 / 2);
    const std::size_t pj = static_cast<std::size_t>((dj + static_cast<long>(p0)) % static_cast<long>(p0));
    for (std::size_t k = 0; k < n1; ++k) {
      const long dk = static_cast<long>(k) - static_cast<long>(n1 / 2);
      const std::size_t pk = static_cast<std::size_t>((dk + static_cast<long>(p1)) % static_cast<long>(p1));
      b[pj * p1 + pk] = smoother.at(j, k) * cell;
    }
  }
  fft2(a, FourierSign::forward);
  fft2(b, FourierSign::forward);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
  fft2(a, FourierSign::inverse);
  const double norm = 1.0 / static_cast<double>(p0 * p1);
  PhaseSpaceField out(field.grid);
  for (std::size_t j = 0; j < n0; ++j)
    for (std::size_t k = 0; k < n1; ++k) out.at(j, k) = a[j * p1 + k] * norm;
  return out;
}

namespace {

template <class Field>
Field convolve_separable(const Field& field, std::span<const int> axes, std::span<const Signal> smoothers,
                         auto axis_grid, std::vector<std::size_t> shape) {
  if (axes.empty()) throw SizingError("convolve_field: at least one axis is required");
  if (axes.size() != smoothers.size()) throw SizingError("convolve_field: one smoother per axis");
  Field out = field;
  for (std::size_t i = 0; i < axes.size(); ++i) {
    const int a = axes[i];
    if (a < 0 || static_cast<std::size_t>(a) >= shape.size())
      throw SizingError("convolve_field: axis index out of range");
    require_centered_match(axis_grid(a), smoothers[i].grid, "convolve_field");
    const auto w = smoother_spectrum(smoothers[i]);
    detail::apply_axis_weights(out.samples, shape, a, w);
  }
  return out;
}

}  // namespace

PhaseSpaceField convolve_field(const PhaseSpaceField& field, std::span<const int> axes,
                               std::span<const Signal> smoothers) {
  return convolve_separable(
      field, axes, smoothers,
      [&](int a) -> const Grid1D& { return a == 0 ? field.grid.axis0 : field.grid.axis1; },
      {field.grid.axis0.n(), field.grid.axis1.n()});
}

DenseKernel convolve_field(const DenseKernel& field, std::span<const int> axes,
                           std::span<const Signal> smoothers) {
  const auto s = field.grid.shape();
  return convolve_separable(
      field, axes, smoothers, [&](int a) -> const Grid1D& { return field.grid.axis(a); },
      std::vector<std::size_t>(s.begin(), s.end()));
}

}  // namespace wigner_lab
