#include "wigner_lab/profile.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "wigner_lab/errors.hpp"
#include "wigner_lab/fourier.hpp"

namespace wigner_lab {

Spectrum Spectrum::times(const Spectrum& other) const {
  Spectrum out;
  auto f = fn;
  auto g = other.fn;
  out.fn = [f, g](double r) { return f(r) * g(r); };
  out.gaussian_rate = gaussian_rate + other.gaussian_rate;
  out.algebraic_order = algebraic_order + other.algebraic_order;
  out.chirped = chirped || other.chirped;
  return out;
}

Spectrum Spectrum::shifted(double nu) const {
  Spectrum out = *this;
  auto f = fn;
  out.fn = [f, nu](double r) { return f(r + nu); };
  return out;
}

Profile Profile::delta() {
  Profile p;
  p.kind_ = Kind::delta;
  p.spectrum_ = Spectrum{[](double) { return std::complex<double>(1.0, 0.0); }, 0.0, 0.0};
  return p;
}

Profile Profile::from_function(std::function<std::complex<double>(double)> fn, std::optional<Spectrum> spectrum) {
  Profile p;
  p.kind_ = Kind::function;
  p.fn_ = std::move(fn);
  p.spectrum_ = std::move(spectrum);
  return p;
}

Profile Profile::from_spectrum(Spectrum spectrum) {
  Profile p;
  p.kind_ = Kind::spectral;
  p.spectrum_ = std::move(spectrum);
  return p;
}

Profile Profile::from_samples(const Signal& samples, std::optional<Spectrum> spectrum) {
  Profile p;
  p.kind_ = Kind::sampled;
  p.samples_ = std::make_shared<const Signal>(samples);
  p.spectrum_ = std::move(spectrum);
  return p;
}

bool Profile::pointwise() const {
  switch (kind_) {
    case Kind::delta: return false;
    case Kind::spectral: return spectrum_->realizable();
    default: return true;
  }
}

Grid1D Profile::canonical_grid() { return Grid1D(0.0, 64.0, 16384); }

void Profile::realize() const {
  if (samples_) return;
  if (kind_ == Kind::function) {
    samples_ = std::make_shared<const Signal>(Signal::sample(canonical_grid(), fn_));
    return;
  }
  if (!spectrum_ || !spectrum_->realizable())
    throw DistributionalError("profile is a distribution (delta or non-integrable spectrum); smooth it first");
  double cutoff = 4096.0;
  if (spectrum_->gaussian_rate > 0.0)
    cutoff = std::sqrt(46.0 / spectrum_->gaussian_rate);
  else if (spectrum_->algebraic_order < -2.0)
    cutoff = std::clamp(std::pow(10.0, 12.0 / (-spectrum_->algebraic_order - 1.0)), 64.0, 4096.0);
  samples_ = std::make_shared<const Signal>(realize_spectrum(*spectrum_, canonical_grid(), cutoff));
}

const Signal& Profile::samples() const {
  realize();
  return *samples_;
}

std::complex<double> Profile::operator()(double l) const {
  switch (kind_) {
    case Kind::delta:
      throw DistributionalError("pointwise value of a delta factor requested; smooth the kernel first");
    case Kind::function: return fn_(l);
    default: return interpolate(samples(), l);
  }
}

Profile Profile::convolve(const Profile& other) const {
  if (is_delta()) return other;
  if (other.is_delta()) return *this;
  std::optional<Spectrum> product;
  if (spectrum_ && other.spectrum_) {
    product = spectrum_->times(*other.spectrum_);
    if (product->realizable()) return from_spectrum(*product);
  }
  const Grid1D g = canonical_grid();
  const std::size_t n = g.n();
  const std::array<std::size_t, 1> shape{n};
  auto on_grid = [&](const Profile& p) {
    if (p.kind_ == Kind::sampled && p.samples_->grid == g) return *p.samples_;
    return Signal::sample(g, [&](double x) { return p(x); });
  };
  // Pointwise factor on the lattice, the other applied through its spectrum.
  auto apply = [&](const Profile& pointwise_factor, const Spectrum& spec) {
    std::vector<cplx> data = on_grid(pointwise_factor).samples;
    detail::multiply_along_axis(data, shape, 0, g.spacing(), [&](double r) { return spec.fn(r); });
    return from_samples(Signal(g, std::move(data)), product);
  };
  if (other.spectrum_ && pointwise() && kind_ != Kind::spectral) return apply(*this, *other.spectrum_);
  if (spectrum_ && other.pointwise() && other.kind_ != Kind::spectral) return apply(other, *spectrum_);
  if (!pointwise() || !other.pointwise())
    throw DistributionalError("convolution of two distributional profiles is not a function");
  const Signal a = on_grid(*this);
  const Signal b = on_grid(other);
  std::vector<cplx> w(2 * n, cplx{});
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t slot = (i + 2 * n - n / 2) % (2 * n);
    w[slot] = b.samples[i] * g.spacing();
  }
  detail::fft_inplace(w, FourierSign::forward);
  std::vector<cplx> data = a.samples;
  detail::apply_axis_weights(data, shape, 0, w);
  return from_samples(Signal(g, std::move(data)), product);
}

Signal realize_spectrum(const Spectrum& s, const Grid1D& grid, double cutoff) {
  const double nyquist = static_cast<double>(grid.n()) / (4.0 * grid.half_width());
  std::size_t k = 1;
  while (static_cast<double>(k) * nyquist < cutoff) k *= 2;
  const std::size_t m = k * grid.n();
  const Grid1D rgrid(0.0, static_cast<double>(k) * nyquist, m);
  Signal spec = Signal::sample(rgrid, s.fn);
  Signal fine = dft(spec, FourierSign::forward, grid.center());
  Signal out(grid);
  for (std::size_t j = 0; j < grid.n(); ++j) out.samples[j] = fine.samples[j * k];
  return out;
}

std::complex<double> interpolate(const Signal& s, double x) {
  const Grid1D& g = s.grid;
  const double u = (x - g.start()) / g.spacing();
  const double fl = std::floor(u);
  const long i0 = static_cast<long>(fl);
  const double t = u - fl;
  const long n = static_cast<long>(g.n());
  if (i0 < -3 || i0 > n + 2) return {0.0, 0.0};
  if (t == 0.0) return (i0 >= 0 && i0 < n) ? s.samples[static_cast<std::size_t>(i0)] : std::complex<double>{};
  // Nodes i0-2 .. i0+3 at offsets -2..3 from i0.
  std::complex<double> acc{};
  for (int a = -2; a <= 3; ++a) {
    const long idx = i0 + a;
    if (idx < 0 || idx >= n) continue;
    double w = 1.0;
    for (int b = -2; b <= 3; ++b)
      if (b != a) w *= (t - b) / static_cast<double>(a - b);
    acc += w * s.samples[static_cast<std::size_t>(idx)];
  }
  return acc;
}

}  // namespace wigner_lab
