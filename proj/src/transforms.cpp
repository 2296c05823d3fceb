#include "wigner_lab/transforms.hpp"

#include <cmath>
#include <numbers>

#include "wigner_lab/errors.hpp"
#include "wigner_lab/fourier.hpp"
#include "wigner_lab/parallel.hpp"

namespace wigner_lab {

namespace {

using std::numbers::pi;

// Sum_m a_m e^{-2 pi i xi_p t_m} with t_m = (m - n/2) dt and xi_p = (p - n/2) / (n dt).
void centered_fft(std::span<cplx> a) {
  const std::size_t n = a.size();
  for (std::size_t m = 1; m < n; m += 2) a[m] = -a[m];
  detail::fft_inplace(a, FourierSign::forward);
  const bool flip = (n / 2) % 2 == 1;
  for (std::size_t p = 0; p < n; ++p)
    if ((p % 2 == 1) != flip) a[p] = -a[p];
}

void require_same_grid(const Signal& f, const Signal& g) {
  if (f.grid != g.grid) throw GridMismatch("signals must share a grid");
}

// 2D band-limited upsampling by 2 along both axes.
std::vector<cplx> upsample_2d(const PhaseSpaceField& k) {
  const std::size_t n0 = k.grid.axis0.n(), n1 = k.grid.axis1.n();
  std::vector<cplx> rows(n0 * 2 * n1);
  parallel_for(n0, [&](std::size_t j) {
    Signal s(k.grid.axis1, std::vector<cplx>(k.samples.begin() + j * n1, k.samples.begin() + (j + 1) * n1));
    Signal u = fourier_interpolate(s, 2);
    std::copy(u.samples.begin(), u.samples.end(), rows.begin() + j * 2 * n1);
  });
  std::vector<cplx> out(4 * n0 * n1);
  parallel_for(2 * n1, [&](std::size_t l) {
    Signal s(k.grid.axis0);
    for (std::size_t j = 0; j < n0; ++j) s.samples[j] = rows[j * 2 * n1 + l];
    Signal u = fourier_interpolate(s, 2);
    for (std::size_t j = 0; j < 2 * n0; ++j) out[j * 2 * n1 + l] = u.samples[j];
  });
  return out;
}

}  // namespace

double WindowSpec::amplitude() const {
  switch (normalization) {
    case Normalization::l2: return std::pow(2.0, 0.25);
    case Normalization::gabor: return std::pow(2.0, -0.25);
    default: return 1.0;
  }
}

double WindowSpec::operator()(double t) const { return amplitude() * std::exp(-pi * t * t); }

PhaseSpaceField cross_wigner(const Signal& f, const Signal& g) {
  require_same_grid(f, g);
  const Grid1D& grid = f.grid;
  const std::size_t n = grid.n();
  const double dx = grid.spacing();
  const Signal fu = fourier_interpolate(f, 2);
  const Signal gu = fourier_interpolate(g, 2);
  const long nu = static_cast<long>(2 * n);
  PhaseSpaceField out(Grid2D{grid, Grid1D(0.0, static_cast<double>(n) / (4.0 * grid.half_width()), n)});
  parallel_for(n, [&](std::size_t j) {
    auto term = [&](long m) -> cplx {
      const long p = 2 * static_cast<long>(j) + m;
      const long q = 2 * static_cast<long>(j) - m;
      if (p < 0 || p >= nu || q < 0 || q >= nu) return {};
      return fu.samples[static_cast<std::size_t>(p)] * std::conj(gu.samples[static_cast<std::size_t>(q)]);
    };
    const long half = static_cast<long>(n / 2);
    std::vector<cplx> a(n);
    for (std::size_t mm = 1; mm < n; ++mm) a[mm] = term(static_cast<long>(mm) - half);
    // Lags +-n/2 alias to the same frequencies; split the weight between them.
    a[0] = 0.5 * (term(-half) + term(half));
    centered_fft(a);
    for (std::size_t k = 0; k < n; ++k) out.at(j, k) = dx * a[k];
  });
  return out;
}

PhaseSpaceField wigner(const Signal& f) { return cross_wigner(f, f); }

PhaseSpaceField stft(const Signal& f, const WindowSpec& window) {
  const Grid1D& grid = f.grid;
  const std::size_t n = grid.n();
  PhaseSpaceField out(Grid2D{grid, grid.reciprocal()});
  parallel_for(n, [&](std::size_t j) {
    const double x = grid.point(j);
    Signal h(grid);
    for (std::size_t k = 0; k < n; ++k) h.samples[k] = f.samples[k] * window(grid.point(k) - x);
    Signal v = dft(h, FourierSign::forward);
    for (std::size_t k = 0; k < n; ++k) out.at(j, k) = v.samples[k];
  });
  return out;
}

PhaseSpaceField husimi(const Signal& f) {
  PhaseSpaceField v = stft(f, WindowSpec{WindowSpec::Kind::standard_gaussian, WindowSpec::Normalization::none});
  for (auto& s : v.samples) s = std::norm(s);
  return v;
}

PhaseSpaceField husimi_via_convolution(const Signal& f) {
  PhaseSpaceField wf = wigner(f);
  const Grid1D centered(0.0, f.grid.half_width(), f.grid.n());
  Signal phi = Signal::sample(centered, [](double t) { return std::exp(-pi * t * t); });
  PhaseSpaceField wphi = wigner(phi);
  PhaseSpaceField h = convolve_field(wf, wphi);
  for (auto& s : h.samples) s = s.real();
  return h;
}

double polarization_check(const Signal& f, const Signal& g) {
  require_same_grid(f, g);
  Signal sum(f.grid);
  for (std::size_t j = 0; j < f.grid.n(); ++j) sum.samples[j] = f.samples[j] + g.samples[j];
  const PhaseSpaceField ws = wigner(sum), wf = wigner(f), wg = wigner(g), wfg = cross_wigner(f, g);
  double r = 0.0;
  for (std::size_t i = 0; i < ws.samples.size(); ++i)
    r = std::max(r, std::abs(ws.samples[i] - wf.samples[i] - wg.samples[i] - 2.0 * wfg.samples[i].real()));
  return r;
}

DenseKernel wigner_2d(const PhaseSpaceField& k, bool fine_positions) {
  const Grid1D& g0 = k.grid.axis0;
  const Grid1D& g1 = k.grid.axis1;
  const std::size_t n0 = g0.n(), n1 = g1.n();
  const std::vector<cplx> up = upsample_2d(k);
  const long m0 = static_cast<long>(2 * n0), m1 = static_cast<long>(2 * n1);
  const Grid1D r0(0.0, static_cast<double>(n0) / (4.0 * g0.half_width()), n0);
  const Grid1D r1(0.0, static_cast<double>(n1) / (4.0 * g1.half_width()), n1);
  const std::size_t step = fine_positions ? 1 : 2;
  const Grid1D x0 = fine_positions ? Grid1D(g0.center(), g0.half_width(), 2 * n0) : g0;
  const Grid1D x1 = fine_positions ? Grid1D(g1.center(), g1.half_width(), 2 * n1) : g1;
  DenseKernel out(Grid4D{x0, r0, x1, r1});
  const double scale = g0.spacing() * g1.spacing();
  const std::size_t o1 = x1.n();
  parallel_for(x0.n() * o1, [&](std::size_t jl) {
    const long j = static_cast<long>((jl / o1) * step), l = static_cast<long>((jl % o1) * step);
    auto term = [&](long t0, long t1) -> cplx {
      const long p0 = j + t0, q0 = j - t0;
      const long p1 = l + t1, q1 = l - t1;
      if (p0 < 0 || p0 >= m0 || q0 < 0 || q0 >= m0 || p1 < 0 || p1 >= m1 || q1 < 0 || q1 >= m1) return {};
      return up[static_cast<std::size_t>(p0 * m1 + p1)] * std::conj(up[static_cast<std::size_t>(q0 * m1 + q1)]);
    };
    const long h0 = static_cast<long>(n0 / 2), h1 = static_cast<long>(n1 / 2);
    // Symmetrized lag sum: the +-n/2 lags share a slot with half weight each.
    struct Lags {
      long t[2];
      double w[2];
      int count;
    };
    auto lags = [](long t, long h) { return t == -h ? Lags{{-h, h}, {0.5, 0.5}, 2} : Lags{{t, 0}, {1.0, 0.0}, 1}; };
    std::vector<cplx> a(n0 * n1);
    for (std::size_t a0 = 0; a0 < n0; ++a0)
      for (std::size_t a1 = 0; a1 < n1; ++a1) {
        const Lags l0 = lags(static_cast<long>(a0) - h0, h0), l1 = lags(static_cast<long>(a1) - h1, h1);
        cplx v{};
        for (int u = 0; u < l0.count; ++u)
          for (int w = 0; w < l1.count; ++w) v += l0.w[u] * l1.w[w] * term(l0.t[u], l1.t[w]);
        a[a0 * n1 + a1] = v;
      }
    std::vector<cplx> line(std::max(n0, n1));
    for (std::size_t a0 = 0; a0 < n0; ++a0) centered_fft(std::span<cplx>(a.data() + a0 * n1, n1));
    for (std::size_t a1 = 0; a1 < n1; ++a1) {
      for (std::size_t a0 = 0; a0 < n0; ++a0) line[a0] = a[a0 * n1 + a1];
      centered_fft(std::span<cplx>(line.data(), n0));
      for (std::size_t a0 = 0; a0 < n0; ++a0) a[a0 * n1 + a1] = line[a0];
    }
    const std::size_t ju = jl / o1, lu = jl % o1;
    for (std::size_t p = 0; p < n0; ++p)
      for (std::size_t q = 0; q < n1; ++q) out.at(ju, p, lu, q) = scale * a[p * n1 + q];
  });
  return out;
}

}  // namespace wigner_lab
