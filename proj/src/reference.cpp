#include "wigner_lab/reference.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>

#include "wigner_lab/errors.hpp"
#include "wigner_lab/fourier.hpp"
#include "wigner_lab/parallel.hpp"

namespace wigner_lab {

namespace {

using std::numbers::pi;
using GL = boost::math::quadrature::gauss<double, 20>;

// \int_a^b f by composite 20-point Gauss-Legendre on panels of width <= panel.
template <class F>
cplx gauss_legendre(F&& f, double a, double b, double panel) {
  const auto& x = GL::abscissa();
  const auto& w = GL::weights();
  const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / panel)));
  const double h = (b - a) / panels;
  cplx acc{};
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double u = 0.5 * h * x[i];
      acc += w[i] * (f(mid + u) + (x[i] == 0.0 ? cplx{} : f(mid - u)));
    }
  }
  return acc * (0.5 * h);
}

// \int_0^inf e^{i s (pi r^3 / 2 + 2 pi lambda r)} dr with s = -1 for the positive
// half-line and s = +1 for the mirrored negative one.
cplx airy_half(double lambda, double s, double panel) {
  const double R = std::sqrt(std::max(-4.0 * lambda / 3.0, 0.0)) + 1.0;
  auto g = [&](cplx r) { return std::exp(cplx(0.0, s) * (pi * r * r * r / 2.0 + 2.0 * pi * lambda * r)); };
  const cplx seg = gauss_legendre([&](double r) { return g(cplx(r, 0.0)); }, 0.0, R, panel);
  // Steepest-descent-like ray into the sector where e^{i s pi r^3 / 2} decays.
  const cplx dir = std::polar(1.0, s * pi / 6.0);
  const cplx ray = gauss_legendre([&](double rho) { return g(R + rho * dir) * dir; }, 0.0, 6.0, 0.05);
  return seg + ray;
}

double line_mass(const Profile& p) {
  if (!p.spectrum()) throw DomainError("smoothing profile needs a spectrum");
  return p.spectrum()->fn(0.0).real();
}

// Sample a fine-grid signal at x, taking the node value when x is (numerically) a node.
cplx sample_node(const Signal& s, double x) {
  const double u = (x - s.grid.start()) / s.grid.spacing();
  const double r = std::round(u);
  if (std::abs(u - r) < 1e-6 && r >= 0.0 && r < static_cast<double>(s.grid.n()))
    return s.samples[static_cast<std::size_t>(r)];
  return interpolate(s, x);
}

std::size_t pow2_at_least(double v) {
  std::size_t k = 1;
  while (static_cast<double>(k) < v) k *= 2;
  return k;
}

}  // namespace

double airy_scale_factor() { return 2.0 * pi / std::cbrt(1.5 * pi); }

AiryEvaluation airy_paper_detail(double lambda, double panel) {
  if (!(std::abs(lambda) <= 60.0)) throw DomainError("airy_paper is evaluated only for |lambda| <= 60");
  if (lambda >= 1.0) {
    // Contour through the saddle r = -i a, a = (4 lambda / 3)^{1/2}: on r = s - i a the integrand is
    // e^{-pi a^3} e^{-3 pi a s^2 / 2} e^{-i pi s^3 / 2}, so the decay is factored out exactly.
    const double a = std::sqrt(4.0 * lambda / 3.0);
    const double reach = std::sqrt(80.0 / (3.0 * pi * a));
    auto h = [&](double sgn) {
      return gauss_legendre([&](double s) { return std::polar(std::exp(-1.5 * pi * a * s * s), sgn * pi * s * s * s / 2.0); },
                            0.0, reach, panel);
    };
    const cplx total = (h(-1.0) + h(1.0)) * std::exp(-pi * a * a * a);
    return {total.real(), std::abs(total.imag())};
  }
  const cplx total = airy_half(lambda, -1.0, panel) + airy_half(lambda, 1.0, panel);
  return {total.real(), std::abs(total.imag())};
}

double airy_paper(double lambda) {
  const AiryEvaluation a = airy_paper_detail(lambda);
  if (a.imag_residual > 1e-8) throw NumericalGuard("Airy quadrature imaginary residual above 1e-8");
  return a.value;
}

double airy_gaussian(double lambda) {
  // psi(l) = 2^{-1/2} \int e^{f(r)} dr, f(r) = -i pi r^3 / 2 - pi r^2 / 2 - 2 pi i l r, on the
  // line r = t - i s through the saddle 3 s^2 / 2 + s = 2 l; Re f = Re f(-i s) - pi (3 s + 1) t^2 / 2.
  const double s = lambda > 0.0 ? (std::sqrt(1.0 + 12.0 * lambda) - 1.0) / 3.0 : 0.0;
  auto f = [&](cplx r) { return cplx(0.0, -pi / 2.0) * r * r * r - pi * r * r / 2.0 - cplx(0.0, 2.0 * pi * lambda) * r; };
  const cplx f0 = f(cplx(0.0, -s));
  const double reach = std::sqrt(80.0 / (pi * (3.0 * s + 1.0)));
  const cplx total =
      gauss_legendre([&](double t) { return std::exp(f(cplx(t, -s)) - f0.real()); }, -reach, reach, 0.025);
  return (total * std::exp(f0.real())).real() / std::sqrt(2.0);
}

PhaseSpaceField AppendixWigner::densify() const {
  throw DistributionalError("W(1 + delta) carries delta lines on {x = 0} and {xi = 0}; smooth it before sampling");
}

PhaseSpaceField AppendixWigner::smoothed(const Profile& s_x, const Profile& s_xi, double radius) const {
  if (!s_xi.spectrum()) throw DomainError("smoothing profile in xi needs a spectrum");
  const double mass_x = line_mass(s_x), mass_xi = line_mass(s_xi);
  const auto& spec = s_xi.spectrum()->fn;
  const double step = 1.0 / 256.0;
  const long m = static_cast<long>(std::ceil(radius / step));
  PhaseSpaceField out(smooth.grid);
  const Grid2D& g = smooth.grid;
  parallel_for(g.axis0.n(), [&](std::size_t j) {
    const double x = g.axis0.point(j);
    for (std::size_t k = 0; k < g.axis1.n(); ++k) {
      const double xi = g.axis1.point(k);
      // 4 \int s_x(a) Re[e^{4 pi i (x - a) xi} s_xi^(2 (x - a))] da
      cplx acc{};
      for (long i = -m; i <= m; ++i) {
        const double a = static_cast<double>(i) * step;
        const double w = (i == -m || i == m) ? 0.5 : 1.0;
        acc += w * s_x(a) * std::polar(1.0, 4.0 * pi * (x - a) * xi) * spec(2.0 * (x - a));
      }
      double v = 4.0 * (acc * step).real();
      for (const auto& line : lines) {
        if (line.axis == 0)
          v += line.density * s_x(x - line.position).real() * mass_xi;
        else
          v += line.density * mass_x * s_xi(xi - line.position).real();
      }
      out.at(j, k) = v;
    }
  });
  return out;
}

AppendixWigner appendix_wigner_one_plus_delta(const Grid2D& grid) {
  AppendixWigner w{PhaseSpaceField::sample(grid, [](double x, double xi) { return cplx(4.0 * std::cos(4.0 * pi * x * xi)); }),
                   {SingularLine{0, 0.0, 1.0}, SingularLine{1, 0.0, 1.0}}};
  return w;
}

PhaseSpaceField appendix_wigner_one_delta(const Grid2D& grid) {
  return PhaseSpaceField::sample(grid, [](double x, double xi) { return 2.0 * std::polar(1.0, -4.0 * pi * x * xi); });
}

PhaseSpaceField appendix_stft_one(const Grid2D& grid) {
  return PhaseSpaceField::sample(grid, [](double x, double xi) { return std::polar(std::exp(-pi * xi * xi), -2.0 * pi * x * xi); });
}

PhaseSpaceField appendix_stft_delta(const Grid2D& grid) {
  return PhaseSpaceField::sample(grid, [](double x, double) { return cplx(std::exp(-pi * x * x)); });
}

PhaseSpaceField appendix_husimi_one_plus_delta(const Grid2D& grid) {
  return PhaseSpaceField::sample(grid, [](double x, double xi) {
    return cplx(std::exp(-2.0 * pi * x * x) + std::exp(-2.0 * pi * xi * xi) +
                2.0 * std::cos(2.0 * pi * x * xi) * std::exp(-pi * (x * x + xi * xi)));
  });
}

BesselSmoothed appendix_bessel_smoothed_parts(const Grid2D& grid) {
  BesselSmoothed out{PhaseSpaceField(grid), PhaseSpaceField(grid), PhaseSpaceField(grid)};
  const Grid1D& gx = grid.axis0;
  const Grid1D& gxi = grid.axis1;
  for (std::size_t j = 0; j < gx.n(); ++j)
    for (std::size_t k = 0; k < gxi.n(); ++k)
      out.lines.at(j, k) = 2.0 * (std::exp(-std::abs(gx.point(j))) + std::exp(-std::abs(gxi.point(k))));

  // For each xi: C(x) = \int L(u) e^{-|x - u|} du with L(u) = 2 cos(4 pi u xi) / (1 + 16 pi^2 u^2),
  // computed on a fine periodic lattice with the exact multiplier 2 / (1 + 4 pi^2 p^2).
  double max_xi = 0.0;
  for (std::size_t k = 0; k < gxi.n(); ++k) max_xi = std::max(max_xi, std::abs(gxi.point(k)));
  const std::size_t refine = pow2_at_least(gx.spacing() * 2.0 * (2.0 * max_xi + 60.0));
  const double fine_dx = gx.spacing() / static_cast<double>(refine);
  const double reach = std::max(std::abs(gx.start()), std::abs(gx.start() + 2.0 * gx.half_width())) + 40.0;
  const std::size_t half_nodes = pow2_at_least(reach / fine_dx);
  const Grid1D fine(0.0, static_cast<double>(half_nodes) * fine_dx, 2 * half_nodes);
  parallel_for(gxi.n(), [&](std::size_t k) {
    const double xi = gxi.point(k);
    Signal l = Signal::sample(fine, [&](double u) { return cplx(2.0 * std::cos(4.0 * pi * u * xi) / (1.0 + 16.0 * pi * pi * u * u)); });
    Signal spec = dft(l, FourierSign::forward);
    for (std::size_t q = 0; q < spec.grid.n(); ++q) {
      const double p = spec.grid.point(q);
      spec.samples[q] *= 2.0 / (1.0 + 4.0 * pi * pi * p * p);
    }
    const Signal c = dft(spec, FourierSign::inverse, 0.0);
    for (std::size_t j = 0; j < gx.n(); ++j) out.cosine.at(j, k) = 4.0 * sample_node(c, gx.point(j)).real();
  });
  for (std::size_t i = 0; i < out.total.samples.size(); ++i)
    out.total.samples[i] = out.lines.samples[i] + out.cosine.samples[i];
  return out;
}

PhaseSpaceField appendix_bessel_smoothed(const Grid2D& grid) { return appendix_bessel_smoothed_parts(grid).total; }

}  // namespace wigner_lab
