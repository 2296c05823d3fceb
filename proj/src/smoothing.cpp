#include "wigner_lab/smoothing.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <numbers>

#include "wigner_lab/errors.hpp"
#include "wigner_lab/fourier.hpp"

namespace wigner_lab {

namespace {

using std::numbers::pi;

double bracket(double w) { return std::sqrt(1.0 + w * w); }

// 2 \int_Omega^inf (1 + w^2)^{M/2} dw via u = 1 / w.
double bessel_tail(int M, double omega) {
  auto f = [M](double u) {
    if (u == 0.0) return M == -2 ? 1.0 : 0.0;
    return std::pow(u, -M - 2.0) * std::pow(1.0 + u * u, M / 2.0);
  };
  return 2.0 * boost::math::quadrature::gauss<double, 30>::integrate(f, 0.0, 1.0 / omega);
}

// p(w) = s(-w) e^{2 pi i f w} for an even smoother s: the x- or eta-smoothing
// of a term with coefficient e^{2 pi i f (.)} folds into a convolution with p.
Profile modulated(const Profile& s, double f) {
  if (f == 0.0) return s;
  return Profile::from_function([s, f](double w) { return s(w) * std::polar(1.0, 2.0 * pi * f * w); },
                                s.spectrum()->shifted(f));
}

FactoredKernel smooth_factored(FactoredKernel k, const SmoothingSpec& spec) {
  const Profile s = spec.profile();
  for (int axis : spec.axes) {
    switch (axis) {
      case 1:
        for (auto& t : k.terms) t.frequency = t.frequency.convolve(s);
        break;
      case 2:
        for (auto& t : k.terms) t.position = t.position.convolve(s);
        break;
      case 0:
        for (auto& t : k.terms) t.position = t.position.convolve(modulated(s, t.x_freq));
        break;
      case 3: {
        bool fold = !k.pending_eta;
        for (const auto& t : k.terms) fold = fold && t.shift_is_constant();
        if (fold) {
          for (auto& t : k.terms) t.frequency = t.frequency.convolve(modulated(s, t.eta_freq));
        } else if (k.pending_eta) {
          k.pending_eta = PendingSmoother{k.pending_eta->profile.convolve(s), k.pending_eta->radius + spec.radius()};
        } else {
          k.pending_eta = PendingSmoother{s, spec.radius()};
        }
        break;
      }
      default: throw DomainError("smoothing axis out of range");
    }
  }
  return k;
}

DenseKernel smooth_dense(DenseKernel k, const SmoothingSpec& spec) {
  const auto shape = k.grid.shape();
  for (int axis : spec.axes) {
    if (axis < 0 || axis > 3) throw DomainError("smoothing axis out of range");
    detail::multiply_along_axis(k.samples, shape, axis, k.grid.axis(axis).spacing(),
                                [&](double w) { return spec.multiplier(w); });
  }
  return k;
}

}  // namespace

double bessel_potential_exact(int M, double x) {
  const double s = -M / 2.0;
  const double nu = s - 0.5;
  const double ax = std::abs(x);
  if (ax < 1e-12) return std::sqrt(pi) * std::tgamma(nu) / std::tgamma(s);
  if (2.0 * pi * ax > 700.0) return 0.0;
  return 2.0 * std::pow(pi, s) / std::tgamma(s) * std::pow(ax, nu) * boost::math::cyl_bessel_k(nu, 2.0 * pi * ax);
}

SmoothingSpec SmoothingSpec::gaussian(std::vector<int> axes) {
  SmoothingSpec s;
  s.kind = Kind::gaussian;
  s.axes = std::move(axes);
  return s;
}

SmoothingSpec SmoothingSpec::bessel(int M, std::vector<int> axes) {
  if (M > -2) throw DomainError("Bessel potential order must satisfy M <= -2");
  SmoothingSpec s;
  s.kind = Kind::bessel;
  s.M = M;
  s.axes = std::move(axes);
  return s;
}

cplx SmoothingSpec::multiplier(double omega) const {
  if (kind == Kind::gaussian) return std::exp(-pi * omega * omega / 2.0) / std::sqrt(2.0);
  return std::pow(bracket(omega), M);
}

Spectrum SmoothingSpec::spectrum() const {
  if (kind == Kind::gaussian)
    return Spectrum{[](double r) { return cplx(std::exp(-pi * r * r / 2.0) / std::sqrt(2.0)); }, pi / 2.0, 0.0};
  const int m = M;
  return Spectrum{[m](double r) { return cplx(std::pow(bracket(r), m)); }, 0.0, static_cast<double>(m)};
}

Profile SmoothingSpec::profile() const {
  if (kind == Kind::gaussian)
    return Profile::from_function([](double u) { return cplx(std::exp(-2.0 * pi * u * u)); }, spectrum());
  const int m = M;
  return Profile::from_function([m](double u) { return cplx(bessel_potential_exact(m, u)); }, spectrum());
}

double SmoothingSpec::radius() const { return kind == Kind::gaussian ? 2.5 : 7.0; }

std::string SmoothingSpec::hypotheses() const {
  if (kind == Kind::gaussian) return "gaussian: Schwartz smoother, all decay orders";
  if (M <= -6) return "bessel M <= -3d-3 = -6: within the pseudo-differential decay hypothesis";
  return "bessel M > -6: outside the pseudo-differential decay hypothesis (exploratory)";
}

nlohmann::json SmoothingSpec::to_json() const {
  nlohmann::json j;
  j["kind"] = kind == Kind::gaussian ? "gaussian" : "bessel";
  if (kind == Kind::bessel) j["M"] = M;
  nlohmann::json a = nlohmann::json::array();
  for (int ax : axes) a.push_back(axis_name(ax));
  j["axes"] = a;
  return j;
}

SmoothingSpec SmoothingSpec::from_json(const nlohmann::json& j) {
  std::vector<int> axes{0, 1, 2, 3};
  if (j.contains("axes")) {
    axes.clear();
    for (const auto& a : j.at("axes")) axes.push_back(axis_from_name(a.get<std::string>()));
  }
  const std::string kind = j.value("kind", "gaussian");
  if (kind == "gaussian") return gaussian(axes);
  if (kind == "bessel") return bessel(j.value("M", -6), axes);
  throw DomainError("unknown smoothing kind '" + kind + "' (expected gaussian or bessel)");
}

Signal bessel_potential(int M, const Grid1D& grid, std::size_t widening) {
  if (M > -2) throw DomainError("Bessel potential needs M <= -2 for an integrable multiplier");
  const double nyquist = static_cast<double>(grid.n()) / (4.0 * grid.half_width());
  if (widening == 0) {
    widening = 8;
    while (static_cast<double>(widening) * nyquist < 4096.0) widening *= 2;
  }
  const double omega = static_cast<double>(widening) * nyquist;
  Spectrum s{[M](double w) { return cplx(std::pow(bracket(w), M)); }, 0.0, static_cast<double>(M)};
  Signal v = realize_spectrum(s, grid, omega);
  const double tail = bessel_tail(M, omega);
  for (std::size_t j = 0; j < grid.n(); ++j) {
    v.samples[j] = v.samples[j].real();
    if (std::abs(grid.point(j)) < 1e-12 * grid.spacing()) v.samples[j] += tail;
  }
  return v;
}

double bessel_potential_convergence(int M, const Grid1D& grid, std::size_t widening) {
  const Signal a = bessel_potential(M, grid, widening);
  const double nyquist = static_cast<double>(grid.n()) / (4.0 * grid.half_width());
  std::size_t w = widening;
  if (w == 0) {
    w = 8;
    while (static_cast<double>(w) * nyquist < 4096.0) w *= 2;
  }
  const Signal b = bessel_potential(M, grid, 2 * w);
  double e = 0.0;
  for (std::size_t j = 0; j < grid.n(); ++j) e = std::max(e, std::abs(a.samples[j] - b.samples[j]));
  return e;
}

KernelField smooth_kernel(const KernelField& k, const SmoothingSpec& spec, std::vector<std::string>* warnings) {
  if (spec.axes.empty()) {
    if (warnings) warnings->push_back("smoothing over no axes: kernel returned unchanged");
    return k;
  }
  if (k.is_dense()) return KernelField{smooth_dense(k.dense(), spec)};
  return KernelField{smooth_factored(k.factored(), spec)};
}

}  // namespace wigner_lab
