#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <boost/math/special_functions/airy.hpp>
#include <cmath>
#include <numbers>

#include "wigner_lab/errors.hpp"
#include "wigner_lab/reference.hpp"

using namespace wigner_lab;
using std::numbers::pi;

namespace {

// \int e^{-eps r^2} cos(pi r^3 / 2 + 2 pi lambda r) dr by a fine trapezoid rule.
double damped_airy(double lambda, double eps) {
  const double L = std::sqrt(40.0 / eps);
  const double h = 0.2 / (1.5 * pi * L * L + 2.0 * pi * std::abs(lambda));
  double acc = 0.5;  // r = 0 term (half, the integrand is even)
  for (double r = h; r <= L; r += h)
    acc += std::exp(-eps * r * r) * std::cos(pi * r * r * r / 2.0 + 2.0 * pi * lambda * r);
  return 2.0 * acc * h;
}

// Richardson extrapolation of the damped integral to eps -> 0 (error expansion in powers of eps).
double airy_oracle(double lambda) {
  // Neville tableau in eps over eps = 0.04 / 2^k.
  double t[4];
  for (int k = 0; k < 4; ++k) t[k] = damped_airy(lambda, 0.04 / std::pow(2.0, k));
  for (int level = 1; level < 4; ++level) {
    const double f = std::pow(2.0, level);
    for (int k = 3; k >= level; --k) t[k] = (f * t[k] - t[k - 1]) / (f - 1.0);
  }
  return t[3];
}

double boost_airy(double lambda) {
  const double s = 2.0 * pi / std::cbrt(1.5 * pi);
  return s * boost::math::airy_ai(s * lambda);
}

const Grid2D kPlane{Grid1D(0.0, 8.0, 256), Grid1D(0.0, 8.0, 256)};

}  // namespace

TEST_CASE("Airy oracle: damped quadrature with Richardson extrapolation") {
  CHECK(std::abs(airy_paper(0.0) - airy_oracle(0.0)) < 1e-6);
  for (double l : {-3.0, -1.0, 0.5, 1.0}) {
    INFO("lambda = " << l);
    CHECK(std::abs(airy_paper(l) - airy_oracle(l)) < 1e-5);
  }
}

TEST_CASE("Airy normalization matches the scaled standard Airy function") {
  CHECK(airy_scale_factor() == doctest::Approx(2.0 * pi / std::cbrt(1.5 * pi)));
  CHECK(airy_paper(0.0) == doctest::Approx(airy_scale_factor() * boost::math::airy_ai(0.0)).epsilon(1e-12));
  for (double l = -60.0; l <= 8.0; l += 0.37)
    CHECK(std::abs(airy_paper(l) - boost_airy(l)) < 1e-11 * std::max(1.0, std::abs(boost_airy(l))) +
                                                         1e-12 * std::abs(boost_airy(l)));
  for (double l : {2.0, 4.0, 6.0, 8.0, 12.0})
    CHECK(airy_paper(l) == doctest::Approx(boost_airy(l)).epsilon(1e-10));
}

TEST_CASE("Airy decaying side, realness and refinement") {
  const double a2 = airy_paper(2.0), a4 = airy_paper(4.0), a8 = airy_paper(8.0);
  CHECK(a2 > 0.0);
  CHECK(a4 > 0.0);
  CHECK(a8 > 0.0);
  CHECK(a8 / a4 < a4 / a2);
  for (double l = 1.0; l < 12.0; l += 0.5) CHECK(airy_paper(l + 0.5) < airy_paper(l));
  double im = 0.0, refine = 0.0;
  for (double l = -40.0; l <= 20.0; l += 0.25) {
    const AiryEvaluation a = airy_paper_detail(l), b = airy_paper_detail(l, 0.0125);
    im = std::max(im, a.imag_residual);
    refine = std::max(refine, std::abs(a.value - b.value));
  }
  CHECK(im < 1e-8);
  CHECK(refine < 1e-6);
  CHECK_THROWS_AS(airy_paper(61.0), DomainError);
  CHECK_THROWS_AS(airy_paper(std::nan("")), DomainError);
}

TEST_CASE("W(1 + delta) and W(1, delta)") {
  AppendixWigner w = appendix_wigner_one_plus_delta(kPlane);
  CHECK(w.smooth.at(128, 128).real() == doctest::Approx(4.0));
  CHECK(w.lines.size() == 2);
  CHECK_THROWS_AS(w.densify(), DistributionalError);
  PhaseSpaceField c = appendix_wigner_one_delta(kPlane);
  for (auto v : c.samples) REQUIRE(std::abs(v) == doctest::Approx(2.0));
  // Smooth part is 2 Re W(1, delta).
  double e = 0.0;
  for (std::size_t i = 0; i < c.samples.size(); ++i) e = std::max(e, std::abs(2.0 * c.samples[i].real() - w.smooth.samples[i]));
  CHECK(e < 1e-12);
}

TEST_CASE("Gaussian smoothing of W(1 + delta) is the Husimi distribution") {
  // W phi = 2^{1/2} e^{-2 pi (x^2 + xi^2)} as a product of two 1D profiles.
  const double amp = std::pow(2.0, 0.25);
  Spectrum spec{[amp](double r) { return cplx(amp * std::exp(-pi * r * r / 2.0) / std::sqrt(2.0)); }, pi / 2.0, 0.0};
  Profile s = Profile::from_function([amp](double u) { return cplx(amp * std::exp(-2.0 * pi * u * u)); }, spec);
  const Grid2D small{Grid1D(0.0, 4.0, 64), Grid1D(0.0, 4.0, 64)};
  PhaseSpaceField h = appendix_wigner_one_plus_delta(small).smoothed(s, s, 3.5);
  PhaseSpaceField ref = appendix_husimi_one_plus_delta(small);
  double e = 0.0;
  for (std::size_t i = 0; i < h.samples.size(); ++i) e = std::max(e, std::abs(h.samples[i] - ref.samples[i]));
  CHECK(e < 1e-8);
  // Ridge along {x = 0}: 1D Gaussian profile e^{-2 pi x^2} at large |xi|.
  for (std::size_t j = 0; j < 64; ++j) {
    const double x = small.axis0.point(j);
    CHECK(std::abs(h.at(j, 0).real() - std::exp(-2.0 * pi * x * x) - std::exp(-2.0 * pi * 16.0) -
                   2.0 * std::cos(2.0 * pi * x * -4.0) * std::exp(-pi * (x * x + 16.0))) < 1e-8);
  }
}

TEST_CASE("Husimi distribution of 1 + delta") {
  PhaseSpaceField h = appendix_husimi_one_plus_delta(kPlane);
  CHECK(h.at(128, 128).real() == doctest::Approx(4.0));
  for (auto v : h.samples) REQUIRE(v.real() >= 0.0);
  // Along xi = 0 the field tends to 1 as |x| grows.
  CHECK(std::abs(h.at(0, 128).real() - 1.0) < 1e-12);
  PhaseSpaceField v1 = appendix_stft_one(kPlane), vd = appendix_stft_delta(kPlane);
  double e = 0.0;
  for (std::size_t i = 0; i < h.samples.size(); ++i) e = std::max(e, std::abs(h.samples[i] - std::norm(v1.samples[i] + vd.samples[i])));
  CHECK(e < 1e-12);
}

TEST_CASE("Bessel-type smoothing of W(1 + delta)") {
  BesselSmoothed b = appendix_bessel_smoothed_parts(kPlane);
  // Line terms by sifting: (delta (x) 1) * e^{-|u| - |v|} = e^{-|x|} \int e^{-|s|} ds, quadrature of the mass.
  double mass = 0.0;
  const double h = 1.0 / 1024.0;
  for (double s = h / 2.0; s < 60.0; s += h) mass += 2.0 * std::exp(-s) * h;
  double e = 0.0;
  for (std::size_t j = 0; j < 256; ++j)
    for (std::size_t k = 0; k < 256; ++k) {
      const double x = kPlane.axis0.point(j), xi = kPlane.axis1.point(k);
      e = std::max(e, std::abs(b.lines.at(j, k).real() - mass * (std::exp(-std::abs(x)) + std::exp(-std::abs(xi)))));
    }
  CHECK(e < 1e-6);
  CHECK(b.total.max_abs_imag() == 0.0);

  // Evenness under (x, xi) -> (-x, -xi): node j maps to 256 - j.
  double odd = 0.0;
  for (std::size_t j = 1; j < 256; ++j)
    for (std::size_t k = 1; k < 256; ++k) odd = std::max(odd, std::abs(b.total.at(j, k) - b.total.at(256 - j, 256 - k)));
  CHECK(odd < 1e-10);

  // Cosine term against direct quadrature of \int 2 cos(4 pi u xi) / (1 + 16 pi^2 u^2) e^{-|x - u|} du.
  for (auto [j, k] : {std::pair{128, 128}, {130, 140}, {100, 150}, {160, 90}, {128, 200}}) {
    const double x = kPlane.axis0.point(j), xi = kPlane.axis1.point(k);
    double acc = 0.0;
    const double du = 1.0 / 4096.0;
    for (double u = x - 45.0 + du / 2.0; u < x + 45.0; u += du)
      acc += 2.0 * std::cos(4.0 * pi * u * xi) / (1.0 + 16.0 * pi * pi * u * u) * std::exp(-std::abs(x - u)) * du;
    CHECK(std::abs(b.cosine.at(j, k).real() - 4.0 * acc) < 1e-6);
  }
}
