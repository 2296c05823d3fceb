#include <cmath>
#include <numbers>

#include "wigner_lab/errors.hpp"
#include "wigner_lab/field.hpp"

namespace wigner_lab {

namespace {

cplx coef(double freq, double v) { return std::polar(1.0, 2.0 * std::numbers::pi * freq * v); }

// \int_{-R}^{R} S(s) g(s) ds by the trapezoid rule.
template <class G>
cplx smooth_integral(const PendingSmoother& s, double step, G&& g) {
  const long m = static_cast<long>(std::ceil(s.radius / step));
  cplx acc{};
  for (long i = -m; i <= m; ++i) {
    const double u = static_cast<double>(i) * step;
    const double w = (i == -m || i == m) ? 0.5 : 1.0;
    acc += w * s.profile(u) * g(u);
  }
  return acc * step;
}

void require_pointwise(const Profile& p, const char* what) {
  if (!p.pointwise())
    throw DistributionalError(std::string("factored kernel has an unsmoothed ") + what +
                              " delta; apply smoothing in that direction first");
}

}  // namespace

double FactoredTerm::shift_at(double eta) const {
  double acc = 0.0;
  for (auto it = shift.rbegin(); it != shift.rend(); ++it) acc = acc * eta + *it;
  return acc;
}

bool FactoredTerm::shift_is_constant() const {
  for (std::size_t i = 1; i < shift.size(); ++i)
    if (shift[i] != 0.0) return false;
  return true;
}

bool FactoredKernel::pointwise() const {
  for (const auto& t : terms) {
    if (!(t.position.pointwise() || (t.position.is_delta() && pending_x))) return false;
    if (!(t.frequency.pointwise() || (t.frequency.is_delta() && pending_eta))) return false;
  }
  return true;
}

cplx FactoredKernel::operator()(double x, double xi, double y, double eta) const {
  const double h = quadrature_step;
  cplx total{};
  for (const auto& t : terms) {
    cplx v{};
    if (!pending_x && !pending_eta) {
      require_pointwise(t.position, "position");
      require_pointwise(t.frequency, "frequency");
      v = coef(t.x_freq, x) * coef(t.eta_freq, eta) * t.position(y - x + t.shift_at(eta)) *
          t.frequency(xi - eta - t.offset);
    } else if (pending_eta && !pending_x) {
      require_pointwise(t.position, "position");
      const cplx ax = coef(t.x_freq, x);
      if (t.frequency.is_delta()) {
        const double et = xi - t.offset;
        v = ax * pending_eta->profile(eta - et) * coef(t.eta_freq, et) * t.position(y - x + t.shift_at(et));
      } else {
        require_pointwise(t.frequency, "frequency");
        v = ax * smooth_integral(*pending_eta, h, [&](double s) {
              const double e = eta - s;
              return coef(t.eta_freq, e) * t.position(y - x + t.shift_at(e)) * t.frequency(xi - e - t.offset);
            });
      }
    } else if (pending_x && !pending_eta) {
      require_pointwise(t.frequency, "frequency");
      const cplx rest = coef(t.eta_freq, eta) * t.frequency(xi - eta - t.offset);
      const double c = t.shift_at(eta);
      if (t.position.is_delta()) {
        const double xt = y + c;
        v = pending_x->profile(x - xt) * coef(t.x_freq, xt) * rest;
      } else {
        require_pointwise(t.position, "position");
        v = smooth_integral(*pending_x, h, [&](double u) {
              const double xx = x - u;
              return coef(t.x_freq, xx) * t.position(y - xx + c);
            }) *
            rest;
      }
    } else {
      if (!t.shift_is_constant())
        throw DomainError("smoothing in both x and eta requires a constant shift in every term");
      const double c = t.shift_at(0.0);
      cplx ix;
      if (t.position.is_delta()) {
        const double xt = y + c;
        ix = pending_x->profile(x - xt) * coef(t.x_freq, xt);
      } else {
        require_pointwise(t.position, "position");
        ix = smooth_integral(*pending_x, h, [&](double u) {
          const double xx = x - u;
          return coef(t.x_freq, xx) * t.position(y - xx + c);
        });
      }
      cplx ie;
      if (t.frequency.is_delta()) {
        const double et = xi - t.offset;
        ie = pending_eta->profile(eta - et) * coef(t.eta_freq, et);
      } else {
        require_pointwise(t.frequency, "frequency");
        ie = smooth_integral(*pending_eta, h, [&](double s) {
          const double e = eta - s;
          return coef(t.eta_freq, e) * t.frequency(xi - e - t.offset);
        });
      }
      v = ix * ie;
    }
    total += t.weight * v;
  }
  return total;
}

const Grid4D& KernelField::grid() const {
  return std::visit([](const auto& k) -> const Grid4D& { return k.grid; }, representation);
}

cplx KernelField::evaluate(double x, double xi, double y, double eta) const {
  if (!is_dense()) return factored()(x, xi, y, eta);
  const DenseKernel& k = dense();
  auto nearest = [](const Grid1D& g, double v) {
    const double u = std::round((v - g.start()) / g.spacing());
    if (u < 0.0 || u >= static_cast<double>(g.n())) return static_cast<long>(-1);
    return static_cast<long>(u);
  };
  const long a = nearest(k.grid.x, x), b = nearest(k.grid.xi, xi), c = nearest(k.grid.y, y),
             d = nearest(k.grid.eta, eta);
  if (a < 0 || b < 0 || c < 0 || d < 0) return {0.0, 0.0};
  return k.at(static_cast<std::size_t>(a), static_cast<std::size_t>(b), static_cast<std::size_t>(c),
              static_cast<std::size_t>(d));
}

DenseKernel KernelField::densify() const {
  if (is_dense()) return dense();
  const FactoredKernel& f = factored();
  if (!f.pointwise()) throw DistributionalError("kernel retains a delta factor; smooth it before sampling");
  DenseKernel out(f.grid);
  const Grid4D& g = f.grid;
  for (std::size_t a = 0; a < g.x.n(); ++a)
    for (std::size_t b = 0; b < g.xi.n(); ++b)
      for (std::size_t c = 0; c < g.y.n(); ++c)
        for (std::size_t d = 0; d < g.eta.n(); ++d)
          out.at(a, b, c, d) = f(g.x.point(a), g.xi.point(b), g.y.point(c), g.eta.point(d));
  return out;
}

}  // namespace wigner_lab
