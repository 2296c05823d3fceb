#include "wigner_lab/fio.hpp"

#include <cmath>
#include <numbers>

#include "wigner_lab/errors.hpp"
#include "wigner_lab/fourier.hpp"
#include "wigner_lab/parallel.hpp"

namespace wigner_lab {

namespace {

using std::numbers::pi;

double poly(const std::vector<double>& c, double v) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * v + *it;
  return acc;
}

double poly_derivative(const std::vector<double>& c, double v) {
  double acc = 0.0;
  for (std::size_t k = c.size(); k-- > 1;) acc = acc * v + static_cast<double>(k) * c[k];
  return acc;
}

}  // namespace

PhaseSpec PhaseSpec::kohn_nirenberg() { return PhaseSpec{}; }

PhaseSpec PhaseSpec::quadratic(double a, double b, double c) {
  PhaseSpec p;
  p.family = Family::quadratic;
  p.a = a;
  p.b = b;
  p.c = c;
  return p;
}

PhaseSpec PhaseSpec::multiplier(double t, std::vector<double> phi) {
  PhaseSpec p;
  p.family = Family::multiplier;
  p.t = t;
  p.phi = std::move(phi);
  return p;
}

PhaseSpec PhaseSpec::custom(std::function<double(double, double)> phase, std::function<double(double, double)> dx,
                            std::function<double(double, double)> dxi) {
  PhaseSpec p;
  p.family = Family::custom;
  p.custom_phase = std::move(phase);
  p.custom_dx = std::move(dx);
  p.custom_dxi = std::move(dxi);
  return p;
}

double PhaseSpec::operator()(double x, double xi) const {
  switch (family) {
    case Family::kohn_nirenberg: return x * xi;
    case Family::quadratic: return 0.5 * a * x * x + b * x * xi + 0.5 * c * xi * xi;
    case Family::multiplier: return x * xi - t * poly(phi, xi);
    default: return custom_phase(x, xi);
  }
}

double PhaseSpec::d_x(double x, double xi) const {
  switch (family) {
    case Family::kohn_nirenberg: return xi;
    case Family::quadratic: return a * x + b * xi;
    case Family::multiplier: return xi;
    default: return custom_dx(x, xi);
  }
}

double PhaseSpec::d_xi(double x, double xi) const {
  switch (family) {
    case Family::kohn_nirenberg: return x;
    case Family::quadratic: return b * x + c * xi;
    case Family::multiplier: return x - t * poly_derivative(phi, xi);
    default: return custom_dxi(x, xi);
  }
}

std::size_t PhaseSpec::phi_degree() const {
  std::size_t d = phi.size();
  while (d > 0 && phi[d - 1] == 0.0) --d;
  return d == 0 ? 0 : d - 1;
}

bool PhaseSpec::within_decay_hypotheses() const {
  if (family == Family::custom) return false;
  return family != Family::multiplier || phi_degree() <= 3;
}

nlohmann::json PhaseSpec::to_json() const {
  switch (family) {
    case Family::kohn_nirenberg: return {{"family", "kohn_nirenberg"}};
    case Family::quadratic: return {{"family", "quadratic"}, {"a", a}, {"b", b}, {"c", c}};
    case Family::multiplier: return {{"family", "multiplier"}, {"t", t}, {"phi", phi}};
    default: return {{"family", "custom"}};
  }
}

PhaseSpec PhaseSpec::from_json(const nlohmann::json& j) {
  const std::string fam = j.value("family", "");
  if (fam == "kohn_nirenberg" || fam == "identity") return kohn_nirenberg();
  if (fam == "quadratic") return quadratic(j.value("a", 0.0), j.value("b", 1.0), j.value("c", 0.0));
  if (fam == "multiplier") return multiplier(j.value("t", 1.0), j.at("phi").get<std::vector<double>>());
  if (fam == "cubic") return multiplier(j.value("t", 1.0), {0.0, 0.0, 0.0, 1.0});
  if (fam == "free_particle") return multiplier(j.value("t", 1.0), {0.0, 0.0, 1.0});
  throw DomainError("unknown phase family '" + fam +
                    "' (expected kohn_nirenberg, quadratic, multiplier, cubic, free_particle)");
}

cplx TrigSeries::operator()(double u) const {
  cplx acc{};
  for (const auto& [coef, nu] : terms) acc += coef * std::polar(1.0, 2.0 * pi * nu * u);
  return acc;
}

SymbolSpec SymbolSpec::one() {
  SymbolSpec s;
  s.fn = [](double, double) { return cplx{1.0, 0.0}; };
  s.separable = std::pair{TrigSeries{{{1.0, 0.0}}}, TrigSeries{{{1.0, 0.0}}}};
  s.name = "one";
  return s;
}

SymbolSpec SymbolSpec::from_function(std::function<cplx(double, double)> fn, std::string name) {
  SymbolSpec s;
  s.fn = std::move(fn);
  s.name = std::move(name);
  return s;
}

SymbolSpec SymbolSpec::separable_trig(TrigSeries a, TrigSeries b, std::string name) {
  SymbolSpec s;
  s.fn = [a, b](double x, double xi) { return a(x) * b(xi); };
  s.separable = std::pair{std::move(a), std::move(b)};
  s.name = std::move(name);
  return s;
}

SymbolSpec SymbolSpec::bounded_trig() {
  const double nu = 1.0 / (2.0 * pi);
  const cplx i{0.0, 1.0};
  TrigSeries a{{{2.0 / 3.0, 0.0}, {1.0 / (6.0 * i), nu}, {-1.0 / (6.0 * i), -nu}}};
  TrigSeries b{{{2.0 / 3.0, 0.0}, {1.0 / 6.0, nu}, {1.0 / 6.0, -nu}}};
  return separable_trig(std::move(a), std::move(b), "bounded_trig");
}

double SymbolSpec::sampled_bound(const Grid2D& grid) const {
  double m = 0.0;
  for (std::size_t j = 0; j < grid.axis0.n(); ++j)
    for (std::size_t k = 0; k < grid.axis1.n(); ++k)
      m = std::max(m, std::abs(fn(grid.axis0.point(j), grid.axis1.point(k))));
  return m;
}

nlohmann::json SymbolSpec::to_json() const { return {{"kind", name}}; }

SymbolSpec SymbolSpec::from_json(const nlohmann::json& j) {
  const std::string kind = j.is_string() ? j.get<std::string>() : j.value("kind", "one");
  if (kind == "one") return one();
  if (kind == "bounded_trig") return bounded_trig();
  throw DomainError("unknown symbol '" + kind + "' (expected one, bounded_trig)");
}

Signal apply_fio(const PhaseSpec& phase, const SymbolSpec& symbol, const Signal& f, std::optional<Grid1D> out,
                 std::vector<std::string>* warnings) {
  const Grid1D xg = out.value_or(f.grid);
  const Signal fh = dft(f, FourierSign::forward);
  const Grid1D& wg = fh.grid;
  const double dxi = wg.spacing();
  if (warnings) {
    if (!phase.within_decay_hypotheses())
      warnings->push_back("phase is outside the decay-analysis hypotheses (polynomial degree > 3 or custom)");
    const double bound = symbol.sampled_bound(Grid2D{xg, wg});
    if (!std::isfinite(bound) || bound > 1e6)
      warnings->push_back("symbol samples are unbounded on the working grid (max " + std::to_string(bound) + ")");
  }
  Signal res(xg);
  parallel_for(xg.n(), [&](std::size_t j) {
    const double x = xg.point(j);
    cplx acc{};
    for (std::size_t k = 0; k < wg.n(); ++k) {
      const double xi = wg.point(k);
      acc += std::polar(1.0, 2.0 * pi * phase(x, xi)) * symbol(x, xi) * fh.samples[k];
    }
    res.samples[j] = acc * dxi;
  });
  return res;
}

PhaseSpaceField schwartz_kernel(const PhaseSpec& phase, const SymbolSpec& symbol, const Grid1D& grid) {
  const Grid1D wg = grid.reciprocal();
  const std::size_t n = grid.n();
  const double dxi = wg.spacing();
  PhaseSpaceField k(Grid2D{grid, grid});
  // e^{-2 pi i y_i xi_k} is shared by every row.
  std::vector<cplx> e(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t q = 0; q < n; ++q) e[i * n + q] = std::polar(1.0, -2.0 * pi * grid.point(i) * wg.point(q));
  parallel_for(n, [&](std::size_t j) {
    const double x = grid.point(j);
    std::vector<cplx> row(n);
    for (std::size_t q = 0; q < n; ++q) {
      const double xi = wg.point(q);
      row[q] = dxi * std::polar(1.0, 2.0 * pi * phase(x, xi)) * symbol(x, xi);
    }
    for (std::size_t i = 0; i < n; ++i) {
      cplx acc{};
      for (std::size_t q = 0; q < n; ++q) acc += row[q] * e[i * n + q];
      k.at(j, i) = acc;
    }
  });
  return k;
}

CanonicalMap canonical_map(const PhaseSpec& phase) {
  CanonicalMap m;
  m.family = phase.family;
  switch (phase.family) {
    case PhaseSpec::Family::kohn_nirenberg:
      m.chi = [](double y, double eta) { return std::pair{y, eta}; };
      break;
    case PhaseSpec::Family::multiplier: {
      const double t = phase.t;
      const std::vector<double> phi = phase.phi;
      m.chi = [t, phi](double y, double eta) { return std::pair{y + t * poly_derivative(phi, eta), eta}; };
      break;
    }
    case PhaseSpec::Family::quadratic: {
      if (std::abs(phase.b) < 1e-12)
        throw DomainError("phase is not tame: the mixed derivative d^2 Phi / dx dxi vanishes, so chi is undefined");
      const double a = phase.a, b = phase.b, c = phase.c;
      m.chi = [a, b, c](double y, double eta) {
        const double x = (y - c * eta) / b;
        return std::pair{x, a * x + b * eta};
      };
      break;
    }
    default:
      throw DomainError("canonical map is only available for kohn_nirenberg, quadratic and multiplier phases");
  }
  return m;
}

double lambda_phi(const PhaseSpec& phase, std::pair<double, double> z, std::pair<double, double> w) {
  const auto [x, xi] = z;
  const auto [y, eta] = w;
  const double a = xi - phase.d_x(x, eta);
  const double b = y - phase.d_xi(x, eta);
  return std::sqrt(1.0 + a * a + b * b);
}

double phase_remainder(const PhaseSpec& phase, double x, double eta, double t, double r) {
  return phase(x + t / 2.0, eta + r / 2.0) - phase(x - t / 2.0, eta - r / 2.0) - t * phase.d_x(x, eta) -
         r * phase.d_xi(x, eta);
}

cplx tilde_symbol(const PhaseSpec& phase, const SymbolSpec& symbol, double x, double eta, double t, double r) {
  return std::polar(1.0, 2.0 * pi * phase_remainder(phase, x, eta, t, r)) * symbol(x + t / 2.0, eta + r / 2.0) *
         std::conj(symbol(x - t / 2.0, eta - r / 2.0));
}

}  // namespace wigner_lab
