#include "wigner_lab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "wigner_lab/errors.hpp"
#include "wigner_lab/fourier.hpp"
#include "wigner_lab/parallel.hpp"
#include "wigner_lab/reference.hpp"

namespace wigner_lab {

namespace {

using std::numbers::pi;

FactoredTerm delta_term() {
  FactoredTerm t;
  t.position = Profile::delta();
  t.frequency = Profile::delta();
  return t;
}

Signal shifted_window(const Grid1D& g, const WindowSpec& window, PhasePoint z) {
  return Signal::sample(g, [&](double t) { return window(t - z.first) * std::polar(1.0, 2.0 * pi * z.second * t); });
}

}  // namespace

Grid4D kernel_grid(const Grid1D& grid) {
  const Grid1D r = grid.reciprocal();
  const Grid1D fine(grid.center(), grid.half_width(), 2 * grid.n());
  return Grid4D{fine, r, fine, r};
}

KernelField wigner_kernel_via_schwartz(const PhaseSpec& phase, const SymbolSpec& symbol, const Grid4D& grid4,
                                       bool allow_large) {
  const Grid1D base(grid4.x.center(), grid4.x.half_width(), grid4.x.n() / 2);
  if (grid4.x.n() % 4 != 0 || !(grid4 == kernel_grid(base)))
    throw GridMismatch("kernel grid must be kernel_grid(g) for the Schwartz route");
  const std::size_t n = base.n();
  if (n > 64 && !allow_large)
    throw SizingError("dense 4D kernel with " + std::to_string(n) + " points per axis needs " +
                      std::to_string(4 * n * n * n * n * sizeof(cplx) / (1 << 20)) + " MiB; pass allow_large to build it anyway");
  const PhaseSpaceField kt = schwartz_kernel(phase, symbol, base);
  DenseKernel w = wigner_2d(kt, true);
  // eta -> -eta in place: index d <-> (n - d) mod n.
  parallel_for(2 * n * n * 2 * n, [&](std::size_t abc) {
    cplx* line = w.samples.data() + abc * n;
    std::reverse(line + 1, line + n);
  });
  return KernelField{std::move(w)};
}

Profile cubic_profile(double kappa) {
  if (kappa == 0.0) return Profile::delta();
  static std::mutex mutex;
  static std::map<double, Profile> cache;
  std::lock_guard<std::mutex> lock(mutex);
  if (auto it = cache.find(kappa); it != cache.end()) return it->second;
  const double beta = std::cbrt(1.0 / (4.0 * std::abs(kappa)));
  const double sign = kappa > 0.0 ? 1.0 : -1.0;
  const Grid1D g = Profile::canonical_grid();
  Signal s(g);
  parallel_for(g.n(), [&](std::size_t j) {
    const double u = sign * beta * g.point(j);
    s.samples[j] = std::abs(u) <= 60.0 ? beta * airy_paper(u) : 0.0;
  });
  Spectrum spec{[kappa](double r) { return std::polar(1.0, -2.0 * pi * kappa * r * r * r); }, 0.0, 0.0, true};
  Profile p = Profile::from_samples(s, spec);
  cache.emplace(kappa, p);
  return p;
}

KernelField wigner_kernel_analytic(const PhaseSpec& phase, const SymbolSpec& symbol, const Grid4D& grid4) {
  FactoredKernel k{grid4, {}};
  switch (phase.family) {
    case PhaseSpec::Family::multiplier: {
      if (!phase.within_decay_hypotheses())
        throw DomainError("closed-form kernel needs phi of degree <= 3");
      if (!symbol.is_one()) throw DomainError("closed-form multiplier kernel needs symbol 1");
      std::vector<double> p = phase.phi;
      p.resize(4, 0.0);
      FactoredTerm t = delta_term();
      t.shift = {phase.t * p[1], 2.0 * phase.t * p[2], 3.0 * phase.t * p[3]};
      t.position = cubic_profile(phase.t * p[3] / 4.0);
      k.terms.push_back(t);
      break;
    }
    case PhaseSpec::Family::kohn_nirenberg: {
      if (symbol.is_one()) {
        k.terms.push_back(delta_term());
        break;
      }
      if (!symbol.separable) throw DomainError("closed-form Kohn-Nirenberg kernel needs a separable trigonometric symbol");
      const auto& [a, b] = *symbol.separable;
      for (const auto& [ak, nk] : a.terms)
        for (const auto& [ak2, nk2] : a.terms)
          for (const auto& [bl, ml] : b.terms)
            for (const auto& [bl2, ml2] : b.terms) {
              FactoredTerm t = delta_term();
              t.weight = ak * std::conj(ak2) * bl * std::conj(bl2);
              t.x_freq = nk - nk2;
              t.eta_freq = ml - ml2;
              t.shift = {-(ml + ml2) / 2.0};
              t.offset = (nk + nk2) / 2.0;
              k.terms.push_back(t);
            }
      break;
    }
    default:
      throw DomainError("no closed-form Wigner kernel for this phase family; use the Schwartz route");
  }
  return KernelField{std::move(k)};
}

std::vector<std::vector<cplx>> gabor_matrix_block(const PhaseSpec& phase, const SymbolSpec& symbol,
                                                  const std::vector<PhasePoint>& zs, const std::vector<PhasePoint>& ws,
                                                  const WindowSpec& window, std::vector<std::string>* warnings,
                                                  std::optional<Grid1D> fine) {
  const Grid1D g = fine.value_or(Grid1D(0.0, 32.0, 2048));
  const double edge = 0.9 * g.half_width();
  std::vector<std::vector<cplx>> out(zs.size(), std::vector<cplx>(ws.size()));
  bool warned = false;
  for (std::size_t j = 0; j < ws.size(); ++j) {
    const Signal tw = apply_fio(phase, symbol, shifted_window(g, window, ws[j]), std::nullopt, warnings);
    double total = 0.0, outer = 0.0;
    for (std::size_t i = 0; i < g.n(); ++i) {
      const double m = std::norm(tw[i]);
      total += m;
      if (std::abs(g.point(i) - g.center()) > edge) outer += m;
    }
    if (!warned && warnings && outer > 1e-6 * total) {
      warnings->push_back("transformed window has mass near the boundary of the working grid; enlarge it");
      warned = true;
    }
    for (std::size_t i = 0; i < zs.size(); ++i) {
      const Signal gz = shifted_window(g, window, zs[i]);
      cplx acc{};
      for (std::size_t q = 0; q < g.n(); ++q) acc += tw[q] * std::conj(gz[q]);
      out[i][j] = acc * g.spacing();
    }
  }
  return out;
}

cplx gabor_matrix(const PhaseSpec& phase, const SymbolSpec& symbol, PhasePoint z, PhasePoint w,
                  const WindowSpec& window, std::vector<std::string>* warnings, std::optional<Grid1D> fine) {
  return gabor_matrix_block(phase, symbol, {z}, {w}, window, warnings, fine)[0][0];
}

IntertwiningReport intertwining_check(const PhaseSpec& phase, const SymbolSpec& symbol, const DenseKernel& kw,
                                      const Signal& f, const Signal& g, std::size_t count, double interior,
                                      std::uint64_t seed) {
  if (!(kw.grid == kernel_grid(f.grid)) || !(f.grid == g.grid))
    throw GridMismatch("intertwining check needs k_W on kernel_grid of the signal lattice");
  const std::size_t n = f.grid.n();
  // W(f, g) on the fine position lattice; its xi axis doubles and holds the
  // kernel's xi lattice at offset n / 2.
  const PhaseSpaceField wfg = cross_wigner(fourier_interpolate(f, 2), fourier_interpolate(g, 2));
  const PhaseSpaceField wt = cross_wigner(apply_fio(phase, symbol, f), apply_fio(phase, symbol, g));
  const Grid1D& gx = f.grid;
  const Grid1D& gxi = kw.grid.xi;
  std::vector<std::pair<std::size_t, std::size_t>> candidates;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (std::abs(gx.point(a)) <= interior && std::abs(gxi.point(b)) <= interior) candidates.emplace_back(a, b);
  if (candidates.empty()) throw DomainError("no lattice points inside the requested interior");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
  IntertwiningReport r;
  const double cell = kw.grid.y.spacing() * gxi.spacing();
  double num = 0.0, den = 0.0;
  for (std::size_t s = 0; s < count; ++s) {
    const auto [a, b] = candidates[pick(rng)];
    cplx acc{};
    for (std::size_t c = 0; c < kw.grid.y.n(); ++c)
      for (std::size_t d = 0; d < n; ++d) acc += kw.at(2 * a, b, c, d) * wfg.at(c, d + n / 2);
    r.points.emplace_back(gx.point(a), gxi.point(b));
    r.contracted.push_back(acc * cell);
    r.direct.push_back(wt.at(a, b));
    num = std::max(num, std::abs(r.contracted.back() - r.direct.back()));
    den = std::max(den, std::abs(r.direct.back()));
  }
  r.relative_error = den > 0.0 ? num / den : num;
  return r;
}

}  // namespace wigner_lab
