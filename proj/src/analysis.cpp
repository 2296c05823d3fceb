#include "wigner_lab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "wigner_lab/errors.hpp"
#include "wigner_lab/io.hpp"
#include "wigner_lab/parallel.hpp"

namespace wigner_lab {

namespace {

double least_squares_slope(const std::vector<double>& u, const std::vector<double>& v) {
  const double n = static_cast<double>(u.size());
  double su = 0.0, sv = 0.0, suu = 0.0, suv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    su += u[i];
    sv += v[i];
    suu += u[i] * u[i];
    suv += u[i] * v[i];
  }
  return (n * suv - su * sv) / (n * suu - su * su);
}

nlohmann::json number_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(); }

}  // namespace

nlohmann::json DecayReport::to_json() const {
  nlohmann::json j;
  j["N_list"] = N_list;
  j["weighted_sup"] = weighted_sup;
  j["sup_location"] = sup_location;
  j["fitted_order"] = number_or_null(fitted_order);
  j["bins"] = {{"distance", bin_distance}, {"max_abs", bin_max}};
  j["domain"] = {{"x", io::grid_json(domain.x)},
                 {"xi", io::grid_json(domain.xi)},
                 {"y", io::grid_json(domain.y)},
                 {"eta", io::grid_json(domain.eta)}};
  j["samples"] = samples;
  j["seed"] = seed;
  return j;
}

DecayReport decay_fit(const KernelField& k, const CanonicalMap& chi, const std::vector<int>& N_list,
                      const DecayOptions& options) {
  if (!k.is_dense() && !k.factored().pointwise())
    throw DistributionalError("decay_fit needs a smoothed kernel: a delta factor is still unresolved");
  if (N_list.empty()) throw DomainError("decay_fit needs at least one N");
  const Grid4D& g = k.grid();
  const auto shape = g.shape();
  const std::size_t total = g.size();

  std::vector<std::size_t> picks;
  if (total <= options.max_samples) {
    picks.resize(total);
    for (std::size_t i = 0; i < total; ++i) picks[i] = i;
  } else {
    // One uniformly drawn lattice point per stratum of the flattened index range.
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double stride = static_cast<double>(total) / static_cast<double>(options.max_samples);
    picks.resize(options.max_samples);
    for (std::size_t s = 0; s < options.max_samples; ++s)
      picks[s] = std::min(total - 1, static_cast<std::size_t>((static_cast<double>(s) + u(rng)) * stride));
  }

  std::vector<double> mag(picks.size()), dist(picks.size());
  std::vector<std::array<double, 4>> where(picks.size());
  parallel_for(picks.size(), [&](std::size_t s) {
    std::size_t i = picks[s];
    const std::size_t d = i % shape[3];
    i /= shape[3];
    const std::size_t c = i % shape[2];
    i /= shape[2];
    const std::size_t b = i % shape[1];
    const std::size_t a = i / shape[1];
    const double x = g.x.point(a), xi = g.xi.point(b), y = g.y.point(c), eta = g.eta.point(d);
    mag[s] = k.is_dense() ? std::abs(k.dense().at(a, b, c, d)) : std::abs(k.factored()(x, xi, y, eta));
    const auto [cx, cxi] = chi(y, eta);
    dist[s] = std::hypot(x - cx, xi - cxi);
    where[s] = {x, xi, y, eta};
  });

  DecayReport r;
  r.N_list = N_list;
  r.domain = g;
  r.samples = picks.size();
  r.seed = options.seed;
  for (int N : N_list) {
    double best = 0.0;
    std::size_t at = 0;
    for (std::size_t s = 0; s < picks.size(); ++s) {
      const double v = mag[s] * std::pow(1.0 + dist[s] * dist[s], N);
      if (v > best) {
        best = v;
        at = s;
      }
    }
    r.weighted_sup.push_back(best);
    r.sup_location.push_back(picks.empty() ? std::array<double, 4>{} : where[at]);
  }

  double hi = options.fit_max;
  if (hi <= 0.0)
    for (double d : dist) hi = std::max(hi, d);
  const double lo = options.fit_min;
  r.fitted_order = std::numeric_limits<double>::quiet_NaN();
  if (hi > lo && options.bins > 0) {
    const double step = std::log(hi / lo) / static_cast<double>(options.bins);
    std::vector<double> bmax(options.bins, 0.0);
    for (std::size_t s = 0; s < picks.size(); ++s) {
      if (dist[s] < lo || dist[s] > hi) continue;
      const auto bin = std::min(options.bins - 1, static_cast<std::size_t>(std::log(dist[s] / lo) / step));
      bmax[bin] = std::max(bmax[bin], mag[s]);
    }
    std::vector<double> lu, lv;
    for (std::size_t b = 0; b < options.bins; ++b) {
      if (!(bmax[b] > 0.0)) continue;
      const double center = lo * std::exp((static_cast<double>(b) + 0.5) * step);
      r.bin_distance.push_back(center);
      r.bin_max.push_back(bmax[b]);
      lu.push_back(std::log(center));
      lv.push_back(std::log(bmax[b]));
    }
    if (lu.size() >= 2) r.fitted_order = least_squares_slope(lu, lv);
  }
  return r;
}

bool Tube::contains(double x, double xi) const {
  switch (kind) {
    case Kind::x: return std::abs(x - center) <= width;
    case Kind::xi: return std::abs(xi - center) <= width;
    case Kind::curve: return std::abs(xi - gamma(x)) <= width;
  }
  return false;
}

bool Mask::contains(double x, double xi) const {
  return std::any_of(tubes.begin(), tubes.end(), [&](const Tube& t) { return t.contains(x, xi); });
}

nlohmann::json Mask::to_json() const {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& t : tubes) {
    nlohmann::json j{{"width", t.width}};
    switch (t.kind) {
      case Tube::Kind::x: j["kind"] = "x"; j["center"] = t.center; break;
      case Tube::Kind::xi: j["kind"] = "xi"; j["center"] = t.center; break;
      case Tube::Kind::curve: j["kind"] = "curve"; j["curve"] = t.label; break;
    }
    a.push_back(j);
  }
  return {{"tubes", a}};
}

Mask Mask::axes_cross(double width) {
  return Mask{{Tube{Tube::Kind::x, 0.0, width, {}, ""}, Tube{Tube::Kind::xi, 0.0, width, {}, ""}}};
}

nlohmann::json GhostReport::to_json() const {
  return {{"total_mass_L1", total_mass_L1},   {"total_mass_L2", total_mass_L2},
          {"masked_mass_L1", masked_mass_L1}, {"masked_mass_L2", masked_mass_L2},
          {"ghost_ratio_L1", ghost_ratio_L1}, {"ghost_ratio_L2", ghost_ratio_L2},
          {"mask", mask}};
}

GhostReport ghost_energy(const PhaseSpaceField& field, const Mask& mask, std::vector<std::string>* warnings) {
  if (mask.tubes.empty() && warnings) warnings->push_back("empty mask: all mass counts as ghost");
  const Grid1D& gx = field.grid.axis0;
  const Grid1D& gxi = field.grid.axis1;
  for (const auto& t : mask.tubes) {
    const Grid1D& g = t.kind == Tube::Kind::x ? gx : gxi;
    if (t.kind != Tube::Kind::curve && std::abs(t.center - g.center()) > g.half_width())
      throw DomainError("mask tube center lies outside the grid");
  }
  GhostReport r;
  for (std::size_t a = 0; a < gx.n(); ++a)
    for (std::size_t b = 0; b < gxi.n(); ++b) {
      const double m = std::abs(field.at(a, b));
      r.total_mass_L1 += m;
      r.total_mass_L2 += m * m;
      if (mask.contains(gx.point(a), gxi.point(b))) {
        r.masked_mass_L1 += m;
        r.masked_mass_L2 += m * m;
      }
    }
  const double cell = gx.spacing() * gxi.spacing();
  r.total_mass_L1 *= cell;
  r.total_mass_L2 *= cell;
  r.masked_mass_L1 *= cell;
  r.masked_mass_L2 *= cell;
  r.ghost_ratio_L1 = r.total_mass_L1 > 0.0 ? (r.total_mass_L1 - r.masked_mass_L1) / r.total_mass_L1 : 0.0;
  r.ghost_ratio_L2 = r.total_mass_L2 > 0.0 ? (r.total_mass_L2 - r.masked_mass_L2) / r.total_mass_L2 : 0.0;
  r.mask = mask.to_json();
  return r;
}

std::vector<double> envelope(const Signal& profile, double lo, double hi) {
  const Grid1D& g = profile.grid;
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < g.n(); ++j)
    if (g.point(j) >= lo && g.point(j) <= hi) idx.push_back(j);
  if (idx.empty()) throw DomainError("no samples in the slope range");
  std::vector<double> a(g.n());
  for (std::size_t j = 0; j < g.n(); ++j) a[j] = std::abs(profile[j]);
  std::vector<std::size_t> minima;
  for (std::size_t j = 1; j + 1 < g.n(); ++j)
    if (a[j] <= a[j - 1] && a[j] < a[j + 1]) minima.push_back(j);
  std::vector<double> env;
  env.reserve(idx.size());
  for (std::size_t j : idx) {
    std::size_t half = 0;
    if (minima.size() >= 2) {
      // Consecutive minima of |p| are half a period apart; the window spans
      // two periods, i.e. two gaps on either side.
      auto it = std::lower_bound(minima.begin(), minima.end(), j);
      if (it == minima.end()) --it;
      if (it == minima.begin()) ++it;
      half = 2 * (*it - *(it - 1));
    }
    const std::size_t from = j > half ? j - half : 0;
    const std::size_t to = std::min(g.n() - 1, j + half);
    double m = 0.0;
    for (std::size_t q = from; q <= to; ++q) m = std::max(m, a[q]);
    env.push_back(m);
  }
  return env;
}

double slope_estimate(const Signal& profile, double lo, double hi) {
  const std::vector<double> env = envelope(profile, lo, hi);
  std::vector<double> u, v;
  std::size_t e = 0;
  for (std::size_t j = 0; j < profile.grid.n(); ++j) {
    const double l = profile.grid.point(j);
    if (l < lo || l > hi) continue;
    if (!(env[e] > 0.0)) throw DomainError("envelope is not positive on the slope range");
    if (l == 0.0) throw DomainError("slope range must exclude 0");
    u.push_back(std::log(std::abs(l)));
    v.push_back(std::log(env[e]));
    ++e;
  }
  if (u.size() < 2) throw DomainError("slope range holds fewer than two samples");
  return least_squares_slope(u, v);
}

}  // namespace wigner_lab
