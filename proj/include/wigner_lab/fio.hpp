#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "wigner_lab/field.hpp"

namespace wigner_lab {

/// Phase Phi(x, xi) of a type-I FIO.
///   kohn_nirenberg: x xi
///   quadratic:      a x^2 / 2 + b x xi + c xi^2 / 2
///   multiplier:     x xi - t phi(xi), phi given lowest degree first
///   custom:         user evaluators
struct PhaseSpec {
  enum class Family { kohn_nirenberg, quadratic, multiplier, custom };

  Family family = Family::kohn_nirenberg;
  double a = 0.0, b = 1.0, c = 0.0;
  double t = 0.0;
  std::vector<double> phi;
  std::function<double(double, double)> custom_phase, custom_dx, custom_dxi;

  static PhaseSpec kohn_nirenberg();
  static PhaseSpec quadratic(double a, double b, double c);
  static PhaseSpec multiplier(double t, std::vector<double> phi);
  static PhaseSpec custom(std::function<double(double, double)> phase, std::function<double(double, double)> dx,
                          std::function<double(double, double)> dxi);

  double operator()(double x, double xi) const;
  double d_x(double x, double xi) const;
  double d_xi(double x, double xi) const;

  /// Coefficients of the multiplier polynomial after trailing zeros are dropped.
  std::size_t phi_degree() const;
  /// Cubic or lower polynomial phases satisfy the decay-analysis hypotheses.
  bool within_decay_hypotheses() const;

  nlohmann::json to_json() const;
  static PhaseSpec from_json(const nlohmann::json& j);
};

/// Finite exponential sum sum_k c_k e^{2 pi i nu_k u}.
struct TrigSeries {
  std::vector<std::pair<cplx, double>> terms;  // (coefficient, frequency)
  cplx operator()(double u) const;
};

/// Symbol sigma(x, xi). Separable trigonometric symbols a(x) b(xi) keep their
/// structure so the Wigner kernel can be written in closed form.
struct SymbolSpec {
  std::function<cplx(double, double)> fn;
  std::optional<std::pair<TrigSeries, TrigSeries>> separable;
  std::string name = "one";

  static SymbolSpec one();
  static SymbolSpec from_function(std::function<cplx(double, double)> fn, std::string name = "custom");
  static SymbolSpec separable_trig(TrigSeries a, TrigSeries b, std::string name = "separable");
  /// (2 + sin x)(2 + cos xi) / 9.
  static SymbolSpec bounded_trig();

  cplx operator()(double x, double xi) const { return fn(x, xi); }
  bool is_one() const { return name == "one"; }

  /// max |sigma| over the lattice.
  double sampled_bound(const Grid2D& grid) const;

  nlohmann::json to_json() const;
  static SymbolSpec from_json(const nlohmann::json& j);
};

/// chi(y, eta) = (x, xi) solving y = Phi_xi(x, eta), xi = Phi_x(x, eta).
struct CanonicalMap {
  std::function<std::pair<double, double>(double, double)> chi;
  PhaseSpec::Family family = PhaseSpec::Family::kohn_nirenberg;

  std::pair<double, double> operator()(double y, double eta) const { return chi(y, eta); }
};

/// T f(x) = \int e^{2 pi i Phi(x, xi)} sigma(x, xi) fhat(xi) dxi, evaluated on
/// `out` (default: the grid of f). Advisory messages are appended to `warnings`.
Signal apply_fio(const PhaseSpec& phase, const SymbolSpec& symbol, const Signal& f,
                 std::optional<Grid1D> out = std::nullopt, std::vector<std::string>* warnings = nullptr);

/// Discrete Schwartz kernel k_T(x_j, y_i) on Grid2D{grid, grid}.
PhaseSpaceField schwartz_kernel(const PhaseSpec& phase, const SymbolSpec& symbol, const Grid1D& grid);

CanonicalMap canonical_map(const PhaseSpec& phase);

/// <(xi - Phi_x(x, eta), y - Phi_xi(x, eta))> for z = (x, xi), w = (y, eta).
double lambda_phi(const PhaseSpec& phase, std::pair<double, double> z, std::pair<double, double> w);

/// Phi(x + t/2, eta + r/2) - Phi(x - t/2, eta - r/2) - t Phi_x(x, eta) - r Phi_xi(x, eta).
double phase_remainder(const PhaseSpec& phase, double x, double eta, double t, double r);

/// e^{2 pi i remainder} sigma(x + t/2, eta + r/2) conj(sigma(x - t/2, eta - r/2)).
cplx tilde_symbol(const PhaseSpec& phase, const SymbolSpec& symbol, double x, double eta, double t, double r);

}  // namespace wigner_lab
