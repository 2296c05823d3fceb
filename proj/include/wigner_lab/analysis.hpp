#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "wigner_lab/fio.hpp"

namespace wigner_lab {

struct DecayOptions {
  /// Lattice points evaluated; larger lattices are stratified-sampled.
  std::size_t max_samples = 1'000'000;
  std::uint64_t seed = 20240601;
  /// Distance range and log-spaced bin count of the slope fit.
  double fit_min = 1.0;
  double fit_max = 0.0;  // 0: largest sampled distance
  std::size_t bins = 16;
};

struct DecayReport {
  std::vector<int> N_list;
  std::vector<double> weighted_sup;                 // sup |k| <z - chi(w)>^{2N}
  std::vector<std::array<double, 4>> sup_location;  // (x, xi, y, eta) of each sup
  double fitted_order = 0.0;                        // log-log slope of binned max |k|
  std::vector<double> bin_distance;
  std::vector<double> bin_max;
  Grid4D domain{Grid1D(0.0, 1.0, 4), Grid1D(0.0, 1.0, 4), Grid1D(0.0, 1.0, 4), Grid1D(0.0, 1.0, 4)};
  std::size_t samples = 0;
  std::uint64_t seed = 0;

  nlohmann::json to_json() const;
};

/// |k(z, w)| <z - chi(w)>^{2N} over the kernel lattice (z = (x, xi), w = (y, eta)).
/// Kernels with an unresolved delta factor are rejected.
DecayReport decay_fit(const KernelField& k, const CanonicalMap& chi, const std::vector<int>& N_list,
                      const DecayOptions& options = {});

/// Tube {|x - c| <= w}, {|xi - c| <= w} or {|xi - gamma(x)| <= w}.
struct Tube {
  enum class Kind { x, xi, curve };
  Kind kind = Kind::x;
  double center = 0.0;
  double width = 1.0;
  std::function<double(double)> gamma;
  std::string label;

  bool contains(double x, double xi) const;
};

struct Mask {
  std::vector<Tube> tubes;

  bool contains(double x, double xi) const;
  nlohmann::json to_json() const;

  /// {|x| <= width} union {|xi| <= width}.
  static Mask axes_cross(double width = 1.0);
};

struct GhostReport {
  double total_mass_L1 = 0.0, total_mass_L2 = 0.0;
  double masked_mass_L1 = 0.0, masked_mass_L2 = 0.0;
  double ghost_ratio_L1 = 0.0, ghost_ratio_L2 = 0.0;
  nlohmann::json mask;

  nlohmann::json to_json() const;
};

/// L1 (sum |F|) and L2 (sum |F|^2) masses inside and outside the mask, times
/// the cell area. ghost_ratio = (total - masked) / total.
GhostReport ghost_energy(const PhaseSpaceField& field, const Mask& mask, std::vector<std::string>* warnings = nullptr);

/// Least-squares slope of log(envelope) against log|l| over samples with
/// l in [lo, hi]. The envelope is the running maximum of |profile| over a
/// window of twice the local oscillation period, read off the spacing of
/// consecutive local minima; without minima it is |profile| itself.
double slope_estimate(const Signal& profile, double lo, double hi);

/// Running-max envelope used by slope_estimate, on the samples in [lo, hi].
std::vector<double> envelope(const Signal& profile, double lo, double hi);

}  // namespace wigner_lab
