#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "wigner_lab/fio.hpp"
#include "wigner_lab/transforms.hpp"

namespace wigner_lab {

using PhasePoint = std::pair<double, double>;

/// (x, xi, y, eta) lattice of a Wigner kernel built from k_T on `grid`: the
/// position axes are the 2n-point lattices over the extent of `grid`, the
/// frequency axes are grid.reciprocal().
Grid4D kernel_grid(const Grid1D& grid);

/// Dense k_W(x, xi, y, eta) = W k_T(x, y, xi, -eta), with k_T the discrete
/// Schwartz kernel on the n-point lattice underlying grid4 = kernel_grid(g).
/// Refuses n > 64 unless `allow_large` is set.
KernelField wigner_kernel_via_schwartz(const PhaseSpec& phase, const SymbolSpec& symbol, const Grid4D& grid4,
                                       bool allow_large = false);

/// A_kappa(l) = \int e^{-2 pi i kappa r^3} e^{-2 pi i l r} dr. kappa = 1/4 is the
/// Airy function; kappa = 0 is the delta. Values with |l| / (4 kappa)^{1/3} > 60
/// are set to zero.
Profile cubic_profile(double kappa);

/// Closed-form factored k_W. Supported:
///   multiplier phases with cubic or lower phi and symbol 1:
///     delta(xi - eta) A_kappa(y - x + t phi'(eta)), kappa = t phi_3 / 4;
///   Kohn-Nirenberg with symbol 1 (identity) or a separable trigonometric symbol.
KernelField wigner_kernel_analytic(const PhaseSpec& phase, const SymbolSpec& symbol, const Grid4D& grid4);

/// G_m(z, w) = <T pi(w) g, pi(z) g> with pi(x, xi) g(t) = e^{2 pi i xi t} g(t - x),
/// computed on `fine` (default Grid1D(0, 32, 2048)). Appends a warning when the
/// transformed window has mass near the boundary of `fine`.
cplx gabor_matrix(const PhaseSpec& phase, const SymbolSpec& symbol, PhasePoint z, PhasePoint w,
                  const WindowSpec& window = {WindowSpec::Kind::standard_gaussian, WindowSpec::Normalization::gabor},
                  std::vector<std::string>* warnings = nullptr, std::optional<Grid1D> fine = std::nullopt);

/// Same for all pairs (zs[i], ws[j]); entry [i][j].
std::vector<std::vector<cplx>> gabor_matrix_block(const PhaseSpec& phase, const SymbolSpec& symbol,
                                                  const std::vector<PhasePoint>& zs, const std::vector<PhasePoint>& ws,
                                                  const WindowSpec& window, std::vector<std::string>* warnings = nullptr,
                                                  std::optional<Grid1D> fine = std::nullopt);

struct IntertwiningReport {
  std::vector<PhasePoint> points;
  std::vector<cplx> contracted;  // dx dxi sum_w k_W(z, w) W(f, g)(w)
  std::vector<cplx> direct;      // W(T f, T g)(z)
  double relative_error = 0.0;   // max |contracted - direct| / max |direct|
};

/// Contraction of a dense k_W against W(f, g) at `count` random lattice points
/// with |x|, |xi| <= interior, against W(T f, T g).
IntertwiningReport intertwining_check(const PhaseSpec& phase, const SymbolSpec& symbol, const DenseKernel& kw,
                                      const Signal& f, const Signal& g, std::size_t count, double interior,
                                      std::uint64_t seed = 7);

}  // namespace wigner_lab
