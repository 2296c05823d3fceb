#pragma once

namespace wigner_lab::detail {

template <class Multiplier>
void multiply_along_axis(std::vector<std::complex<double>>& data, std::span<const std::size_t> shape,
                         int axis, double spacing, Multiplier&& m) {
  const std::size_t padded = 2 * shape[axis];
  std::vector<std::complex<double>> weights(padded);
  for (std::size_t k = 0; k < padded; ++k) {
    const double kk = k < padded / 2 ? static_cast<double>(k)
                                     : static_cast<double>(k) - static_cast<double>(padded);
    weights[k] = m(kk / (static_cast<double>(padded) * spacing));
  }
  apply_axis_weights(data, shape, axis, weights);
}

}  // namespace wigner_lab::detail
