#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace nullflow {

// Finite-difference weights for the derivatives of order 0..max_order at x0,
// using the (possibly non-uniform) nodes xs. Fornberg's recursion.
// Result is indexed [order][node].
template <class Scalar>
std::vector<std::vector<Scalar>> fornberg_weights(Scalar x0, std::span<const Scalar> xs,
                                                  int max_order) {
  const std::size_t n = xs.size();
  if (n == 0 || static_cast<std::size_t>(max_order) >= n) {
    throw std::invalid_argument("fornberg_weights: need more nodes than the derivative order");
  }
  std::vector<std::vector<Scalar>> c(static_cast<std::size_t>(max_order) + 1,
                                     std::vector<Scalar>(n, Scalar(0)));
  Scalar c1 = 1;
  Scalar c4 = xs[0] - x0;
  c[0][0] = 1;
  for (std::size_t i = 1; i < n; ++i) {
    const int mn = std::min<int>(static_cast<int>(i), max_order);
    Scalar c2 = 1;
    const Scalar c5 = c4;
    c4 = xs[i] - x0;
    for (std::size_t j = 0; j < i; ++j) {
      const Scalar c3 = xs[i] - xs[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          c[k][i] = c1 * (Scalar(k) * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        }
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (int k = mn; k >= 1; --k) {
        c[k][j] = (c4 * c[k][j] - Scalar(k) * c[k - 1][j]) / c3;
      }
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

// Index window of `width` consecutive samples around k, shifted inward at the ends.
inline std::pair<std::size_t, std::size_t> stencil_window(std::size_t k, std::size_t n,
                                                          std::size_t width) {
  width = std::min(width, n);
  const std::size_t half = width / 2;
  std::size_t begin = k >= half ? k - half : 0;
  if (begin + width > n) begin = n - width;
  return {begin, begin + width};
}

}  // namespace nullflow
