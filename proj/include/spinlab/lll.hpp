#pragma once

#include "spinlab/numbers.hpp"

#include <vector>

namespace spinlab {

// Integer LLL with delta = 3/4 and exact rational Gram-Schmidt bookkeeping.
// Dimensions here are tiny (<= 12) so the textbook algorithm is plenty.
inline void lll_reduce(std::vector<std::vector<Int>>& b) {
  const std::size_t n = b.size();
  if (n == 0) return;
  const std::size_t m = b[0].size();

  std::vector<std::vector<Rat>> mu(n, std::vector<Rat>(n, Rat(0)));
  std::vector<Rat> B(n, Rat(0));

  auto gram_schmidt = [&]() {
    std::vector<std::vector<Rat>> star(n, std::vector<Rat>(m, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < m; ++k) star[i][k] = Rat(b[i][k]);
      for (std::size_t j = 0; j < i; ++j) {
        Rat num(0);
        for (std::size_t k = 0; k < m; ++k) num += Rat(b[i][k]) * star[j][k];
        mu[i][j] = B[j] == 0 ? Rat(0) : num / B[j];
        for (std::size_t k = 0; k < m; ++k) star[i][k] -= mu[i][j] * star[j][k];
      }
      Rat nb(0);
      for (std::size_t k = 0; k < m; ++k) nb += star[i][k] * star[i][k];
      B[i] = nb;
    }
  };

  gram_schmidt();
  std::size_t k = 1;
  const Rat delta(3, 4);
  while (k < n) {
    for (std::size_t j = k; j-- > 0;) {
      Rat q = mu[k][j];
      Int r = numerator(q) >= 0 ? Int((numerator(q) * 2 + denominator(q)) / (2 * denominator(q)))
                                : Int(-((-numerator(q) * 2 + denominator(q)) / (2 * denominator(q))));
      if (r != 0) {
        for (std::size_t t = 0; t < m; ++t) b[k][t] -= r * b[j][t];
      }
    }
    gram_schmidt();
    if (k >= 1 && B[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
      std::swap(b[k], b[k - 1]);
      gram_schmidt();
      if (k > 1) --k;
    } else {
      ++k;
    }
  }
}

}  // namespace spinlab
