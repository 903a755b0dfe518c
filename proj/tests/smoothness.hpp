#pragma once

#include "gmra/parallel.hpp"
#include "gmra/wavelet.hpp"

#include <algorithm>
#include <vector>

// max over x in [lo, hi) step h of |psi(x+h) - 2 psi(x) + psi(x-h)| / h^2
inline double second_difference_max(const gmra::WaveletSystem& ws, const gmra::Rational& lo, const gmra::Rational& hi,
                                    const gmra::Rational& h) {
  using gmra::Point;
  std::vector<gmra::Rational> xs;
  for (gmra::Rational x = lo; x < hi; x += h) xs.push_back(x);
  auto vals = gmra::parallel_map<double>(xs.size(), [&](std::size_t i) {
    const gmra::Rational& x = xs[i];
    auto v = ws.psi_hat(0, Point{x + h}) - 2.0 * ws.psi_hat(0, Point{x}) + ws.psi_hat(0, Point{x - h});
    return std::abs(v) / (h * h).to_double();
  });
  return *std::max_element(vals.begin(), vals.end());
}
