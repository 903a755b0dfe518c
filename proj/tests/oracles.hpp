#pragma once

// Reference computations that avoid the library code paths they check.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

// x - round-half-up(x), in doubles.
inline double reduce(double x) { return x - std::floor(x + 0.5); }

// Preimages of w under x -> 2x mod 1 on [-1/2, 1/2).
inline std::vector<double> dyadic_preimages(double w) { return {reduce(w / 2), reduce(w / 2 + 0.5)}; }

// int_lo^hi e^{-2 pi i t x} dx by composite Simpson with n (even) panels.
inline std::complex<double> simpson_exponential(double lo, double hi, double t, int n = 2000) {
  const double h = (hi - lo) / n;
  std::complex<double> acc = 0.0;
  for (int k = 0; k <= n; ++k) {
    double x = lo + k * h;
    double w = (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    acc += w * std::exp(std::complex<double>(0.0, -2.0 * std::numbers::pi * t * x));
  }
  return acc * h / 3.0;
}

// For psi = chi of +-[1/4,1/2) and f = chi[-1/4,1/4): layer n = -m carries
// 2^m * |period 2^-m| * |+-[2^-m-2, 2^-m-1)| = 2^{-m-1}; layers n >= 0 vanish.
inline double box_quarter_layer(int n) { return n >= 0 ? 0.0 : std::ldexp(1.0, n - 1); }

// midpoint rule for a real function on [lo, hi)
inline double midpoint(const std::function<double(double)>& f, double lo, double hi, long n) {
  const double h = (hi - lo) / static_cast<double>(n);
  double acc = 0.0;
  for (long k = 0; k < n; ++k) acc += f(lo + (static_cast<double>(k) + 0.5) * h);
  return acc * h;
}

// |p|^2 + |p(x + 1/2)|^2 for a callable p
inline double qmf_sum(const std::function<std::complex<double>(double)>& p, double x) {
  return std::norm(p(x)) + std::norm(p(x + 0.5));
}

}  // namespace oracle
