#include "gmra/catalog.hpp"
#include "gmra/wavelet.hpp"
#include "helpers.hpp"
#include "oracles.hpp"
#include "smoothness.hpp"

#include <doctest.h>

#include <cmath>

using namespace gmra;

namespace {
Rational q(long long p, long long r = 1) { return Rational(p, r); }

WaveletSystem box_wavelets() {
  auto sys = dyadic_box_system();
  auto phi = std::make_shared<const ScalingVector>(scaling_vector(sys, 3, 64, 40));
  return synthesize_wavelets(sys, phi);
}

// <chi[lo,hi), psi_{n,0,z}> for psi = chi of +-[1/4,1/2), by quadrature
std::complex<double> box_coefficient(double lo, double hi, int n, long long z) {
  const double s = std::ldexp(1.0, n);
  std::complex<double> acc = 0.0;
  for (auto [a, b] : {std::pair{0.25 * s, 0.5 * s}, std::pair{-0.5 * s, -0.25 * s}}) {
    double l = std::max(lo, a), h = std::min(hi, b);
    if (l < h) acc += oracle::simpson_exponential(l, h, static_cast<double>(z) / s, 20000);
  }
  return std::pow(2.0, -0.5 * n) * acc;
}
}  // namespace

TEST_CASE("wavelet level is bounded by the sampled box") {
  auto sys = dyadic_box_system();
  auto phi = std::make_shared<const ScalingVector>(scaling_vector(sys, 3, 64, 40));
  CHECK(error_code([&] { synthesize_wavelets(sys, phi, 5); }) == ErrorCode::BoxTooSmall);
  CHECK_NOTHROW(synthesize_wavelets(sys, phi, 4));
  WaveletSystem ws = synthesize_wavelets(sys, phi);
  CHECK(error_code([&] { ws.psi_hat(1, Point{q(0)}); }) == ErrorCode::IndexOutOfRange);
}

TEST_CASE("frame coefficients against quadrature") {
  WaveletSystem ws = box_wavelets();
  const PiecewiseFn f = pc_indicator(IntervalSet::single(q(1, 3), q(5, 2)), Value::one(), false);
  for (int n : {-1, 0, 1, 2, 3})
    for (long long z : {0LL, 1LL, -3LL, 17LL}) {
      auto got = frame_coefficient(ws, f, n, 0, BigInt(z));
      CHECK(std::abs(got - box_coefficient(1.0 / 3, 2.5, n, z)) < 1e-9);
    }
}

TEST_CASE("direct frame sum layers for the centered box") {
  WaveletSystem ws = box_wavelets();
  const PiecewiseFn f = pc_indicator(IntervalSet::single(q(-1, 4), q(1, 4)), Value::one(), false);
  const int n_min = -8;
  auto layers = frame_sum_direct_layers(ws, f, 2, n_min, 1 << 12);
  REQUIRE(layers.size() == 11);
  for (int n = n_min; n <= 2; ++n) CHECK(std::abs(layers[n - n_min] - oracle::box_quarter_layer(n)) < 2e-4);
}

TEST_CASE("off-center data: both frame-sum routes reach the norm") {
  WaveletSystem ws = box_wavelets();
  const PiecewiseFn f = pc_indicator(IntervalSet::single(q(1, 3), q(5, 2)), Value::one(), false);
  const double norm2 = 2.5 - 1.0 / 3;
  const double fj = frame_sum_FJ(ws, f, 6);
  const double direct = frame_sum_direct(ws, f, 6, -10, 1 << 12);
  CHECK(fj <= norm2 + 1e-12);
  CHECK(std::abs(fj - norm2) < 1e-9);
  CHECK(std::abs(direct - fj) < 1e-3);
}

TEST_CASE("direct sum needs exact compact wavelets") {
  auto sys = journe_smooth_system();
  auto phi = std::make_shared<const ScalingVector>(scaling_vector(sys, 3, 32, 40));
  WaveletSystem ws = synthesize_wavelets(sys, phi);
  const PiecewiseFn f = pc_indicator(IntervalSet::single(q(-1, 4), q(1, 4)), Value::one(), false);
  CHECK(error_code([&] { frame_sum_direct(ws, f, 2, -2, 16); }) == ErrorCode::Unsupported);
}

TEST_CASE("Cuntz relations and test vector shapes") {
  std::mt19937_64 rng(5);
  auto samples = random_torus_points(1, 200, rng);
  auto sys = journe_canonical_system();
  CuntzResiduals c = cuntz_residuals(sys, random_pc_hvector(sys, false, rng), random_pc_hvector(sys, true, rng), samples);
  CHECK(c.max() == 0.0);
  CHECK(c.exact);
  CHECK(error_code([&] {
          cuntz_residuals(sys, random_pc_hvector(sys, true, rng), random_pc_hvector(sys, true, rng), samples);
        }) == ErrorCode::DimensionMismatch);
  for (const auto& w : samples) CHECK(w.at(0) >= q(-1, 2));
}

TEST_CASE("isometries on single vectors") {
  // S_H of the constant (1, 0) vector has norm one at every point pair
  auto sys = dyadic_box_system();
  HVector one{[](const TorusPoint&) { return Value::one(); }};
  HVector sh = apply_SH(sys, one);
  for (Rational x : {q(0), q(1, 5), q(-3, 7)}) {
    const TorusPoint w{x};
    double sum = 0.0;
    for (const auto& p : preimages(*sys->scheme, w)) sum += std::norm(sh[0](p).num());
    CHECK(sum == doctest::Approx(2.0));
  }
}

TEST_CASE("second differences separate jumps from smooth wavelets") {
  auto second_differences = [](const SystemPtr& sys) {
    auto phi = std::make_shared<const ScalingVector>(scaling_vector(sys, 4, 64, 40));
    WaveletSystem ws = synthesize_wavelets(sys, phi);
    return std::pair{second_difference_max(ws, q(-3), q(3), q(1, 256)),
                     second_difference_max(ws, q(-3), q(3), q(1, 1024))};
  };
  auto [pc8, pc10] = second_differences(journe_canonical_system());
  auto [sm8, sm10] = second_differences(journe_smooth_system());
  CHECK(pc10 > 8.0 * pc8);  // a jump grows like h^-2
  CHECK(sm10 <= 2.0 * sm8);
}
