#include "gmra/catalog.hpp"
#include "helpers.hpp"

#include <doctest.h>

using namespace gmra;

namespace {
Rational q(long long p, long long r = 1) { return Rational(p, r); }
}  // namespace

TEST_CASE("depth precondition") {
  auto sys = dyadic_box_system();
  CHECK(error_code([&] { scaling_vector(sys, 3, 16, 12); }) == ErrorCode::IndexOutOfRange);
  CHECK(error_code([&] { scaling_vector(sys, -1, 16, 40); }) == ErrorCode::IndexOutOfRange);
  CHECK_NOTHROW(scaling_vector(sys, 3, 16, 13));
}

TEST_CASE("flat radius") {
  CHECK(lowpass_flat_radius(*dyadic_box_system()) == q(1, 8));
  CHECK(lowpass_flat_radius(*journe_canonical_system()) > q(0));
}

TEST_CASE("shortcut agrees with the full product") {
  auto sys = journe_smooth_system();
  for (Rational x : {q(0), q(1, 3), q(-5, 7), q(13, 9), q(-3)}) {
    auto hist = partial_product_history(*sys, Point{x}, 30);
    PartialProduct pp = partial_product(*sys, Point{x}, 30, true);
    CHECK((pp.matrix - hist.back()).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("exact product for the dyadic box") {
  auto sys = dyadic_box_system();
  // phi = chi[-1/4, 1/4)
  CHECK(partial_product_values(*sys, Point{q(1, 5)}, 20)[0][0] == Value::one());
  CHECK(partial_product_values(*sys, Point{q(3, 10)}, 20)[0][0].is_exact_zero());
  CHECK(partial_product_values(*sys, Point{q(-1, 4)}, 20)[0][0] == Value::one());
}

TEST_CASE("Journe translate profiles are the level sets") {
  auto sys = journe_canonical_system();
  ScalingVector phi = scaling_vector(sys, 4, 64, 40);
  auto grid = rational_grid(1, 7 * 16);
  const MultiplicityFn m = journe_multiplicity();
  for (int i = 1; i <= 2; ++i) {
    auto prof = translate_norm_profile(phi, i, 4, grid);
    for (std::size_t g = 0; g < grid.size(); ++g) CHECK(prof[g] == (m(grid[g]) >= i ? 1.0 : 0.0));
  }
  CHECK(error_code([&] { translate_norm_profile(phi, 3, 4, grid); }) == ErrorCode::IndexOutOfRange);
}

TEST_CASE("refinement equation and l2 bound") {
  for (const auto& sys : {dyadic_box_system(), journe_canonical_system(), journe_smooth_system()}) {
    ScalingVector phi = scaling_vector(sys, 3, 64, 40);
    std::vector<Point> xs;
    for (int k = -100; k < 100; ++k) xs.push_back(Point{Rational(k, 50) + q(1, 997)});
    CHECK(refinement_residual(phi, xs) < 1e-12);
    for (int i = 1; i <= sys->c(); ++i) CHECK(l2_bound_check(*sys, i, 6, 64).ok());
  }
}

TEST_CASE("compact scaling vectors vanish off the box") {
  ScalingVector phi = scaling_vector(dyadic_box_system(), 2, 32, 40);
  CHECK(phi.compact);
  CHECK(phi.evaluate(Point{q(100)}).norm() == 0.0);
  ScalingVector smooth = scaling_vector(journe_smooth_system(), 2, 32, 40);
  CHECK_FALSE(smooth.compact);
}
