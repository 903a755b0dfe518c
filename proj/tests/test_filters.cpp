#include "gmra/catalog.hpp"
#include "helpers.hpp"

#include <doctest.h>

using namespace gmra;

namespace {
Rational q(long long p, long long r = 1) { return Rational(p, r); }
FilterFn pc(const IntervalSet& s, const Value& v) { return FilterFn::piecewise(pc_indicator(s, v)); }
}  // namespace

TEST_CASE("structure checks raise the documented errors") {
  auto s = dyadic_scheme();
  MultiplicityPair mp = make_multiplicity_pair(*s, MultiplicityFn::constant(1, 1));
  const Value r2 = Value::sqrt(2);
  FilterFn g = pc(IntervalSet::symmetric(q(1, 4), q(1, 2)), r2);
  // h(0) = 1 instead of sqrt 2
  FilterFn weak = pc(IntervalSet::single(q(-1, 4), q(1, 4)), Value::one());
  CHECK(error_code([&] { make_filter_system(s, mp, {{weak}}, {{g}}); }) == ErrorCode::LowPassViolation);
  // Journe geometry with h_22 nonzero where S_2 is empty
  MultiplicityPair jm = make_multiplicity_pair(*s, journe_multiplicity());
  auto canon = journe_canonical_system();
  FilterMatrix H = canon->H;
  H[1][1] = pc(IntervalSet::symmetric(q(3, 7), q(1, 2)), r2);
  CHECK(error_code([&] { make_filter_system(s, jm, H, canon->G); }) == ErrorCode::SupportViolation);
  CHECK(error_code([&] { assemble_filter_system(s, jm, {{weak}}, canon->G); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("dyadic box equations at single points") {
  auto sys = dyadic_box_system();
  for (Rational w : {q(0), q(1, 4), q(-3, 8), q(5, 17)}) {
    CHECK(verify_filter_eq(*sys, {w}).max() == 0.0);
    CHECK(verify_highpass_eq(*sys, {w}).max() == 0.0);
    CHECK(verify_cross_orth(*sys, {w}).max() == 0.0);
    CHECK(verify_column_orth(*sys, {w}).max() == 0.0);
  }
  KLMatrices kl = build_KL(*sys, {q(1, 4)});
  CHECK(kl.L.rows() == 2);
  CHECK(kl.defect == 0.0);
}

TEST_CASE("equations fail for a broken high-pass") {
  auto sys = dyadic_box_system();
  FilterMatrix G{{pc(IntervalSet::single(q(1, 8), q(1, 2)), Value::sqrt(2))}};
  FilterSystem broken = assemble_filter_system(sys->scheme, sys->mp, sys->H, G);
  SweepReport sw = sweep_equations(broken, rational_grid(1, 64));
  CHECK(sw.max() > 0.5);
  CHECK(sw.worst.has_value());
}

TEST_CASE("high-pass completion") {
  auto grid = rational_grid(1, 7 * 16);
  for (const auto& sys : {dyadic_box_system(), journe_canonical_system(), journe_smooth_system()}) {
    FilterMatrix G = complete_highpass(*sys->scheme, sys->mp, sys->H, grid);
    CHECK(static_cast<int>(G.size()) == sys->c_tilde());
    FilterSystem done = assemble_filter_system(sys->scheme, sys->mp, sys->H, G);
    CHECK(sweep_equations(done, grid).max() < 1e-10);
    for (const auto& w : grid) CHECK(build_KL(done, w).defect < 1e-10);
  }
}
