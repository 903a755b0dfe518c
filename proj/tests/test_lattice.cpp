#include "gmra/lattice.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <set>

using namespace gmra;

TEST_CASE("dyadic scheme") {
  DilationScheme s = make_scheme({{2}});
  CHECK(s.N == 2);
  REQUIRE(s.zetas.size() == 2);
  CHECK(s.zetas[0] == TorusPoint{Rational(0)});
  CHECK(s.zetas[1] == TorusPoint{Rational(-1, 2)});
  for (const auto& w : rational_grid(s, 56)) {
    auto pre = preimages(s, w);
    auto want = oracle::dyadic_preimages(w[0].to_double());
    REQUIRE(pre.size() == 2);
    for (int l = 0; l < 2; ++l) {
      CHECK(pre[l][0].to_double() == doctest::Approx(want[l]));
      CHECK(alpha(s, pre[l]) == w);
    }
  }
}

TEST_CASE("non-expansive and singular matrices are rejected") {
  CHECK(error_code([] { make_scheme({{1}}); }) == ErrorCode::NonExpansive);
  CHECK(error_code([] { make_scheme({{2, 0}, {0, 1}}); }) == ErrorCode::NonExpansive);
  CHECK(error_code([] { make_scheme({{2, 4}, {1, 2}}); }) == ErrorCode::SingularMatrix);
}

TEST_CASE("quincunx scheme: coset representatives and preimages") {
  DilationScheme s = make_scheme({{1, -1}, {1, 1}});
  CHECK(s.N == 2);
  CHECK(determinant(s.A) == 2);
  std::set<TorusPoint> zs(s.zetas.begin(), s.zetas.end());
  CHECK(zs.size() == 2);
  for (const auto& w : rational_grid(s, 12)) {
    auto pre = preimages(s, w);
    std::set<TorusPoint> distinct(pre.begin(), pre.end());
    CHECK(distinct.size() == 2);
    for (const auto& p : pre) {
      CHECK(in_cube(p));
      CHECK(alpha(s, p) == w);
    }
  }
}

TEST_CASE("iterated preimages are labelled sN+q") {
  DilationScheme s = make_scheme({{2}});
  auto p2 = preimages_n(s, TorusPoint{Rational(0)}, 2);
  REQUIRE(p2.size() == 4);
  CHECK(p2[0] == TorusPoint{Rational(0)});
  CHECK(p2[1] == TorusPoint{Rational(-1, 4)});
  CHECK(p2[2] == TorusPoint{Rational(-1, 2)});
  CHECK(p2[3] == TorusPoint{Rational(1, 4)});
  for (const auto& p : p2) CHECK(alpha_n(s, p, 2) == TorusPoint{Rational(0)});
  CHECK(error_code([&] { preimages_n(s, TorusPoint{Rational(0)}, 30, 1024); }) == ErrorCode::DepthOverflow);
}

TEST_CASE("rational grid varies coordinate 0 fastest") {
  auto g = rational_grid(2, 4);
  REQUIRE(g.size() == 16);
  CHECK(g[0] == TorusPoint{Rational(0), Rational(0)});
  CHECK(g[1] == TorusPoint{Rational(1, 4), Rational(0)});
  CHECK(g[2] == TorusPoint{Rational(-1, 2), Rational(0)});
  CHECK(g[4] == TorusPoint{Rational(0), Rational(1, 4)});
}
