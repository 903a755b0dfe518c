#include "gmra/catalog.hpp"
#include "gmra/msystems.hpp"
#include "helpers.hpp"

#include <doctest.h>

using namespace gmra;

namespace {
Rational q(long long p, long long r = 1) { return Rational(p, r); }

std::vector<TorusPoint> samples() {
  std::vector<TorusPoint> out;
  for (int k = -60; k < 60; ++k) out.push_back(TorusPoint{Rational(2 * k + 1, 241)});
  return out;
}

bool is_identity(const ValueMatrix& M) {
  for (std::size_t i = 0; i < M.size(); ++i)
    for (std::size_t j = 0; j < M[i].size(); ++j)
      if (!(M[i][j] == (i == j ? Value::one() : Value::zero()))) return false;
  return true;
}
}  // namespace

TEST_CASE("filters and M-systems round trip") {
  for (const auto& sys : {dyadic_box_system(), journe_canonical_system(), journe_smooth_system()}) {
    MSystem M = msystem_from_filters(sys);
    FilterSystem back = filters_from_msystem(M);
    for (const auto& w : samples()) {
      auto a = sys->H_values(w), b = back.H_values(w);
      for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) CHECK(std::abs(a[i][j].num() - b[i][j].num()) < 1e-14);
      auto g = sys->G_values(w), gb = back.G_values(w);
      for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g[i].size(); ++j) CHECK(std::abs(g[i][j].num() - gb[i][j].num()) < 1e-14);
    }
  }
}

TEST_CASE("canonical Journe M-system from the tables") {
  MSystem MJ = canonical_journe_msystem();
  MSystem fromf = msystem_from_filters(journe_canonical_system());
  CHECK(msystem_distance(MJ, fromf, samples()) == 0.0);
  // T11 = +-[1/7,3/14) carries m_1 = (sqrt 2)
  auto v = MJ.at(1, TorusPoint{q(1, 6)});
  REQUIRE(v.size() == 1);
  CHECK(v[0] == Value::sqrt(2));
  CHECK(error_code([&] { MJ.at(2, TorusPoint{q(1, 3)}); }) == ErrorCode::IndexOutOfRange);
}

TEST_CASE("initial conditions at the fixed point") {
  MSystem MJ = canonical_journe_msystem();
  CHECK_NOTHROW(msystem_from_filters(journe_canonical_system(), &MJ));
  // the smooth system's second row changes sign relative to the canonical one
  CHECK(error_code([&] { msystem_from_filters(journe_smooth_system(), &MJ); }) ==
        ErrorCode::InitialConditionViolated);
  CHECK(initial_condition_defect(MJ, MJ) == 0.0);
}

TEST_CASE("unitary sections") {
  MSystem MJ = canonical_journe_msystem();
  for (const auto& w : samples()) {
    UnitarySection u = msystem_to_unitary_section(MJ, w);
    CHECK(u.defect < 1e-15);
    CHECK(static_cast<int>(u.values.size()) == MJ.length_at(w));
  }
}

TEST_CASE("the smooth loop element") {
  LoopElement Lp = journe_loop_element();
  CHECK(is_identity(Lp.at(TorusPoint{q(0)})));
  // P4 = +-[3/7,1/2) has one coordinate for each of m, m(x/2), m((x+1)/2)
  CHECK(Lp.at(TorusPoint{q(15, 32)}).size() == 2);
  CHECK(Lp.at(TorusPoint{q(1, 5)}).size() == 2);
  CHECK(Lp.at(TorusPoint{q(5, 14)}).size() == 1);
  // on T11 the acted M-system is the row-phased smooth high-pass
  SmoothPtr p0 = make_qmf_lowpass(default_epsilon());
  SmoothPtr p1 = highpass_from_lowpass_classical(p0);
  MSystem acted = loop_act(Lp, canonical_journe_msystem());
  const Rational x = q(3, 20);
  auto v = acted.at(1, TorusPoint{x});
  REQUIRE(v.size() == 1);
  CHECK(std::abs(v[0].num() + (*p1)(x).num()) < 1e-15);
}

TEST_CASE("group action") {
  MSystem MJ = canonical_journe_msystem();
  LoopElement id = identity_loop(MJ.scheme, MJ.mp);
  CHECK(msystem_distance(loop_act(id, MJ), MJ, samples()) == 0.0);
  LoopElement Lp = journe_loop_element();
  CHECK(loop_distance(compose(Lp, id), Lp, samples()) < 1e-15);
  MSystem box = msystem_from_filters(dyadic_box_system());
  CHECK(error_code([&] { loop_act(Lp, box); }) == ErrorCode::DimensionMismatch);
  CHECK(error_code([&] { loop_quotient(MJ, box); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("partition tables") {
  IntervalSet t;
  for (const auto& p : journe_t_pieces()) t = t.unite(p.set);
  IntervalSet all;
  for (const auto& p : journe_p_pieces()) all = all.unite(p.set);
  CHECK(all == IntervalSet::torus());
  CHECK(journe_t_pieces().size() == 5);
  CHECK(journe_p_pieces().size() == 4);
}
