#include "gmra/catalog.hpp"

namespace gmra {

namespace {

Rational q(long long p, long long r) { return Rational(p, r); }

FilterFn indicator(const IntervalSet& set, const Value& v) { return FilterFn::piecewise(pc_indicator(set, v)); }

PiecewiseFn mask(const Rational& lo, const Rational& hi) { return pc_indicator(IntervalSet::single(lo, hi)); }

}  // namespace

SchemePtr dyadic_scheme() {
  static const SchemePtr s = std::make_shared<const DilationScheme>(make_scheme(IntMatrix{{2}}));
  return s;
}

SystemPtr dyadic_box_system() {
  auto s = dyadic_scheme();
  const Value r2 = Value::sqrt(2);
  IntervalSet h = IntervalSet::single(q(-1, 8), q(1, 8)).unite(IntervalSet::symmetric(q(1, 4), q(3, 8)));
  IntervalSet g = IntervalSet::symmetric(q(1, 8), q(1, 4)).unite(IntervalSet::symmetric(q(3, 8), q(1, 2)));
  MultiplicityPair mp = make_multiplicity_pair(*s, MultiplicityFn::constant(1, 1));
  return std::make_shared<const FilterSystem>(
      make_filter_system(s, mp, {{indicator(h, r2)}}, {{indicator(g, r2)}}, "dyadic-box"));
}

MultiplicityFn journe_multiplicity() {
  return MultiplicityFn::from_pieces({
      {{q(-1, 2), q(-3, 7)}, 1},
      {{q(-2, 7), q(-1, 7)}, 1},
      {{q(-1, 7), q(1, 7)}, 2},
      {{q(1, 7), q(2, 7)}, 1},
      {{q(3, 7), q(1, 2)}, 1},
  });
}

SystemPtr journe_canonical_system() {
  auto s = dyadic_scheme();
  const Value r2 = Value::sqrt(2);
  MultiplicityPair mp = make_multiplicity_pair(*s, journe_multiplicity());
  IntervalSet h11 = IntervalSet::single(q(-2, 7), q(-1, 4))
                        .unite(IntervalSet::single(q(-1, 7), q(1, 7)))
                        .unite(IntervalSet::single(q(1, 4), q(2, 7)));
  IntervalSet h21 = IntervalSet::symmetric(q(3, 7), q(1, 2));
  IntervalSet g11 = IntervalSet::symmetric(q(1, 7), q(1, 4));
  IntervalSet g12 = IntervalSet::single(q(-1, 7), q(1, 7));
  FilterMatrix H{{indicator(h11, r2), FilterFn::zero()}, {indicator(h21, r2), FilterFn::zero()}};
  FilterMatrix G{{indicator(g11, r2), indicator(g12, r2)}};
  return std::make_shared<const FilterSystem>(make_filter_system(s, mp, H, G, "journe-canonical"));
}

SystemPtr journe_smooth_system(const Rational& epsilon) {
  auto s = dyadic_scheme();
  const Value r2 = Value::sqrt(2);
  SmoothPtr p0 = make_qmf_lowpass(epsilon);
  SmoothPtr p1 = highpass_from_lowpass_classical(p0);
  MultiplicityPair mp = make_multiplicity_pair(*s, journe_multiplicity());
  const PiecewiseFn wide = mask(q(-2, 7), q(2, 7));
  const PiecewiseFn narrow = mask(q(-1, 7), q(1, 7));
  FilterMatrix H{{FilterFn::smooth(p0, Rational(), wide), FilterFn::smooth(p0, q(1, 2), narrow)},
                 {indicator(IntervalSet::symmetric(q(3, 7), q(1, 2)), r2), FilterFn::zero()}};
  FilterMatrix G{{FilterFn::smooth(p1, Rational(), wide), FilterFn::smooth(p1, q(1, 2), narrow)}};
  return std::make_shared<const FilterSystem>(make_filter_system(s, mp, H, G, "journe-smooth"));
}

IntervalSet journe_phi1_support() {
  return IntervalSet::single(q(-4, 7), q(-1, 2))
      .unite(IntervalSet::single(q(-2, 7), q(2, 7)))
      .unite(IntervalSet::single(q(1, 2), q(4, 7)));
}

IntervalSet journe_phi2_support() { return IntervalSet::symmetric(Rational(1), q(8, 7)); }

IntervalSet journe_wavelet_set() {
  return IntervalSet::symmetric(Rational(2), q(16, 7)).unite(IntervalSet::symmetric(q(2, 7), q(1, 2)));
}

}  // namespace gmra
