#pragma once

#include "gmra/cascade.hpp"

namespace gmra {

// A = [2] on the line.
SchemePtr dyadic_scheme();

// m = 1, h = sqrt2 (chi[-1/8,1/8) + chi +-[1/4,3/8)), g = sqrt2 (chi +-[1/8,1/4) + chi +-[3/8,1/2)).
SystemPtr dyadic_box_system();

// m = 2 on [-1/7,1/7), 1 on +-[1/7,2/7) and +-[3/7,1/2), 0 elsewhere.
MultiplicityFn journe_multiplicity();

// Piecewise-constant filters whose scaling vector lives on the Journe set.
SystemPtr journe_canonical_system();

// The same geometry with the smooth QMF p0 and p1(x) = e^{2 pi i x} conj p0(x + 1/2).
SystemPtr journe_smooth_system(const Rational& epsilon = default_epsilon());

// Pieces of the line on which the Journe scaling functions and wavelet are indicators.
IntervalSet journe_phi1_support();   // [-4/7,-1/2) u [-2/7,2/7) u [1/2,4/7)
IntervalSet journe_phi2_support();   // +-[1,8/7)
IntervalSet journe_wavelet_set();    // +-[2,16/7) u +-[2/7,1/2)

}  // namespace gmra
