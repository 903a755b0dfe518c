#pragma once

#include "gmra/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gmra {

using IntMatrix = std::vector<std::vector<long long>>;
using IntVector = std::vector<long long>;
using RationalMatrix = std::vector<std::vector<Rational>>;

// A point of R^d with exact coordinates. When it stands for a point of the
// torus every coordinate lies in [-1/2, 1/2).
using Point = std::vector<Rational>;
using TorusPoint = Point;

inline TorusPoint torus_point(const Rational& x) { return TorusPoint{x}; }

std::string to_string(const Point& p);

struct DilationScheme {
  int d = 0;
  IntMatrix A;
  IntMatrix B;  // transpose of A
  long long N = 0;
  RationalMatrix B_inv;
  std::vector<IntVector> coset_reps;  // representatives of Z^d / B Z^d, first is 0
  std::vector<TorusPoint> zetas;      // zeta_l = B^{-1} xi_l reduced to the cube

  // d == 1 convenience: the single matrix entry.
  long long a() const { return A[0][0]; }
};

DilationScheme make_scheme(const IntMatrix& A);

// Exact determinant by fraction-free elimination.
BigInt determinant(const IntMatrix& M);

TorusPoint reduce(const Point& x);
bool in_cube(const Point& x);

Point apply_B(const DilationScheme& s, const Point& x);
Point apply_B_inv(const DilationScheme& s, const Point& x);
// B^k x for any integer k (negative powers use B^{-1}).
Point apply_B_power(const DilationScheme& s, const Point& x, int k);

TorusPoint alpha(const DilationScheme& s, const TorusPoint& w);
TorusPoint alpha_n(const DilationScheme& s, const TorusPoint& w, int n);

// The fixed cross-section of alpha: B^{-1} applied to the cube representative.
Point sigma(const DilationScheme& s, const TorusPoint& w);

// omega_l = reduce(sigma(w) + zeta_l), l = 0..N-1.
std::vector<TorusPoint> preimages(const DilationScheme& s, const TorusPoint& w);

// All N^n points with alpha^n(x) = w; entry sN+q at depth n+1 is the s-th
// depth-n preimage of the q-th first-level preimage.
std::vector<TorusPoint> preimages_n(const DilationScheme& s, const TorusPoint& w, int n,
                                    std::uint64_t cap = std::uint64_t{1} << 20);

// Q^d points k/Q reduced to the cube, coordinate 0 varying fastest.
std::vector<TorusPoint> rational_grid(const DilationScheme& s, long long Q);
std::vector<TorusPoint> rational_grid(int d, long long Q);

}  // namespace gmra
