#include "gmra/lattice.hpp"

#include "gmra/errors.hpp"

#include <Eigen/Dense>

#include <cstdlib>
#include <numeric>

namespace gmra {

namespace {

// Upper-triangular basis (positive diagonal) of the lattice spanned by the
// rows of M, obtained by unimodular row operations.
IntMatrix row_hermite(IntMatrix M) {
  const std::size_t d = M.size();
  for (std::size_t col = 0; col < d; ++col) {
    for (std::size_t r = col + 1; r < d; ++r) {
      // Euclid on rows col and r until M[r][col] vanishes.
      while (M[r][col] != 0) {
        long long q = M[col][col] / M[r][col];
        for (std::size_t k = 0; k < d; ++k) M[col][k] -= q * M[r][k];
        std::swap(M[col], M[r]);
      }
    }
    if (M[col][col] < 0)
      for (auto& v : M[col]) v = -v;
  }
  return M;
}

RationalMatrix rational_inverse(const IntMatrix& M) {
  const std::size_t d = M.size();
  RationalMatrix a(d, std::vector<Rational>(2 * d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) a[i][j] = Rational(M[i][j]);
    a[i][d + i] = Rational(1);
  }
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t piv = col;
    while (piv < d && a[piv][col].is_zero()) ++piv;
    if (piv == d) throw Error(ErrorCode::SingularMatrix, "matrix is not invertible");
    std::swap(a[piv], a[col]);
    Rational inv = Rational(1) / a[col][col];
    for (auto& v : a[col]) v *= inv;
    for (std::size_t r = 0; r < d; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      Rational f = a[r][col];
      for (std::size_t k = 0; k < 2 * d; ++k) a[r][k] -= f * a[col][k];
    }
  }
  RationalMatrix inv(d, std::vector<Rational>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) inv[i][j] = a[i][d + j];
  return inv;
}

Point mat_vec(const RationalMatrix& M, const Point& x) {
  Point y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    Rational acc;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (!M[i][j].is_zero() && !x[j].is_zero()) acc += M[i][j] * x[j];
    y[i] = acc;
  }
  return y;
}

}  // namespace

std::string to_string(const Point& p) {
  if (p.size() == 1) return p[0].to_string();
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += p[i].to_string();
  }
  return s + ")";
}

BigInt determinant(const IntMatrix& M) {
  const std::size_t n = M.size();
  std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = M[i][j];
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[r], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

DilationScheme make_scheme(const IntMatrix& A) {
  const std::size_t d = A.size();
  if (d == 0) throw Error(ErrorCode::ConfigError, "dilation matrix is empty");
  for (const auto& row : A)
    if (row.size() != d) throw Error(ErrorCode::ConfigError, "dilation matrix must be square");

  BigInt det = determinant(A);
  if (det == 0) throw Error(ErrorCode::SingularMatrix, "det A = 0");

  Eigen::MatrixXd Ad(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) Ad(i, j) = static_cast<double>(A[i][j]);
  Eigen::VectorXcd ev = Ad.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (std::abs(ev[i]) <= 1.0 + 1e-9)
      throw Error(ErrorCode::NonExpansive, "eigenvalue of modulus " + std::to_string(std::abs(ev[i])));

  DilationScheme s;
  s.d = static_cast<int>(d);
  s.A = A;
  s.B.assign(d, IntVector(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) s.B[i][j] = A[j][i];
  BigInt absdet = det < 0 ? BigInt(-det) : det;
  s.N = absdet.convert_to<long long>();
  s.B_inv = rational_inverse(s.B);

  // B Z^d is spanned by the columns of B, i.e. the rows of A.
  IntMatrix U = row_hermite(A);
  IntVector digit(d, 0);
  for (long long count = 0; count < s.N; ++count) {
    s.coset_reps.push_back(digit);
    for (std::size_t k = 0; k < d; ++k) {
      if (++digit[k] < U[k][k]) break;
      digit[k] = 0;
    }
  }
  for (const auto& xi : s.coset_reps) {
    Point p(d);
    for (std::size_t k = 0; k < d; ++k) p[k] = Rational(xi[k]);
    s.zetas.push_back(reduce(mat_vec(s.B_inv, p)));
  }
  return s;
}

TorusPoint reduce(const Point& x) {
  TorusPoint r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = reduce_to_cube(x[i]);
  return r;
}

bool in_cube(const Point& x) {
  static const Rational half(1, 2);
  for (const auto& c : x)
    if (c < -half || c >= half) return false;
  return true;
}

Point apply_B(const DilationScheme& s, const Point& x) {
  Point y(x.size());
  for (int i = 0; i < s.d; ++i) {
    Rational acc;
    for (int j = 0; j < s.d; ++j)
      if (s.B[i][j] != 0) acc += Rational(s.B[i][j]) * x[j];
    y[i] = acc;
  }
  return y;
}

Point apply_B_inv(const DilationScheme& s, const Point& x) { return mat_vec(s.B_inv, x); }

Point apply_B_power(const DilationScheme& s, const Point& x, int k) {
  Point y = x;
  if (s.d == 1) {
    Rational f(1);
    for (int i = 0; i < std::abs(k); ++i) f *= Rational(s.a());
    y[0] = k >= 0 ? x[0] * f : x[0] / f;
    return y;
  }
  for (int i = 0; i < std::abs(k); ++i) y = k > 0 ? apply_B(s, y) : apply_B_inv(s, y);
  return y;
}

TorusPoint alpha(const DilationScheme& s, const TorusPoint& w) { return reduce(apply_B(s, w)); }

TorusPoint alpha_n(const DilationScheme& s, const TorusPoint& w, int n) {
  TorusPoint r = w;
  for (int i = 0; i < n; ++i) r = alpha(s, r);
  return r;
}

Point sigma(const DilationScheme& s, const TorusPoint& w) { return apply_B_inv(s, reduce(w)); }

std::vector<TorusPoint> preimages(const DilationScheme& s, const TorusPoint& w) {
  Point base = sigma(s, w);
  std::vector<TorusPoint> out;
  out.reserve(s.zetas.size());
  for (const auto& z : s.zetas) {
    Point p(base.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = base[i] + z[i];
    out.push_back(reduce(p));
  }
  return out;
}

std::vector<TorusPoint> preimages_n(const DilationScheme& s, const TorusPoint& w, int n,
                                    std::uint64_t cap) {
  if (n < 1) throw Error(ErrorCode::IndexOutOfRange, "preimage depth must be >= 1");
  std::uint64_t count = 1;
  for (int i = 0; i < n; ++i) {
    count *= static_cast<std::uint64_t>(s.N);
    if (count > cap)
      throw Error(ErrorCode::DepthOverflow, "N^n exceeds cap " + std::to_string(cap));
  }
  std::vector<TorusPoint> first = preimages(s, w);
  if (n == 1) return first;
  const std::size_t Nn = first.size();
  std::vector<TorusPoint> out(count);
  for (std::size_t q = 0; q < Nn; ++q) {
    auto sub = preimages_n(s, first[q], n - 1, cap);
    for (std::size_t si = 0; si < sub.size(); ++si) out[si * Nn + q] = std::move(sub[si]);
  }
  return out;
}

std::vector<TorusPoint> rational_grid(int d, long long Q) {
  if (Q < 1) throw Error(ErrorCode::IndexOutOfRange, "grid size must be >= 1");
  std::uint64_t total = 1;
  for (int i = 0; i < d; ++i) total *= static_cast<std::uint64_t>(Q);
  std::vector<TorusPoint> out;
  out.reserve(total);
  std::vector<long long> k(d, 0);
  for (std::uint64_t c = 0; c < total; ++c) {
    TorusPoint p(d);
    for (int i = 0; i < d; ++i) p[i] = reduce_to_cube(Rational(k[i], Q));
    out.push_back(std::move(p));
    for (int i = 0; i < d; ++i) {
      if (++k[i] < Q) break;
      k[i] = 0;
    }
  }
  return out;
}

std::vector<TorusPoint> rational_grid(const DilationScheme& s, long long Q) { return rational_grid(s.d, Q); }

}  // namespace gmra
