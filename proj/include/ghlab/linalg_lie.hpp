#pragma once

// Small-matrix linear algebra for SL(2,R), SO0(2,2) and their Lie algebras,
// together with the explicit maps between the two pictures.

#include <array>
#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "ghlab/errors.hpp"

namespace ghlab::lie {

using Complex = std::complex<double>;
using Mat4 = Eigen::Matrix4d;
using Mat4c = Eigen::Matrix4cd;
using Vec4 = Eigen::Vector4d;

/// Plain 2x2 matrix [[a, b], [c, d]]. No invariant is enforced; products of
/// long words live here before being wrapped into an SL2Element.
template <class T>
struct BasicMat2 {
  T a{1}, b{0}, c{0}, d{1};

  static constexpr BasicMat2 identity() { return {T(1), T(0), T(0), T(1)}; }

  constexpr T det() const { return a * d - b * c; }
  constexpr T trace() const { return a + d; }

  /// Adjugate; equals the inverse when det = 1.
  constexpr BasicMat2 adjugate() const { return {d, -b, -c, a}; }

  friend constexpr BasicMat2 operator*(const BasicMat2& x, const BasicMat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend constexpr BasicMat2 operator+(const BasicMat2& x, const BasicMat2& y) {
    return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
  }
  friend constexpr BasicMat2 operator-(const BasicMat2& x, const BasicMat2& y) {
    return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
  }
  friend constexpr BasicMat2 operator*(T s, const BasicMat2& x) {
    return {s * x.a, s * x.b, s * x.c, s * x.d};
  }
  friend constexpr bool operator==(const BasicMat2&, const BasicMat2&) = default;
};

using Mat2 = BasicMat2<double>;
using Mat2c = BasicMat2<Complex>;

/// max_ij |x_ij - y_ij|
double max_abs_diff(const Mat2& x, const Mat2& y);

/// Distance in PSL(2,R): min over the sign of max|x -/+ y|.
double projective_distance(const Mat2& x, const Mat2& y);

/// An element of SL(2,R). Construction checks |det - 1| against a tolerance
/// of 1e-12 relative to the size of the products entering the determinant.
class SL2Element {
 public:
  static constexpr double kDetTolerance = 1e-12;

  SL2Element() = default;
  explicit SL2Element(const Mat2& m);
  SL2Element(double a, double b, double c, double d) : SL2Element(Mat2{a, b, c, d}) {}

  const Mat2& mat() const { return m_; }
  double a() const { return m_.a; }
  double b() const { return m_.b; }
  double c() const { return m_.c; }
  double d() const { return m_.d; }
  double trace() const { return m_.trace(); }

  SL2Element inverse() const;
  friend SL2Element operator*(const SL2Element& x, const SL2Element& y);

  /// Representative with non-negative trace (the PSL(2,R) normal form).
  SL2Element positive() const;

 private:
  struct Unchecked {};
  SL2Element(const Mat2& m, Unchecked) : m_(m) {}
  Mat2 m_ = Mat2::identity();
};

/// Traceless 2x2 matrix [[a, b], [c, -a]].
template <class T>
struct BasicSl2Algebra {
  T a{0}, b{0}, c{0};

  BasicMat2<T> mat() const { return {a, b, c, -a}; }

  friend BasicSl2Algebra operator+(const BasicSl2Algebra& x, const BasicSl2Algebra& y) {
    return {x.a + y.a, x.b + y.b, x.c + y.c};
  }
  friend BasicSl2Algebra operator*(T s, const BasicSl2Algebra& x) {
    return {s * x.a, s * x.b, s * x.c};
  }
};

using Sl2Algebra = BasicSl2Algebra<double>;
using Sl2AlgebraC = BasicSl2Algebra<Complex>;

/// Traceless part of a 2x2 matrix.
Sl2Algebra traceless_part(const Mat2& m);

/// exp of a traceless 2x2 matrix (closed form, det exactly 1 up to rounding).
Mat2 exp_sl2(const Sl2Algebra& x);

/// [x, y] = xy - yx
Sl2Algebra bracket(const Sl2Algebra& x, const Sl2Algebra& y);

/// Ad(g) x = g x g^-1 for g in SL(2,R).
Sl2Algebra adjoint(const Mat2& g, const Sl2Algebra& x);

/// The (2,2) form diag(1, 1, -1, -1).
const Mat4& form_j();

/// Q = diag(-1, -1, 1, -1), the left/right swap involution.
const Mat4& q_matrix();

/// An element of SO0(2,2): m^t J m = J and det m = 1, checked at construction
/// to 1e-10 relative to the squared size of m.
class SO22Element {
 public:
  static constexpr double kTolerance = 1e-10;

  SO22Element() : m_(Mat4::Identity()) {}
  explicit SO22Element(const Mat4& m);

  const Mat4& mat() const { return m_; }
  double trace() const { return m_.trace(); }
  friend SO22Element operator*(const SO22Element& x, const SO22Element& y) {
    return SO22Element(x.m_ * y.m_, Unchecked{});
  }

  /// Residual max |m^t J m - J| used by the constructor.
  static double form_residual(const Mat4& m);

 private:
  struct Unchecked {};
  SO22Element(const Mat4& m, Unchecked) : m_(m) {}
  Mat4 m_;
};

/// Element of so0(2,2) (real) or of its complexification: m^t J + J m = 0.
template <class Scalar>
class BasicSo22Algebra {
 public:
  using Matrix = Eigen::Matrix<Scalar, 4, 4>;
  static constexpr double kTolerance = 1e-12;

  BasicSo22Algebra() : m_(Matrix::Zero()) {}
  explicit BasicSo22Algebra(const Matrix& m) : m_(m) {
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if (form_residual(m) > kTolerance * scale) {
      throw ValidationError("matrix is not in so0(2,2)");
    }
  }

  const Matrix& mat() const { return m_; }
  Scalar operator()(int i, int j) const { return m_(i, j); }

  static double form_residual(const Matrix& m) {
    const Matrix j = form_j().template cast<Scalar>();
    return (m.transpose() * j + j * m).cwiseAbs().maxCoeff();
  }

  friend BasicSo22Algebra operator+(const BasicSo22Algebra& x, const BasicSo22Algebra& y) {
    return BasicSo22Algebra(x.m_ + y.m_, Unchecked{});
  }
  friend BasicSo22Algebra operator*(Scalar s, const BasicSo22Algebra& x) {
    return BasicSo22Algebra(s * x.m_, Unchecked{});
  }

 private:
  struct Unchecked {};
  BasicSo22Algebra(const Matrix& m, Unchecked) : m_(m) {}
  Matrix m_;
};

using So22Algebra = BasicSo22Algebra<double>;
using So22AlgebraC = BasicSo22Algebra<Complex>;

/// PSL(2,R) -> SO0(2,1) < SO0(2,2). The (2,1) entry is ab - cd; the
/// frequently quoted "ad - cd" fails m^t J m = J already on diagonal matrices.
SO22Element phi_group(const SL2Element& g);

/// Differential of phi_group: sl(2) -> so0(2,2). Complex-linear on the
/// complexification.
template <class T>
BasicSo22Algebra<T> phi_alg(const BasicSl2Algebra<T>& x) {
  using Matrix = typename BasicSo22Algebra<T>::Matrix;
  const T two(2);
  Matrix m = Matrix::Zero();
  m(0, 1) = x.c - x.b;
  m(0, 2) = x.c + x.b;
  m(1, 0) = x.b - x.c;
  m(1, 2) = two * x.a;
  m(2, 0) = x.b + x.c;
  m(2, 1) = two * x.a;
  return BasicSo22Algebra<T>(m);
}

/// SL(2,R) x SL(2,R) -> SO0(2,2): the action M -> A M B^-1 on 2x2 matrices,
/// written in the basis (M1+M4, M2-M3, M1-M4, M2+M3)/sqrt(2) where the
/// determinant form becomes diag(1,1,-1,-1)/2.
SO22Element rho_so22(const SL2Element& left, const SL2Element& right);

/// The 2x2 matrix with coordinates v in the basis used by rho_so22.
Mat2 so22_basis_to_matrix(const Vec4& v);

/// Hyperbolic translation length 2 acosh(|tr|/2). Throws NotHyperbolic when
/// |tr| <= 2 + 1e-12.
double translation_length(const SL2Element& g);
double length_from_trace(double trace);

/// Translation length of a GH pair: the mean of the two lengths.
double ads_length(double len_left, double len_right);

/// E1..E6: E1, E2, E3 are the images of the standard sl(2) basis
/// [[0,1],[0,0]], diag(1/2,-1/2), [[0,0],[1,0]]; E4, E5, E6 span the rest.
const std::array<So22Algebra, 6>& e_basis();

/// Q M Q^-1 with Q = diag(-1,-1,1,-1): entry (i,j) is multiplied by q_i q_j.
template <class Derived>
auto q_conjugate(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  static constexpr int q[4] = {-1, -1, 1, -1};
  Eigen::Matrix<Scalar, 4, 4> out;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      out(i, j) = m(i, j) * Scalar(double(q[i] * q[j]));
    }
  }
  return out;
}

struct QTableEntry {
  int image = 0;
  int sign = 1;
};

/// Q E_i Q^-1 = sign * E_image (0-based): E1 <-> -E3, E2 -> -E2, E4, E5 fixed,
/// E6 -> -E6.
const std::array<QTableEntry, 6>& q_table();

/// Largest entry of Q E_i Q^-1 - sign E_image over the table.
double q_table_defect();

/// Matrix exponential by scaling and squaring with a truncated Taylor series
/// (terms dropped once below 1e-12 relative).
template <class Scalar, int N>
Eigen::Matrix<Scalar, N, N> expm(const Eigen::Matrix<Scalar, N, N>& x) {
  using Matrix = Eigen::Matrix<Scalar, N, N>;
  const double norm = x.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  }
  const Matrix scaled = x / Scalar(std::ldexp(1.0, squarings));
  Matrix term = Matrix::Identity();
  Matrix sum = Matrix::Identity();
  for (int k = 1; k < 64; ++k) {
    term = term * scaled / Scalar(double(k));
    sum += term;
    if (term.cwiseAbs().maxCoeff() <= 1e-12 * 1e-6 * sum.cwiseAbs().maxCoeff()) {
      break;
    }
  }
  for (int s = 0; s < squarings; ++s) {
    sum = sum * sum;
  }
  return sum;
}

}  // namespace ghlab::lie
