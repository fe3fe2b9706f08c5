#include "ghlab/linalg_lie.hpp"

#include <algorithm>

namespace ghlab::lie {

double max_abs_diff(const Mat2& x, const Mat2& y) {
  return std::max({std::abs(x.a - y.a), std::abs(x.b - y.b), std::abs(x.c - y.c),
                   std::abs(x.d - y.d)});
}

double projective_distance(const Mat2& x, const Mat2& y) {
  return std::min(max_abs_diff(x, y), max_abs_diff(x, -1.0 * y));
}

SL2Element::SL2Element(const Mat2& m) : m_(m) {
  if (!std::isfinite(m.a) || !std::isfinite(m.b) || !std::isfinite(m.c) ||
      !std::isfinite(m.d)) {
    throw ValidationError("SL2 element has non-finite entries");
  }
  const double scale = std::max(1.0, std::abs(m.a * m.d) + std::abs(m.b * m.c));
  if (std::abs(m.det() - 1.0) > kDetTolerance * scale) {
    throw ValidationError("SL2 element has det != 1");
  }
}

SL2Element SL2Element::inverse() const { return SL2Element(m_.adjugate(), Unchecked{}); }

SL2Element operator*(const SL2Element& x, const SL2Element& y) {
  return SL2Element(x.m_ * y.m_, SL2Element::Unchecked{});
}

SL2Element SL2Element::positive() const {
  return m_.trace() < 0 ? SL2Element(-1.0 * m_, Unchecked{}) : *this;
}

Sl2Algebra traceless_part(const Mat2& m) {
  return {(m.a - m.d) / 2, m.b, m.c};
}

Mat2 exp_sl2(const Sl2Algebra& x) {
  // x^2 = delta * I
  const double delta = x.a * x.a + x.b * x.c;
  double ch = 1.0;
  double sh_over = 1.0;
  if (std::abs(delta) < 1e-8) {
    ch = 1.0 + delta / 2 + delta * delta / 24;
    sh_over = 1.0 + delta / 6 + delta * delta / 120;
  } else if (delta > 0) {
    const double s = std::sqrt(delta);
    ch = std::cosh(s);
    sh_over = std::sinh(s) / s;
  } else {
    const double s = std::sqrt(-delta);
    ch = std::cos(s);
    sh_over = std::sin(s) / s;
  }
  return {ch + sh_over * x.a, sh_over * x.b, sh_over * x.c, ch - sh_over * x.a};
}

Sl2Algebra bracket(const Sl2Algebra& x, const Sl2Algebra& y) {
  return traceless_part(x.mat() * y.mat() - y.mat() * x.mat());
}

Sl2Algebra adjoint(const Mat2& g, const Sl2Algebra& x) {
  return traceless_part(g * x.mat() * g.adjugate());
}

const Mat4& form_j() {
  static const Mat4 j = Vec4(1, 1, -1, -1).asDiagonal();
  return j;
}

const Mat4& q_matrix() {
  static const Mat4 q = Vec4(-1, -1, 1, -1).asDiagonal();
  return q;
}

double SO22Element::form_residual(const Mat4& m) {
  return (m.transpose() * form_j() * m - form_j()).cwiseAbs().maxCoeff();
}

SO22Element::SO22Element(const Mat4& m) : m_(m) {
  if (!m.allFinite()) {
    throw ValidationError("SO(2,2) element has non-finite entries");
  }
  const double size = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double scale = size * size;
  if (form_residual(m) > kTolerance * scale) {
    throw ValidationError("matrix does not preserve diag(1,1,-1,-1)");
  }
  if (std::abs(m.determinant() - 1.0) > kTolerance * scale * scale) {
    throw ValidationError("SO(2,2) element has det != 1");
  }
}

SO22Element phi_group(const SL2Element& g) {
  const double a = g.a(), b = g.b(), c = g.c(), d = g.d();
  const double aa = a * a, bb = b * b, cc = c * c, dd = d * d;
  Mat4 m;
  m << a * d + b * c, a * c - b * d, a * c + b * d, 0,
      a * b - c * d, (aa - bb - cc + dd) / 2, (aa + bb - cc - dd) / 2, 0,
      a * b + c * d, (aa - bb + cc - dd) / 2, (aa + bb + cc + dd) / 2, 0,
      0, 0, 0, 1;
  return SO22Element(m);
}

namespace {

std::array<Mat2, 4> so22_basis() {
  const double s = 1.0 / std::sqrt(2.0);
  return {Mat2{s, 0, 0, s}, Mat2{0, s, -s, 0}, Mat2{s, 0, 0, -s}, Mat2{0, s, s, 0}};
}

double frobenius(const Mat2& x, const Mat2& y) {
  return x.a * y.a + x.b * y.b + x.c * y.c + x.d * y.d;
}

}  // namespace

Mat2 so22_basis_to_matrix(const Vec4& v) {
  const auto e = so22_basis();
  Mat2 out{0, 0, 0, 0};
  for (int i = 0; i < 4; ++i) {
    out = out + v(i) * e[i];
  }
  return out;
}

SO22Element rho_so22(const SL2Element& left, const SL2Element& right) {
  static const auto e = so22_basis();
  const Mat2 binv = right.mat().adjugate();
  Mat4 m;
  for (int j = 0; j < 4; ++j) {
    const Mat2 image = left.mat() * e[j] * binv;
    for (int i = 0; i < 4; ++i) {
      m(i, j) = frobenius(e[i], image);
    }
  }
  return SO22Element(m);
}

double length_from_trace(double trace) {
  const double t = std::abs(trace);
  if (!(t > 2.0 + 1e-12)) {
    throw NotHyperbolic("element is not hyperbolic (|tr| <= 2)");
  }
  return 2.0 * std::acosh(t / 2.0);
}

double translation_length(const SL2Element& g) { return length_from_trace(g.trace()); }

double ads_length(double len_left, double len_right) {
  if (len_left < 0 || len_right < 0) {
    throw InvalidArgument("translation lengths must be non-negative");
  }
  return 0.5 * (len_left + len_right);
}

const std::array<So22Algebra, 6>& e_basis() {
  static const std::array<So22Algebra, 6> basis = [] {
    Mat4 e4 = Mat4::Zero();
    e4(0, 3) = e4(3, 0) = 1;
    Mat4 e5 = Mat4::Zero();
    e5(1, 3) = e5(3, 1) = 1;
    Mat4 e6 = Mat4::Zero();
    e6(2, 3) = 1;
    e6(3, 2) = -1;
    return std::array<So22Algebra, 6>{
        phi_alg(Sl2Algebra{0, 1, 0}), phi_alg(Sl2Algebra{0.5, 0, 0}),
        phi_alg(Sl2Algebra{0, 0, 1}), So22Algebra(e4),
        So22Algebra(e5),              So22Algebra(e6)};
  }();
  return basis;
}

const std::array<QTableEntry, 6>& q_table() {
  static const std::array<QTableEntry, 6> table{
      QTableEntry{2, -1}, QTableEntry{1, -1}, QTableEntry{0, -1},
      QTableEntry{3, 1},  QTableEntry{4, 1},  QTableEntry{5, -1}};
  return table;
}

double q_table_defect() {
  double worst = 0;
  for (int i = 0; i < 6; ++i) {
    const auto& t = q_table()[i];
    const Mat4 lhs = q_conjugate(e_basis()[i].mat());
    const Mat4 rhs = double(t.sign) * e_basis()[t.image].mat();
    worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace ghlab::lie
