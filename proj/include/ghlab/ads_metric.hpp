#pragma once

// The frame inner product on so0(2,2) along the Fuchsian maximal surface,
// the operators built from it, and finite-difference harmonicity checks on
// rectangular patches of the upper half-plane.

#include <array>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ghlab/linalg_lie.hpp"

namespace ghlab::ads {

using lie::Complex;
using lie::Mat4;
using lie::Mat4c;
using lie::Vec4;

struct UpperHalfPoint {
  double x = 0;
  double y = 1;

  /// Throws InvalidArgument unless y > 0 and both are finite.
  static UpperHalfPoint make(double x, double y);
  Complex z() const { return {x, y}; }
};

/// (x/y, (x^2+y^2-1)/(2y), (x^2+y^2+1)/(2y), 0)
Vec4 embed_hyperboloid(const UpperHalfPoint& z);

/// |x1^2 + x2^2 - x3^2 - x4^2 + 1|
double quadric_residual(const Vec4& v);

/// Mobius action of SL(2,R).
UpperHalfPoint mobius(const lie::SL2Element& g, const UpperHalfPoint& z);

struct FrameMetric {
  Mat4 h;
  Mat4 hinv;

  /// ||H Hinv - I||_max
  double inverse_defect() const;
  /// Cholesky of H succeeds.
  bool positive_definite() const;
};

enum class Twist { None, Q };

/// H(z) and its inverse as closed-form matrices.
FrameMetric frame_metric(const UpperHalfPoint& z);

/// H^q = Q^t H Q.
FrameMetric q_frame_metric(const UpperHalfPoint& z);

FrameMetric metric_for(const UpperHalfPoint& z, Twist twist);

/// tr(A^t H conj(B) H^-1): complex-linear in A, anti-linear in B.
Complex iota(const FrameMetric& m, const Mat4c& a, const Mat4c& b);
Complex iota(const UpperHalfPoint& z, const lie::So22AlgebraC& a, const lie::So22AlgebraC& b);
double iota(const FrameMetric& m, const Mat4& a, const Mat4& b);

/// X_z = [[-z, z^2], [-1, z]].
lie::Sl2AlgebraC principal_direction(Complex z);

/// Coordinates against the dual basis E1*..E6*.
using DualCoeffs = Eigen::Matrix<Complex, 6, 1>;
using Gram = Eigen::Matrix<double, 6, 6>;

/// G_ij = iota(E_i, E_j).
Gram gram(const FrameMetric& m);

/// 2-norm condition number of the Gram matrix.
double gram_condition(const FrameMetric& m);

/// (iota(A, E_i))_i
DualCoeffs sharp(const FrameMetric& m, const Mat4c& a);
DualCoeffs sharp(const UpperHalfPoint& z, const lie::So22AlgebraC& a);

/// Inverse of sharp through the Gram matrix. Throws GramSingular when the
/// Cholesky factorization fails.
Mat4c unsharp(const FrameMetric& m, const DualCoeffs& s);

/// Closed forms for sharp E1, E2, E3 (only the first three dual coordinates
/// are nonzero).
DualCoeffs sharp_e1_closed(const UpperHalfPoint& z);
DualCoeffs sharp_e2_closed(const UpperHalfPoint& z);
DualCoeffs sharp_e3_closed(const UpperHalfPoint& z);

/// Components (p, q) of p dx + q dy.
template <class T>
struct OneForm {
  T p{};
  T q{};
};

/// *(p dx + q dy) = -q dx + p dy.
OneForm<double> hodge_star_1form(const OneForm<double>& w);

/// Anti-linear extension: *(phi dz) = i conj(phi) dz-bar, i.e.
/// (p, q) -> (-conj q, conj p).
OneForm<Complex> hodge_star_1form(const OneForm<Complex>& w);

/// Node grid [x0,x1] x [y0,y1] with (n+1)^2 nodes, x fastest.
class GridPatch {
 public:
  /// Throws InvalidArgument unless n >= 2, x0 < x1, y0 < y1 and y0 - hy > 0.
  GridPatch(double x0, double x1, double y0, double y1, int n);

  static GridPatch unit(int n) { return GridPatch(0, 1, 1, 2, n); }

  int n() const { return n_; }
  std::size_t side() const { return static_cast<std::size_t>(n_) + 1; }
  std::size_t node_count() const { return side() * side(); }
  double hx() const { return (x1_ - x0_) / n_; }
  double hy() const { return (y1_ - y0_) / n_; }
  double h() const { return std::max(hx(), hy()); }
  double x0() const { return x0_; }
  double x1() const { return x1_; }
  double y0() const { return y0_; }
  double y1() const { return y1_; }

  UpperHalfPoint node(std::size_t i, std::size_t j) const;
  UpperHalfPoint node(std::size_t k) const { return node(k % side(), k / side()); }
  bool interior(std::size_t k) const;

  GridPatch refined() const { return GridPatch(x0_, x1_, y0_, y1_, 2 * n_); }

 private:
  double x0_, x1_, y0_, y1_;
  int n_;
};

/// Polynomial sum c_k w^k evaluated at w = z, or at w = conj(z) for the
/// anti-holomorphic control.
struct Polynomial {
  std::vector<Complex> coeffs;
  bool antiholomorphic = false;

  Complex operator()(Complex z) const;
  std::string label() const;
};

/// An so0(2,2)-valued 1-form sampled on a patch: dx and dy components.
struct So22ValuedForm {
  GridPatch patch;
  std::vector<Mat4c> dx;
  std::vector<Mat4c> dy;

  explicit So22ValuedForm(const GridPatch& p)
      : patch(p), dx(p.node_count(), Mat4c::Zero()), dy(p.node_count(), Mat4c::Zero()) {}

  /// Largest so0(2,2) residual over the nodes.
  double algebra_defect() const;
};

/// phi(z) dz (x) Phi(X_z) at one node.
OneForm<Mat4c> principal_form(const UpperHalfPoint& z, const Polynomial& phi);

/// principal_form on every node; Twist::Q pushes each value through Q.
So22ValuedForm sample_principal_form(const GridPatch& patch, const Polynomial& phi,
                                     Twist twist = Twist::None);

/// Matrix-valued function on the nodes.
struct NodeField {
  GridPatch patch;
  std::vector<Mat4c> values;

  /// max entry modulus over interior nodes.
  double max_interior() const;
};

/// Componentwise curl d/dx q - d/dy p by centered differences; the boundary
/// ring is zero.
NodeField d_exterior(const So22ValuedForm& form);

/// -(sharp)^-1 *^-1 d * sharp: pointwise sharp, anti-linear star, curl, the
/// 2-form inverse star of the hyperbolic area y^-2 dx dy (multiply by y^2),
/// Gram solve, negation.
NodeField delta_coboundary(const So22ValuedForm& form, Twist twist = Twist::None);

struct PatchReport {
  GridPatch patch;
  std::string phi;
  double residual_d_max = 0;
  double residual_delta_max = 0;
  double residual_d_refined = 0;
  double residual_delta_refined = 0;
  /// residual(h/2) / residual(h) for d and for delta.
  double convergence_ratio_d = 0;
  double convergence_ratio = 0;
};

/// Residuals of the principal form for phi at the patch and its refinement.
PatchReport harmonicity_report(const GridPatch& patch, const Polynomial& phi,
                               Twist twist = Twist::None);

struct WpPairing {
  double lhs = 0;
  double rhs = 0;
};

/// lhs: Re of the midpoint sum of iota(phi Phi(X_z), psi Phi(X_z)) times the
/// i dz ^ dz-bar = 2 dx dy area factor. rhs: 32 times the midpoint sum of
/// Re(phi conj psi) y^2 dx dy.
WpPairing wp_patch_pairing(const Polynomial& phi, const Polynomial& psi, const GridPatch& patch);

struct QIsometryReport {
  bool hq_spd = false;
  double hq_symmetry = 0;
  double iota_error = 0;
  double table_defect = 0;
};

QIsometryReport q_isometry_check(const UpperHalfPoint& z, const Mat4c& a, const Mat4c& b);

/// Element of so0(2,2) with N(0,1) coordinates (real and imaginary parts
/// when `complex`) in the E-basis.
Mat4c random_algebra(std::mt19937_64& rng, bool complex = true);

}  // namespace ghlab::ads
