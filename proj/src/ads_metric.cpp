#include "ghlab/ads_metric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ghlab/simd/kernels.hpp"

namespace ghlab::ads {

using lie::e_basis;

UpperHalfPoint UpperHalfPoint::make(double x, double y) {
  if (!std::isfinite(x) || !std::isfinite(y) || !(y > 0))
    throw InvalidArgument("point is not in the upper half-plane");
  return {x, y};
}

Vec4 embed_hyperboloid(const UpperHalfPoint& z) {
  const double r2 = z.x * z.x + z.y * z.y;
  return {z.x / z.y, (r2 - 1) / (2 * z.y), (r2 + 1) / (2 * z.y), 0};
}

double quadric_residual(const Vec4& v) {
  return std::abs(v[0] * v[0] + v[1] * v[1] - v[2] * v[2] - v[3] * v[3] + 1);
}

UpperHalfPoint mobius(const lie::SL2Element& g, const UpperHalfPoint& z) {
  const Complex w = (g.a() * z.z() + g.b()) / (g.c() * z.z() + g.d());
  return UpperHalfPoint::make(w.real(), w.imag());
}

double FrameMetric::inverse_defect() const {
  return (h * hinv - Mat4::Identity()).cwiseAbs().maxCoeff();
}

bool FrameMetric::positive_definite() const {
  Eigen::LLT<Mat4> llt(h);
  return llt.info() == Eigen::Success;
}

FrameMetric frame_metric(const UpperHalfPoint& z) {
  // H = D + 2 (D f)(D f)^t with D = diag(1, 1, -1, 1) and f the embedded
  // point; the inverse flips the signs of the (1,3) and (2,3) pairs.
  const Vec4 f = embed_hyperboloid(z);
  const Vec4 df(f[0], f[1], -f[2], f[3]);
  FrameMetric m;
  m.h = Vec4(1, 1, -1, 1).asDiagonal();
  m.h += 2 * df * df.transpose();
  m.hinv = m.h;
  for (int i : {0, 1}) {
    m.hinv(i, 2) = -m.hinv(i, 2);
    m.hinv(2, i) = -m.hinv(2, i);
  }
  return m;
}

FrameMetric q_frame_metric(const UpperHalfPoint& z) {
  const FrameMetric m = frame_metric(z);
  const Mat4& q = lie::q_matrix();
  return {q.transpose() * m.h * q, q.transpose() * m.hinv * q};
}

FrameMetric metric_for(const UpperHalfPoint& z, Twist twist) {
  return twist == Twist::Q ? q_frame_metric(z) : frame_metric(z);
}

Complex iota(const FrameMetric& m, const Mat4c& a, const Mat4c& b) {
  const Mat4c h = m.h.cast<Complex>();
  const Mat4c hinv = m.hinv.cast<Complex>();
  return (a.transpose() * h * b.conjugate() * hinv).trace();
}

Complex iota(const UpperHalfPoint& z, const lie::So22AlgebraC& a, const lie::So22AlgebraC& b) {
  return iota(frame_metric(z), a.mat(), b.mat());
}

double iota(const FrameMetric& m, const Mat4& a, const Mat4& b) {
  return (a.transpose() * m.h * b * m.hinv).trace();
}

lie::Sl2AlgebraC principal_direction(Complex z) { return {-z, z * z, Complex(-1)}; }

Gram gram(const FrameMetric& m) {
  Gram g;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) g(i, j) = iota(m, e_basis()[i].mat(), e_basis()[j].mat());
  return g;
}

double gram_condition(const FrameMetric& m) {
  Eigen::SelfAdjointEigenSolver<Gram> es(gram(m));
  const auto ev = es.eigenvalues().cwiseAbs();
  return ev.maxCoeff() / ev.minCoeff();
}

DualCoeffs sharp(const FrameMetric& m, const Mat4c& a) {
  DualCoeffs s;
  for (int i = 0; i < 6; ++i) s[i] = iota(m, a, e_basis()[i].mat().cast<Complex>());
  return s;
}

DualCoeffs sharp(const UpperHalfPoint& z, const lie::So22AlgebraC& a) {
  return sharp(frame_metric(z), a.mat());
}

namespace {

Mat4c combine(const DualCoeffs& c) {
  Mat4c out = Mat4c::Zero();
  for (int i = 0; i < 6; ++i) out += c[i] * e_basis()[i].mat().cast<Complex>();
  return out;
}

Mat4c unsharp_with(const Gram& g, const DualCoeffs& s) {
  // sharp(sum a_j E_j)_i = sum_j a_j G_ji and G is real symmetric.
  Eigen::LLT<Gram> llt(g);
  if (llt.info() != Eigen::Success) throw GramSingular("Gram matrix of iota is not positive definite");
  const Eigen::Matrix<double, 6, 1> re = llt.solve(s.real());
  const Eigen::Matrix<double, 6, 1> im = llt.solve(s.imag());
  DualCoeffs a;
  for (int i = 0; i < 6; ++i) a[i] = Complex(re[i], im[i]);
  return combine(a);
}

}  // namespace

Mat4c unsharp(const FrameMetric& m, const DualCoeffs& s) { return unsharp_with(gram(m), s); }

DualCoeffs sharp_e1_closed(const UpperHalfPoint& z) {
  const double x = z.x, k = 4 / (z.y * z.y);
  DualCoeffs s = DualCoeffs::Zero();
  s[0] = k;
  s[1] = k * x;
  s[2] = -k * x * x;
  return s;
}

DualCoeffs sharp_e2_closed(const UpperHalfPoint& z) {
  const double x = z.x, y = z.y, r2 = x * x + y * y, k = 4 / (y * y);
  DualCoeffs s = DualCoeffs::Zero();
  s[0] = k * x;
  s[1] = k * (x * x + y * y / 2);
  s[2] = -k * x * r2;
  return s;
}

DualCoeffs sharp_e3_closed(const UpperHalfPoint& z) {
  const double x = z.x, y = z.y, r2 = x * x + y * y, k = 4 / (y * y);
  DualCoeffs s = DualCoeffs::Zero();
  s[0] = -k * x * x;
  s[1] = -k * x * r2;
  s[2] = k * r2 * r2;
  return s;
}

OneForm<double> hodge_star_1form(const OneForm<double>& w) { return {-w.q, w.p}; }

OneForm<Complex> hodge_star_1form(const OneForm<Complex>& w) {
  return {-std::conj(w.q), std::conj(w.p)};
}

GridPatch::GridPatch(double x0, double x1, double y0, double y1, int n)
    : x0_(x0), x1_(x1), y0_(y0), y1_(y1), n_(n) {
  if (n < 2 || !(x0 < x1) || !(y0 < y1))
    throw InvalidArgument("patch needs x0 < x1, y0 < y1 and n >= 2");
  if (!(y0 - hy() > 0)) throw InvalidArgument("patch stencil leaves the upper half-plane");
}

UpperHalfPoint GridPatch::node(std::size_t i, std::size_t j) const {
  return {x0_ + static_cast<double>(i) * hx(), y0_ + static_cast<double>(j) * hy()};
}

bool GridPatch::interior(std::size_t k) const {
  const std::size_t i = k % side(), j = k / side();
  return i > 0 && j > 0 && i + 1 < side() && j + 1 < side();
}

Complex Polynomial::operator()(Complex z) const {
  const Complex w = antiholomorphic ? std::conj(z) : z;
  Complex acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * w + *it;
  return acc;
}

std::string Polynomial::label() const {
  std::ostringstream out;
  const char* var = antiholomorphic ? "conj(z)" : "z";
  bool first = true;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] == Complex(0)) continue;
    if (!first) out << " + ";
    first = false;
    if (coeffs[k] != Complex(1) || k == 0) {
      if (coeffs[k].imag() == 0) {
        out << coeffs[k].real();
      } else {
        out << "(" << coeffs[k].real() << (coeffs[k].imag() < 0 ? "" : "+") << coeffs[k].imag()
            << "i)";
      }
    }
    if (k >= 1) out << var;
    if (k >= 2) out << "^" << k;
  }
  return first ? "0" : out.str();
}

double So22ValuedForm::algebra_defect() const {
  double worst = 0;
  for (std::size_t k = 0; k < dx.size(); ++k) {
    worst = std::max(worst, lie::So22AlgebraC::form_residual(dx[k]));
    worst = std::max(worst, lie::So22AlgebraC::form_residual(dy[k]));
  }
  return worst;
}

OneForm<Mat4c> principal_form(const UpperHalfPoint& z, const Polynomial& phi) {
  const Mat4c x = lie::phi_alg(principal_direction(z.z())).mat();
  const Complex c = phi(z.z());
  // dz = dx + i dy
  return {c * x, Complex(0, 1) * c * x};
}

So22ValuedForm sample_principal_form(const GridPatch& patch, const Polynomial& phi, Twist twist) {
  So22ValuedForm form(patch);
  for (std::size_t k = 0; k < patch.node_count(); ++k) {
    const auto w = principal_form(patch.node(k), phi);
    form.dx[k] = twist == Twist::Q ? Mat4c(lie::q_conjugate(w.p)) : w.p;
    form.dy[k] = twist == Twist::Q ? Mat4c(lie::q_conjugate(w.q)) : w.q;
  }
  return form;
}

double NodeField::max_interior() const {
  double worst = 0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!patch.interior(k)) continue;
    worst = std::max(worst, values[k].cwiseAbs().maxCoeff());
  }
  return worst;
}

namespace {

/// Curl of `planes` scalar components given as (p, q) plane pairs.
void curl_planes(const GridPatch& patch, const std::vector<std::vector<double>>& p,
                 const std::vector<std::vector<double>>& q, std::vector<std::vector<double>>& out) {
  const auto& k = simd::active();
  out.assign(p.size(), std::vector<double>(patch.node_count()));
  for (std::size_t c = 0; c < p.size(); ++c) {
    k.curl_centered(p[c].data(), q[c].data(), patch.side(), patch.side(), patch.hx(), patch.hy(),
                    out[c].data());
  }
}

}  // namespace

NodeField d_exterior(const So22ValuedForm& form) {
  const GridPatch& patch = form.patch;
  const std::size_t nodes = patch.node_count();
  // 16 entries x (re, im)
  std::vector<std::vector<double>> p(32, std::vector<double>(nodes)), q = p, out;
  for (std::size_t k = 0; k < nodes; ++k) {
    for (int e = 0; e < 16; ++e) {
      p[2 * e][k] = form.dx[k](e / 4, e % 4).real();
      p[2 * e + 1][k] = form.dx[k](e / 4, e % 4).imag();
      q[2 * e][k] = form.dy[k](e / 4, e % 4).real();
      q[2 * e + 1][k] = form.dy[k](e / 4, e % 4).imag();
    }
  }
  curl_planes(patch, p, q, out);
  NodeField field{patch, std::vector<Mat4c>(nodes)};
  for (std::size_t k = 0; k < nodes; ++k) {
    for (int e = 0; e < 16; ++e) field.values[k](e / 4, e % 4) = Complex(out[2 * e][k], out[2 * e + 1][k]);
  }
  return field;
}

NodeField delta_coboundary(const So22ValuedForm& form, Twist twist) {
  const GridPatch& patch = form.patch;
  const std::size_t nodes = patch.node_count();
  // sharp, then the anti-linear star, stored as 6 dual coordinates x (re, im).
  std::vector<std::vector<double>> p(12, std::vector<double>(nodes)), q = p, out;
  std::vector<Gram> grams(nodes);
  for (std::size_t k = 0; k < nodes; ++k) {
    const UpperHalfPoint z = patch.node(k);
    const FrameMetric m = metric_for(z, twist);
    grams[k] = gram(m);
    const DualCoeffs sp = sharp(m, form.dx[k]);
    const DualCoeffs sq = sharp(m, form.dy[k]);
    for (int i = 0; i < 6; ++i) {
      const auto star = hodge_star_1form(OneForm<Complex>{sp[i], sq[i]});
      p[2 * i][k] = star.p.real();
      p[2 * i + 1][k] = star.p.imag();
      q[2 * i][k] = star.q.real();
      q[2 * i + 1][k] = star.q.imag();
    }
  }
  curl_planes(patch, p, q, out);
  NodeField field{patch, std::vector<Mat4c>(nodes, Mat4c::Zero())};
  for (std::size_t k = 0; k < nodes; ++k) {
    if (!patch.interior(k)) continue;
    const double y = patch.node(k).y;
    DualCoeffs s;
    for (int i = 0; i < 6; ++i) s[i] = Complex(out[2 * i][k], out[2 * i + 1][k]) * (y * y);
    field.values[k] = -unsharp_with(grams[k], s);
  }
  return field;
}

PatchReport harmonicity_report(const GridPatch& patch, const Polynomial& phi, Twist twist) {
  PatchReport r{patch, phi.label()};
  const auto coarse = sample_principal_form(patch, phi, twist);
  const auto fine = sample_principal_form(patch.refined(), phi, twist);
  r.residual_d_max = d_exterior(coarse).max_interior();
  r.residual_delta_max = delta_coboundary(coarse, twist).max_interior();
  r.residual_d_refined = d_exterior(fine).max_interior();
  r.residual_delta_refined = delta_coboundary(fine, twist).max_interior();
  r.convergence_ratio_d = r.residual_d_refined / r.residual_d_max;
  r.convergence_ratio = r.residual_delta_refined / r.residual_delta_max;
  return r;
}

WpPairing wp_patch_pairing(const Polynomial& phi, const Polynomial& psi, const GridPatch& patch) {
  WpPairing out;
  const double hx = patch.hx(), hy = patch.hy();
  for (int j = 0; j < patch.n(); ++j) {
    for (int i = 0; i < patch.n(); ++i) {
      const UpperHalfPoint z{patch.x0() + (i + 0.5) * hx, patch.y0() + (j + 0.5) * hy};
      const Mat4c x = lie::phi_alg(principal_direction(z.z())).mat();
      const Complex a = phi(z.z()), b = psi(z.z());
      const FrameMetric m = frame_metric(z);
      // i dz ^ conj(dz) = 2 dx ^ dy
      out.lhs += (iota(m, Mat4c(a * x), Mat4c(b * x)) * Complex(0, 1) * Complex(0, -2)).real() * hx * hy;
      out.rhs += 32 * (a * std::conj(b)).real() * z.y * z.y * hx * hy;
    }
  }
  return out;
}

QIsometryReport q_isometry_check(const UpperHalfPoint& z, const Mat4c& a, const Mat4c& b) {
  QIsometryReport r;
  const FrameMetric m = frame_metric(z);
  const FrameMetric mq = q_frame_metric(z);
  r.hq_symmetry = (mq.h - mq.h.transpose()).cwiseAbs().maxCoeff();
  r.hq_spd = mq.positive_definite() && r.hq_symmetry == 0;
  const Complex lhs = iota(mq, Mat4c(lie::q_conjugate(a)), Mat4c(lie::q_conjugate(b)));
  const Complex rhs = iota(m, a, b);
  r.iota_error = std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
  r.table_defect = lie::q_table_defect();
  return r;
}

Mat4c random_algebra(std::mt19937_64& rng, bool complex) {
  std::normal_distribution<double> n;
  DualCoeffs c;
  for (int i = 0; i < 6; ++i) {
    const double re = n(rng);
    c[i] = Complex(re, complex ? n(rng) : 0.0);
  }
  return combine(c);
}

}  // namespace ghlab::ads
