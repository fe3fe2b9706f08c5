#include "ghlab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <future>
#include <random>
#include <sstream>

#include "ghlab/ads_metric.hpp"
#include "ghlab/errors.hpp"
#include "ghlab/linalg_lie.hpp"
#include "ghlab/spectrum.hpp"
#include "ghlab/surface_rep.hpp"
#include "ghlab/thermo.hpp"

namespace ghlab::verify {

bool Criterion::passed() const {
  if (budget_seconds > 0 && seconds > budget_seconds) return false;
  return !rows.empty() &&
         std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.passed; });
}

namespace {

using lie::Complex;
using lie::Mat4;
using lie::Mat4c;

Criterion make(int id, std::string title) {
  Criterion c;
  c.id = id;
  c.title = std::move(title);
  return c;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

/// Passes when value <= tol.
CheckRow at_most(std::string name, double value, double tol, std::string detail = "") {
  return {std::move(name), std::isfinite(value) && value <= tol, value, tol, std::move(detail)};
}

/// Passes when value > tol.
CheckRow above(std::string name, double value, double tol, std::string detail = "") {
  return {std::move(name), std::isfinite(value) && value > tol, value, tol, std::move(detail), ">"};
}

CheckRow within(std::string name, double value, double lo, double hi) {
  return {std::move(name), std::isfinite(value) && value >= lo && value <= hi, value, hi,
          "", "in [" + fmt("%g", lo) + ", " + fmt("%g", hi) + "]"};
}

lie::SL2Element random_sl2(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  const double a = std::exp(u(rng)), b = 2 * u(rng), c = 2 * u(rng);
  return lie::SL2Element(a, b, c, (1 + b * c) / a);
}

lie::Sl2Algebra random_sl2_algebra(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  return {n(rng), n(rng), n(rng)};
}

ads::UpperHalfPoint random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> x(-1, 1), y(0.2, 5);
  return ads::UpperHalfPoint::make(x(rng), y(rng));
}

double rel_diff(const Mat4& a, const Mat4& b) {
  return (a - b).cwiseAbs().maxCoeff() / std::max(1.0, b.cwiseAbs().maxCoeff());
}

}  // namespace

Criterion identity_criterion(const Options& opt) {
  Criterion c = make(1, "identity suite");
  std::mt19937_64 rng(opt.seed + 101);
  double hom = 0, form = 0, alg = 0, expc = 0, inv = 0, c16 = 0, quad = 0, equi = 0;
  double sharp_err[3] = {0, 0, 0};
  bool spd = true;
  for (int i = 0; i < 1000; ++i) {
    const auto a = random_sl2(rng), b = random_sl2(rng);
    const Mat4 pab = lie::phi_group(a * b).mat();
    hom = std::max(hom, rel_diff(lie::phi_group(a).mat() * lie::phi_group(b).mat(), pab));
    const double scale = std::max(1.0, pab.cwiseAbs().maxCoeff());
    form = std::max(form, lie::SO22Element::form_residual(pab) / (scale * scale));

    const auto x = random_sl2_algebra(rng), y = random_sl2_algebra(rng);
    const Mat4 px = lie::phi_alg(x).mat(), py = lie::phi_alg(y).mat();
    alg = std::max(alg, rel_diff(px * py - py * px, lie::phi_alg(lie::bracket(x, y)).mat()));
    const lie::SL2Element ex(lie::exp_sl2(x));
    expc = std::max(expc, rel_diff(lie::expm<double, 4>(px), lie::phi_group(ex).mat()));

    const auto z = random_point(rng);
    const auto m = ads::frame_metric(z);
    inv = std::max(inv, m.inverse_defect());
    spd = spd && m.positive_definite();
    const Mat4c pz = lie::phi_alg(ads::principal_direction(z.z())).mat();
    const double target = 16 * z.y * z.y;
    c16 = std::max(c16, std::abs(ads::iota(m, pz, pz) - target) / target);
    const ads::DualCoeffs closed[3] = {ads::sharp_e1_closed(z), ads::sharp_e2_closed(z),
                                       ads::sharp_e3_closed(z)};
    for (int k = 0; k < 3; ++k) {
      const auto s = ads::sharp(m, lie::e_basis()[k].mat().cast<Complex>());
      sharp_err[k] = std::max(sharp_err[k], (s - closed[k]).cwiseAbs().maxCoeff() /
                                                std::max(1.0, closed[k].cwiseAbs().maxCoeff()));
    }
    const lie::Vec4 v = ads::embed_hyperboloid(z);
    quad = std::max(quad, ads::quadric_residual(v) / std::max(1.0, v.squaredNorm()));
    const auto g = random_sl2(rng);
    const lie::Vec4 lhs = ads::embed_hyperboloid(ads::mobius(g, z));
    const lie::Vec4 rhs = lie::phi_group(g).mat() * v;
    equi = std::max(equi, (lhs - rhs).cwiseAbs().maxCoeff() / std::max(1.0, rhs.cwiseAbs().maxCoeff()));
  }
  c.rows.push_back(at_most("Phi(AB) = Phi(A) Phi(B)", hom, 1e-10, "1000 random pairs, relative"));
  c.rows.push_back(at_most("Phi^t J Phi = J", form, 1e-10, "relative to |Phi|^2"));
  c.rows.push_back(at_most("Phi[X,Y] = [Phi X, Phi Y]", alg, 1e-8));
  c.rows.push_back(at_most("Phi(exp X) = exp(Phi X)", expc, 1e-8));
  c.rows.push_back(at_most("Q-conjugation table", lie::q_table_defect(), 0.0, "exact"));
  c.rows.push_back(at_most("H Hinv = I", inv, 1e-10, "1000 points, y in [0.2, 5]"));
  c.rows.push_back(at_most("H positive definite", spd ? 0.0 : 1.0, 0.0, "Cholesky"));
  c.rows.push_back(at_most("iota(Phi X_z, Phi X_z) = 16 y^2", c16, 1e-10, "relative"));
  c.rows.push_back(at_most("sharp E1 closed form", sharp_err[0], 1e-10));
  c.rows.push_back(at_most("sharp E2 closed form", sharp_err[1], 1e-10));
  c.rows.push_back(at_most("sharp E3 closed form", sharp_err[2], 1e-10));
  c.rows.push_back(at_most("hyperboloid quadric", quad, 1e-14, "relative to |v|^2"));
  c.rows.push_back(at_most("embedding equivariance", equi, 1e-10));
  c.budget_seconds = 5;
  return c;
}

namespace {

struct Residuals {
  double d = 0;
  double delta = 0;
};

Residuals residuals_at(int n, const ads::Polynomial& phi, ads::Twist twist) {
  const auto form = ads::sample_principal_form(ads::GridPatch::unit(n), phi, twist);
  return {ads::d_exterior(form).max_interior(), ads::delta_coboundary(form, twist).max_interior()};
}

const std::vector<ads::Polynomial>& principal_polys() {
  static const std::vector<ads::Polynomial> p{
      {{1}}, {{0, 1}}, {{0, 0, 1}}};
  return p;
}

}  // namespace

Criterion harmonicity_criterion(const Options&) {
  Criterion c = make(2, "harmonicity of principal forms");
  auto polys = principal_polys();
  polys.push_back({{0, 1}, true});
  const int ns[3] = {64, 128, 256};
  std::vector<std::future<std::array<Residuals, 3>>> jobs;
  for (const auto& phi : polys) {
    jobs.push_back(std::async(std::launch::async, [phi, &ns] {
      std::array<Residuals, 3> r;
      for (int i = 0; i < 3; ++i) r[i] = residuals_at(ns[i], phi, ads::Twist::None);
      return r;
    }));
  }
  for (std::size_t p = 0; p < polys.size(); ++p) {
    const auto r = jobs[p].get();
    const std::string label = polys[p].label();
    if (polys[p].antiholomorphic) {
      for (int i = 0; i < 3; ++i) {
        const std::string h = "h=1/" + std::to_string(ns[i]);
        c.rows.push_back(above("control phi=" + label + " d residual " + h, r[i].d, 1e-2));
        c.rows.push_back(above("control phi=" + label + " delta residual " + h, r[i].delta, 1e-2));
      }
      continue;
    }
    for (int i = 0; i < 2; ++i) {
      const std::string h = "h=1/" + std::to_string(ns[i]);
      auto rd = within("phi=" + label + " d ratio " + h, r[i + 1].d / r[i].d, 0.2, 0.35);
      rd.detail += "residuals " + fmt("%.3e", r[i].d) + " -> " + fmt("%.3e", r[i + 1].d);
      auto rs = within("phi=" + label + " delta ratio " + h, r[i + 1].delta / r[i].delta, 0.2, 0.35);
      rs.detail += "residuals " + fmt("%.3e", r[i].delta) + " -> " + fmt("%.3e", r[i + 1].delta);
      c.rows.push_back(rd);
      c.rows.push_back(rs);
    }
  }
  c.budget_seconds = 30;
  return c;
}

Criterion wp_criterion(const Options& opt) {
  Criterion c = make(3, "Weil-Petersson factor 32");
  std::mt19937_64 rng(opt.seed + 303);
  std::normal_distribution<double> n;
  std::uniform_int_distribution<int> deg(0, 4);
  const auto patch = ads::GridPatch::unit(64);
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    ads::Polynomial phi, psi;
    for (int k = 0, d = deg(rng); k <= d; ++k) phi.coeffs.emplace_back(n(rng), n(rng));
    for (int k = 0, d = deg(rng); k <= d; ++k) psi.coeffs.emplace_back(n(rng), n(rng));
    const auto w = ads::wp_patch_pairing(phi, psi, patch);
    worst = std::max(worst, std::abs(w.lhs / w.rhs - 1));
  }
  c.rows.push_back(at_most("lhs / rhs = 1", worst, 1e-12, "20 random pairs, degree <= 4"));
  return c;
}

Criterion base_point_criterion(const Options& opt) {
  Criterion c = make(4, "base point and deformations");
  const auto base = rep::octagon_fuchsian();
  c.rows.push_back(at_most("octagon relator residual", base.residual(), 1e-9));
  double worst = 0;
  std::string failure;
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto dir = rep::random_direction(base, opt.seed + s);
    for (double t : {-0.3, -0.15, 0.15, 0.3}) {
      try {
        worst = std::max(worst, rep::deform(base, dir, t).residual());
      } catch (const Error& e) {
        worst = INFINITY;
        failure = e.what();
      }
    }
  }
  c.rows.push_back(at_most("deformed relator residual |t| <= 0.3", worst, 1e-9,
                           failure.empty() ? "5 directions x 4 times" : failure));
  return c;
}

namespace {

rep::GHPair bent_pair(const rep::SurfaceRepresentation& base, std::uint64_t seed) {
  return rep::pure_bending_path(base, rep::random_direction(base, seed), 0.3);
}

}  // namespace

Criterion entropy_criterion(const Options& opt) {
  Criterion c = make(5, "entropy at the Fuchsian locus");
  const auto base = rep::octagon_fuchsian();
  auto estimate = [&](const rep::GHPair& pair) {
    const auto spec = spectrum::enumerate_classes(pair, 8, opt.threads);
    return spectrum::entropy_estimate(spec, spectrum::suggest_window(spec));
  };
  const auto fuchsian = estimate(rep::GHPair(base, base));
  auto r = within("Fuchsian estimate", fuchsian.value, 0.85, 1.15);
  r.detail += "window [" + fmt("%.3f", fuchsian.window.lo) + ", " + fmt("%.3f", fuchsian.window.hi) + "]";
  c.rows.push_back(r);
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto bent = estimate(bent_pair(base, opt.seed + s));
    c.rows.push_back(at_most("bent estimate, direction " + std::to_string(s), bent.value,
                             fuchsian.value + 0.05, "Fuchsian + 0.05"));
  }
  c.budget_seconds = 300;
  return c;
}

Criterion degeneracy_criterion(const Options& opt) {
  Criterion c = make(6, "degeneracy along pure bending");
  const auto base = rep::octagon_fuchsian();
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto r = spectrum::bending_derivative_test(base, rep::random_direction(base, opt.seed + s),
                                                     1e-4, 6);
    c.rows.push_back(at_most("max |dlen/dt| / len, direction " + std::to_string(s),
                             r.max_rel_derivative, 1e-9,
                             std::to_string(r.class_count) + " classes"));
  }
  return c;
}

Criterion nondegeneracy_criterion(const Options& opt) {
  Criterion c = make(7, "non-degeneracy at the bent pair");
  const auto base = rep::octagon_fuchsian();
  const auto pair = bent_pair(base, opt.seed);
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto vl = rep::random_direction(pair.left, opt.seed + 1000 + s);
    const auto vr = rep::random_direction(pair.right, opt.seed + 2000 + s);
    const rep::PairPath path = [&](double e) {
      if (e == 0) return pair;
      return rep::GHPair(rep::deform(pair.left, vl, e), rep::deform(pair.right, vr, e));
    };
    const auto r = spectrum::proportionality_test(path, 1e-3, 6);
    c.rows.push_back(above("proportionality residual, direction " + std::to_string(s),
                           r.rel_residual, 1e-3, "k_fit " + fmt("%.4g", r.k_fit)));
  }
  return c;
}

Criterion expansion_criterion(const Options& opt) {
  Criterion c = make(8, "eigenvalue expansion of A^n B");
  std::mt19937_64 rng(opt.seed + 808);
  std::uniform_real_distribution<double> u(-1, 1), lam(1.5, 3);
  double worst = 0;
  int samples = 0;
  while (samples < 50) {
    const double l = lam(rng), a = std::exp(u(rng)), b = 2 * u(rng), cc = 2 * u(rng);
    // admissible: B shares no fixed point with A
    if (std::abs(b) < 1e-3 || std::abs(cc) < 1e-3) continue;
    const auto rows = spectrum::eigen_expansion_check(lie::SL2Element(l, 0, 0, 1 / l),
                                                      lie::SL2Element(a, b, cc, (1 + b * cc) / a), 2, 10);
    const double r2 = std::abs(rows.front().normalized);
    for (const auto& r : rows) worst = std::max(worst, std::abs(r.normalized) / r2);
    ++samples;
  }
  c.rows.push_back(at_most("max_n |r_n| lambda^4n / (|r_2| lambda^8)", worst, 10.0,
                           "50 random pairs, n = 2..10"));
  return c;
}

Criterion thermo_criterion(const Options& opt) {
  Criterion c = make(9, "thermodynamic model");
  using thermo::EdgeFunction;
  const auto full2 = thermo::full_shift(2);
  c.rows.push_back(at_most("entropy_root full 2-shift, f = 1",
                           std::abs(thermo::entropy_root(full2, EdgeFunction::Ones(2)) - std::log(2.0)),
                           1e-10));
  EdgeFunction f12(2);
  f12 << 1, 2;
  c.rows.push_back(at_most("entropy_root full 2-shift, f = (1, 2)",
                           std::abs(thermo::entropy_root(full2, f12) - std::log((1 + std::sqrt(5.0)) / 2)),
                           1e-9));

  std::mt19937_64 rng(opt.seed + 909);
  std::uniform_real_distribution<double> roof(0.5, 2);
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    const auto shift = thermo::random_shift(opt.seed + 5000 + i, 3 + i % 2, 2 + i % 3);
    EdgeFunction f(shift.edge_count());
    for (auto& v : f) v = roof(rng);
    const double t = thermo::brute_force_horizon(shift, f);
    worst = std::max(worst, std::abs(thermo::entropy_root(shift, f) -
                                     thermo::brute_force_entropy(shift, f, t)));
  }
  c.rows.push_back(at_most("|entropy_root - brute force|", worst, 0.08, "20 random graphs"));

  const EdgeFunction big_f = EdgeFunction::Constant(2, -std::log(2.0));
  EdgeFunction g(2);
  g << 1, -1;
  c.rows.push_back(at_most("pressure_form worked example",
                           std::abs(thermo::pressure_form(full2, big_f, g) - 1 / std::log(2.0)), 1e-4));

  double cob = 0, pos = INFINITY, misclassified = 0;
  std::normal_distribution<double> n;
  for (int i = 0; i < 50; ++i) {
    const auto shift = thermo::random_shift(opt.seed + 7000 + i, 2 + i % 3, 1 + i % 4);
    EdgeFunction f(shift.edge_count());
    for (auto& v : f) v = roof(rng);
    const EdgeFunction big = -thermo::entropy_root(shift, f) * f;
    Eigen::VectorXd u(shift.vertex_count());
    for (auto& v : u) v = n(rng);
    const double on_cob = thermo::pressure_form(shift, big, thermo::coboundary(shift, u));
    cob = std::max(cob, std::abs(on_cob));
    EdgeFunction dir(shift.edge_count());
    for (auto& v : dir) v = n(rng);
    dir = thermo::tangent_projection(shift, big, dir);
    const bool is_cob = thermo::is_coboundary(shift, dir).flag;
    const double val = thermo::pressure_form(shift, big, dir);
    if (is_cob != (val <= 1e-8)) misclassified += 1;
    if (!is_cob) pos = std::min(pos, val);
  }
  c.rows.push_back(at_most("pressure_form on coboundaries", cob, 1e-8, "50 random graphs"));
  c.rows.push_back(above("pressure_form on tangent non-coboundaries", pos, 1e-6, "50 random directions"));
  c.rows.push_back(at_most("degenerate iff coboundary", misclassified, 0));
  return c;
}

Criterion q_isometry_criterion(const Options& opt) {
  Criterion c = make(10, "Q-isometry");
  std::mt19937_64 rng(opt.seed + 1010);
  double worst = 0;
  bool spd = true;
  for (int i = 0; i < 1000; ++i) {
    const auto z = random_point(rng);
    const Mat4c a = ads::random_algebra(rng), b = ads::random_algebra(rng);
    const auto r = ads::q_isometry_check(z, a, b);
    worst = std::max(worst, r.iota_error);
    spd = spd && r.hq_spd;
  }
  c.rows.push_back(at_most("iota^q(QAQ, QBQ) = iota(A, B)", worst, 1e-10, "1000 random (z, A, B)"));
  c.rows.push_back(at_most("H^q symmetric positive definite", spd ? 0.0 : 1.0, 0.0));
  c.rows.push_back(at_most("Q-conjugation table", lie::q_table_defect(), 0.0));
  auto factor = [](double x, double y) {
    if (x == 0 && y == 0) return 1.0;
    return std::max(x, y) / std::min(x, y);
  };
  for (const auto& phi : principal_polys()) {
    const auto r = residuals_at(64, phi, ads::Twist::None);
    const auto q = residuals_at(64, phi, ads::Twist::Q);
    c.rows.push_back(at_most("Q-pushed d residual factor, phi=" + phi.label(), factor(r.d, q.d), 2.0));
    c.rows.push_back(
        at_most("Q-pushed delta residual factor, phi=" + phi.label(), factor(r.delta, q.delta), 2.0));
  }
  return c;
}

Criterion trace_criterion(const Options& opt) {
  Criterion c = make(11, "trace diagonalization");
  const auto base = rep::octagon_fuchsian();
  const auto pair = bent_pair(base, opt.seed);
  double worst = 0;
  const auto words = spectrum::reduced_words(base.generator_count(), 4);
  for (const auto& w : words) worst = std::max(worst, spectrum::trace_so22_check(pair, w).rel_error);
  c.rows.push_back(at_most("tr rho(w) = sum exp(+-len_L/2 +- len_R/2)", worst, 1e-8,
                           std::to_string(words.size()) + " words of length <= 4"));
  return c;
}

Criterion run_criterion(int id, const Options& opt) {
  using Fn = Criterion (*)(const Options&);
  static const Fn table[] = {identity_criterion,     harmonicity_criterion, wp_criterion,
                             base_point_criterion,   entropy_criterion,     degeneracy_criterion,
                             nondegeneracy_criterion, expansion_criterion,  thermo_criterion,
                             q_isometry_criterion,   trace_criterion};
  if (id < 1 || id > 11) throw InvalidArgument("criterion id must be in 1..11");
  const auto t0 = std::chrono::steady_clock::now();
  Criterion c = table[id - 1](opt);
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return c;
}

std::vector<int> suite_ids(const std::string& suite) {
  if (suite == "identities") return {1, 3, 10};
  if (suite == "harmonicity") return {2};
  if (suite == "thermo") return {9};
  if (suite == "acceptance") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
  throw InvalidArgument("unknown suite " + suite + " (identities|harmonicity|thermo|acceptance)");
}

std::string format_rows(const Criterion& c) {
  std::ostringstream out;
  for (const auto& r : c.rows) {
    char buf[96];
    if (r.relation.rfind("in", 0) == 0) {
      std::snprintf(buf, sizeof buf, "%.3e %s", r.value, r.relation.c_str());
    } else {
      std::snprintf(buf, sizeof buf, "%.3e %s %.3e", r.value, r.relation.c_str(), r.tolerance);
    }
    out << "  " << (r.passed ? "PASS" : "FAIL") << "  " << r.name << "  " << buf;
    if (!r.detail.empty()) out << "  (" << r.detail << ")";
    out << '\n';
  }
  if (c.budget_seconds > 0) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "  %s  runtime %.2f s (budget %.0f s)\n",
                  c.seconds <= c.budget_seconds ? "PASS" : "FAIL", c.seconds, c.budget_seconds);
    out << buf;
  }
  return out.str();
}

}  // namespace ghlab::verify
