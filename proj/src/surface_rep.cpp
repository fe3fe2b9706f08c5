#include "ghlab/surface_rep.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <random>

#include <json.hpp>

namespace ghlab::rep {

using lie::exp_sl2;
using lie::traceless_part;

int letter_from_signed(int signed_index, int n) {
  if (signed_index == 0 || std::abs(signed_index) > n) {
    throw InvalidArgument("generator index out of range: " + std::to_string(signed_index));
  }
  return signed_index > 0 ? signed_index - 1 : -signed_index - 1 + n;
}

int signed_from_letter(int letter, int n) { return letter < n ? letter + 1 : -(letter - n + 1); }

void Presentation::validate() const {
  const int n = generator_count();
  if (genus < 2) throw InvalidArgument("genus must be at least 2");
  if (n != 2 * genus) throw InvalidArgument("expected 2*genus generators");
  if (static_cast<int>(relator.size()) != 4 * genus) {
    throw InvalidArgument("relator length must be 4*genus");
  }
  std::vector<int> seen(n, 0);
  for (int l : relator) {
    if (l < 0 || l >= 2 * n) throw InvalidArgument("relator letter out of range");
    ++seen[l < n ? l : l - n];
  }
  for (int c : seen) {
    if (c != 2) throw InvalidArgument("each generator must appear exactly twice in the relator");
  }
}

Presentation standard_presentation(int genus) {
  Presentation p;
  p.genus = genus;
  for (int k = 0; k < 2 * genus; ++k) p.generator_names.push_back("g" + std::to_string(k));
  return p;
}

Mat2 evaluate_word_raw(const std::vector<Mat2>& generators, const Word& word) {
  const int n = static_cast<int>(generators.size());
  Mat2 m = Mat2::identity();
  for (int l : word) {
    m = m * (l < n ? generators[l] : generators[l - n].adjugate());
  }
  return m;
}

double relator_residual(const Presentation& p, const std::vector<Mat2>& generators) {
  return lie::projective_distance(evaluate_word_raw(generators, p.relator), Mat2::identity());
}

SurfaceRepresentation::SurfaceRepresentation(Presentation p, std::vector<SL2Element> generators)
    : p_(std::move(p)), g_(std::move(generators)) {
  p_.validate();
  if (static_cast<int>(g_.size()) != p_.generator_count()) {
    throw ValidationError("generator count does not match the presentation");
  }
  for (const auto& g : g_) {
    if (!(std::abs(g.trace()) > 2.0)) throw ValidationError("generator is not hyperbolic");
  }
  residual_ = relator_residual(p_, matrices());
  if (!(residual_ <= kResidualTolerance)) {
    throw ValidationError("relator residual " + std::to_string(residual_) + " exceeds 1e-9");
  }
}

std::vector<Mat2> SurfaceRepresentation::matrices() const {
  std::vector<Mat2> out;
  out.reserve(g_.size());
  for (const auto& g : g_) out.push_back(g.mat());
  return out;
}

Mat2 SurfaceRepresentation::letter(int l) const {
  const int n = generator_count();
  return l < n ? g_[l].mat() : g_[l - n].mat().adjugate();
}

GHPair::GHPair(SurfaceRepresentation l, SurfaceRepresentation r)
    : left(std::move(l)), right(std::move(r)) {
  if (!(left.presentation() == right.presentation())) {
    throw ValidationError("pair factors use different presentations");
  }
}

double relator_residual(const SurfaceRepresentation& rep) { return rep.residual(); }

SL2Element evaluate_word(const SurfaceRepresentation& rep, const Word& word) {
  if (word.empty()) throw InvalidArgument("empty word");
  SL2Element m;
  const int n = rep.generator_count();
  for (int l : word) {
    if (l < 0 || l >= 2 * n) throw InvalidArgument("letter out of range");
    m = m * (l < n ? rep.generators()[l] : rep.generators()[l - n].inverse());
  }
  return m;
}

SurfaceRepresentation conjugate(const SurfaceRepresentation& rep, const SL2Element& h) {
  std::vector<SL2Element> g;
  const SL2Element hinv = h.inverse();
  for (const auto& x : rep.generators()) g.push_back(h * x * hinv);
  return SurfaceRepresentation(rep.presentation(), std::move(g));
}

Mat2 octagon_rotation() {
  const double c = std::cos(M_PI / 8), s = std::sin(M_PI / 8);
  return {c, s, -s, c};
}

std::vector<Mat2> octagon_generators() {
  const double s2 = std::sqrt(2.0);
  const double off = std::sqrt(2.0 + 2.0 * s2);
  const Mat2 r = octagon_rotation();
  const Mat2 rinv = r.adjugate();
  std::vector<Mat2> g{{1 + s2, off, off, 1 + s2}};
  for (int k = 1; k < 4; ++k) g.push_back(r * g.back() * rinv);
  return g;
}

Word search_relator(const std::vector<Mat2>& generators, double tol) {
  const int n = static_cast<int>(generators.size());
  Word w(2 * n);
  std::iota(w.begin(), w.end(), 0);
  do {
    bool reduced = true;
    for (int i = 0; i < 2 * n && reduced; ++i) {
      reduced = w[(i + 1) % (2 * n)] != letter_inverse(w[i], n);
    }
    if (!reduced) continue;
    if (lie::projective_distance(evaluate_word_raw(generators, w), Mat2::identity()) <= tol) {
      return w;
    }
  } while (std::next_permutation(w.begin(), w.end()));
  throw RelatorSearchFailed("no length-" + std::to_string(2 * n) +
                            " surface relator evaluates to +-I");
}

namespace {

std::filesystem::path cache_dir() {
  const char* env = std::getenv("GHLAB_CACHE_DIR");
  return env && *env ? std::filesystem::path(env) : std::filesystem::path("cache");
}

std::optional<Word> read_cached_relator(const std::filesystem::path& file, int n) {
  std::ifstream in(file);
  if (!in) return std::nullopt;
  try {
    const auto j = nlohmann::json::parse(in);
    Word w;
    for (int s : j.at("relator").get<std::vector<int>>()) w.push_back(letter_from_signed(s, n));
    return w;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void write_cached_relator(const std::filesystem::path& file, const Word& w, int n) {
  std::error_code ec;
  std::filesystem::create_directories(file.parent_path(), ec);
  std::vector<int> signed_word;
  for (int l : w) signed_word.push_back(signed_from_letter(l, n));
  std::ofstream out(file);
  if (out) out << nlohmann::json{{"relator", signed_word}}.dump() << "\n";
}

}  // namespace

SurfaceRepresentation octagon_fuchsian() {
  const auto mats = octagon_generators();
  Presentation p = standard_presentation(2);
  const int n = p.generator_count();
  const auto file = cache_dir() / "octagon_relator.json";
  if (auto cached = read_cached_relator(file, n)) {
    p.relator = *cached;
    bool ok = true;
    try {
      p.validate();
    } catch (const InvalidArgument&) {
      ok = false;
    }
    if (ok && relator_residual(p, mats) <= SurfaceRepresentation::kResidualTolerance) {
      return SurfaceRepresentation(p, {mats.begin(), mats.end()});
    }
  }
  p.relator = search_relator(mats);
  write_cached_relator(file, p.relator, n);
  std::vector<SL2Element> g;
  for (const auto& m : mats) g.emplace_back(m);
  return SurfaceRepresentation(p, std::move(g));
}

Eigen::VectorXd to_vector(const TangentDirection& dir) {
  Eigen::VectorXd v(3 * dir.components.size());
  for (std::size_t k = 0; k < dir.components.size(); ++k) {
    v(3 * k) = std::sqrt(2.0) * dir.components[k].a;
    v(3 * k + 1) = dir.components[k].b;
    v(3 * k + 2) = dir.components[k].c;
  }
  return v;
}

TangentDirection from_vector(const Eigen::VectorXd& v, bool normalized) {
  TangentDirection dir;
  dir.normalized = normalized;
  for (Eigen::Index k = 0; k < v.size() / 3; ++k) {
    dir.components.push_back({v(3 * k) / std::sqrt(2.0), v(3 * k + 1), v(3 * k + 2)});
  }
  return dir;
}

namespace {

/// to_vector basis of sl(2) as matrices.
std::array<Mat2, 3> coordinate_basis() {
  const double r = 1.0 / std::sqrt(2.0);
  return {Mat2{r, 0, 0, -r}, Mat2{0, 1, 0, 0}, Mat2{0, 0, 1, 0}};
}

Eigen::Vector3d constraint(const Mat2& m) { return {(m.a - m.d) / 2, m.b, m.c}; }

Eigen::Vector3d relator_constraint(const Presentation& p, const std::vector<Mat2>& g) {
  return constraint(evaluate_word_raw(g, p.relator));
}

std::vector<Mat2> apply_left(const std::vector<Mat2>& g, const Eigen::VectorXd& v) {
  std::vector<Mat2> out(g.size());
  const auto x = from_vector(v, false);
  for (std::size_t k = 0; k < g.size(); ++k) out[k] = exp_sl2(x.components[k]) * g[k];
  return out;
}

/// Projective point of an eigenvector of m for eigenvalue lambda.
Eigen::Vector2d eigenvector(const Mat2& m, double lambda) {
  const Eigen::Vector2d v1(m.b, lambda - m.a);
  const Eigen::Vector2d v2(lambda - m.d, m.c);
  const Eigen::Vector2d v = v1.norm() >= v2.norm() ? v1 : v2;
  return v / v.norm();
}

/// (attracting, repelling) fixed points of a hyperbolic element.
std::pair<Eigen::Vector2d, Eigen::Vector2d> fixed_points(const Mat2& m) {
  const double t = m.trace();
  const double disc = std::sqrt(std::max(0.0, t * t - 4));
  const double big = t >= 0 ? (t + disc) / 2 : (t - disc) / 2;
  const double small = 1.0 / big;
  return {eigenvector(m, big), eigenvector(m, small)};
}

/// Matrix sending the projective frame (inf, 0, 1) to (p, q, r).
Eigen::Matrix2d frame(const Eigen::Vector2d& p, const Eigen::Vector2d& q,
                      const Eigen::Vector2d& r) {
  Eigen::Matrix2d pq;
  pq.col(0) = p;
  pq.col(1) = q;
  const Eigen::Vector2d coef = pq.fullPivLu().solve(r);
  Eigen::Matrix2d out;
  out.col(0) = coef(0) * p;
  out.col(1) = coef(1) * q;
  return out;
}

Eigen::Matrix2d gauge_frame(const std::vector<Mat2>& g) {
  const auto [a0, r0] = fixed_points(g[0]);
  const auto [a1, r1] = fixed_points(g[1]);
  (void)r1;
  return frame(a0, r0, a1);
}

}  // namespace

Eigen::MatrixXd relator_jacobian(const Presentation& p, const std::vector<Mat2>& g) {
  const int n = static_cast<int>(g.size());
  const auto& w = p.relator;
  const std::size_t m = w.size();
  // prefix[i] = product of letters [0, i)
  std::vector<Mat2> prefix(m + 1), suffix(m + 1);
  prefix[0] = Mat2::identity();
  for (std::size_t i = 0; i < m; ++i) {
    prefix[i + 1] = prefix[i] * (w[i] < n ? g[w[i]] : g[w[i] - n].adjugate());
  }
  suffix[m] = Mat2::identity();
  for (std::size_t i = m; i-- > 0;) {
    suffix[i] = (w[i] < n ? g[w[i]] : g[w[i] - n].adjugate()) * suffix[i + 1];
  }
  const auto basis = coordinate_basis();
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(3, 3 * n);
  for (std::size_t i = 0; i < m; ++i) {
    const bool inverse = w[i] >= n;
    const int k = inverse ? w[i] - n : w[i];
    for (int e = 0; e < 3; ++e) {
      const Mat2 dm = inverse ? -1.0 * (prefix[i + 1] * basis[e] * suffix[i + 1])
                              : prefix[i] * basis[e] * suffix[i];
      jac.col(3 * k + e) += constraint(dm);
    }
  }
  return jac;
}

Eigen::MatrixXd orbit_directions(const std::vector<Mat2>& g) {
  const int n = static_cast<int>(g.size());
  const auto basis = coordinate_basis();
  Eigen::MatrixXd out(3 * n, 3);
  for (int e = 0; e < 3; ++e) {
    const auto x = traceless_part(basis[e]);
    TangentDirection dir;
    for (int k = 0; k < n; ++k) {
      const auto ad = lie::adjoint(g[k], x);
      dir.components.push_back({x.a - ad.a, x.b - ad.b, x.c - ad.c});
    }
    out.col(e) = to_vector(dir);
  }
  return out;
}

namespace {

Eigen::VectorXd remove_span(const Eigen::VectorXd& v, const Eigen::MatrixXd& cols) {
  const Eigen::MatrixXd gram = cols.transpose() * cols;
  return v - cols * gram.ldlt().solve(cols.transpose() * v);
}

}  // namespace

TangentDirection project_direction(const SurfaceRepresentation& rep,
                                   const TangentDirection& dir) {
  if (static_cast<int>(dir.components.size()) != rep.generator_count()) {
    throw InvalidArgument("direction has the wrong number of components");
  }
  const auto g = rep.matrices();
  const Eigen::MatrixXd jt = relator_jacobian(rep.presentation(), g).transpose();
  const Eigen::MatrixXd orbit = orbit_directions(g);
  Eigen::VectorXd v = to_vector(dir);
  for (int pass = 0; pass < 2; ++pass) {
    v = remove_span(v, jt);
    v = remove_span(v, orbit);
  }
  return from_vector(v, true);
}

TangentDirection random_direction(const SurfaceRepresentation& rep, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  for (int attempt = 0; attempt < 16; ++attempt) {
    Eigen::VectorXd v(3 * rep.generator_count());
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = normal(rng);
    auto dir = project_direction(rep, from_vector(v, false));
    const Eigen::VectorXd p = to_vector(dir);
    if (p.norm() > 1e-6) return from_vector(p / p.norm(), true);
  }
  throw NumericalError("could not sample a non-trivial tangent direction");
}

double orbit_overlap(const SurfaceRepresentation& rep, const TangentDirection& dir) {
  const Eigen::MatrixXd orbit = orbit_directions(rep.matrices());
  const Eigen::VectorXd v = to_vector(dir);
  double worst = 0;
  for (int e = 0; e < 3; ++e) {
    worst = std::max(worst, std::abs(orbit.col(e).dot(v)) / orbit.col(e).norm());
  }
  return worst;
}

SurfaceRepresentation deform(const SurfaceRepresentation& rep, const TangentDirection& dir,
                             double t) {
  if (t == 0) return rep;
  if (!(std::abs(t) <= 0.5)) throw NewtonDiverged("deformation parameter outside [-0.5, 0.5]");
  const TangentDirection d = dir.normalized ? dir : project_direction(rep, dir);
  if (static_cast<int>(d.components.size()) != rep.generator_count()) {
    throw InvalidArgument("direction has the wrong number of components");
  }
  const auto& p = rep.presentation();
  const auto base = rep.matrices();
  const Eigen::VectorXd v = to_vector(d);

  // Correction restricted to the normal space of the base point, so the
  // solution is a smooth function of t. Continuation in t keeps each Newton
  // solve inside its basin.
  const Eigen::MatrixXd normal = relator_jacobian(p, base).transpose();
  const int stages = std::max(1, static_cast<int>(std::ceil(std::abs(t) / 0.05)));
  Eigen::Vector3d alpha = Eigen::Vector3d::Zero();
  std::vector<Mat2> cur = base;
  for (int stage = 1; stage <= stages; ++stage) {
    const double s = stage == stages ? t : t * stage / stages;
    const std::vector<Mat2> moved = apply_left(base, s * v);
    cur = apply_left(moved, normal * alpha);
    const bool last = stage == stages;
    int polish = 0;
    for (int it = 0; it < 50; ++it) {
      const Eigen::Vector3d f = relator_constraint(p, cur);
      const double norm = f.lpNorm<Eigen::Infinity>();
      if (!std::isfinite(norm)) break;
      // a couple of extra sweeps once converged, to land on the roundoff floor
      if (norm < 1e-12 && (!last || ++polish > 2)) break;
      const Eigen::Matrix3d jn = relator_jacobian(p, cur) * normal;
      const Eigen::Matrix3d lhs = jn.transpose() * jn + 1e-12 * Eigen::Matrix3d::Identity();
      alpha -= lhs.ldlt().solve(jn.transpose() * f);
      cur = apply_left(moved, normal * alpha);
    }
  }
  if (!(relator_residual(p, cur) <= SurfaceRepresentation::kResidualTolerance)) {
    throw NewtonDiverged("relator projection did not converge");
  }

  const Eigen::Matrix2d h0 = gauge_frame(base) * gauge_frame(cur).inverse();
  const double det = h0.determinant();
  if (!(det > 0)) throw NewtonDiverged("gauge fixing reversed orientation");
  const Eigen::Matrix2d hm = h0 / std::sqrt(det);
  const Mat2 h{hm(0, 0), hm(0, 1), hm(1, 0), hm(1, 1)};
  std::vector<SL2Element> out;
  for (const auto& m : cur) {
    const Mat2 c = h * m * h.adjugate();
    // restore det = 1 exactly up to rounding before validation
    const double s = 1.0 / std::sqrt(c.det());
    out.emplace_back(s * c);
  }
  try {
    return SurfaceRepresentation(p, std::move(out));
  } catch (const ValidationError& e) {
    throw NewtonDiverged(std::string("deformed representation invalid: ") + e.what());
  }
}

GHPair pure_bending_path(const SurfaceRepresentation& rep, const TangentDirection& dir,
                         double t) {
  const TangentDirection d = dir.normalized ? dir : project_direction(rep, dir);
  return GHPair(deform(rep, d, t), deform(rep, d, -t));
}

std::pair<Sl2Algebra, Sl2Algebra> tangent_cocycle(const PairPath& path, const Word& word,
                                                  double eps) {
  const GHPair plus = path(eps), minus = path(-eps), zero = path(0);
  auto one = [&](const SurfaceRepresentation& p, const SurfaceRepresentation& m,
                 const SurfaceRepresentation& z) {
    const Mat2 dp = evaluate_word(p, word).mat();
    const Mat2 dm = evaluate_word(m, word).mat();
    const Mat2 z0inv = evaluate_word(z, word).mat().adjugate();
    return traceless_part((1.0 / (2 * eps)) * (dp - dm) * z0inv);
  };
  return {one(plus.left, minus.left, zero.left), one(plus.right, minus.right, zero.right)};
}

double max_abs(const Sl2Algebra& x) {
  return std::max({std::abs(x.a), std::abs(x.b), std::abs(x.c)});
}

}  // namespace ghlab::rep
