#pragma once

// Closed-surface group representations into SL(2,R), their relator-preserving
// deformations, and pairs of them (points of the left/right product space).

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ghlab/linalg_lie.hpp"

namespace ghlab::rep {

using lie::Mat2;
using lie::SL2Element;
using lie::Sl2Algebra;

/// A word over n generators. Letter k < n is generator k, letter k >= n is
/// the inverse of generator k - n.
using Word = std::vector<int>;

inline int letter_inverse(int letter, int n) { return letter < n ? letter + n : letter - n; }

/// +-(k+1) <-> letter, the signed 1-based convention of the file format.
int letter_from_signed(int signed_index, int n);
int signed_from_letter(int letter, int n);

struct Presentation {
  int genus = 2;
  std::vector<std::string> generator_names;
  Word relator;

  int generator_count() const { return static_cast<int>(generator_names.size()); }

  /// Checks relator length 4*genus and that each generator occurs exactly
  /// twice. Throws InvalidArgument.
  void validate() const;

  friend bool operator==(const Presentation&, const Presentation&) = default;
};

/// Generators g0..g{2*genus-1} and an empty relator.
Presentation standard_presentation(int genus);

/// Product of generator matrices (inverses via the adjugate). No checks.
Mat2 evaluate_word_raw(const std::vector<Mat2>& generators, const Word& word);

/// min over sign of max |M -/+ I| for M the evaluated relator.
double relator_residual(const Presentation& p, const std::vector<Mat2>& generators);

class SurfaceRepresentation {
 public:
  static constexpr double kResidualTolerance = 1e-9;

  /// Validates: matching generator count, relator residual <= 1e-9 and every
  /// generator hyperbolic. Throws ValidationError.
  SurfaceRepresentation(Presentation p, std::vector<SL2Element> generators);

  const Presentation& presentation() const { return p_; }
  const std::vector<SL2Element>& generators() const { return g_; }
  int generator_count() const { return p_.generator_count(); }

  std::vector<Mat2> matrices() const;

  /// Matrix of a single letter (generator or inverse).
  Mat2 letter(int l) const;

  double residual() const { return residual_; }

 private:
  Presentation p_;
  std::vector<SL2Element> g_;
  double residual_ = 0;
};

struct GHPair {
  GHPair(SurfaceRepresentation l, SurfaceRepresentation r);

  SurfaceRepresentation left;
  SurfaceRepresentation right;
};

double relator_residual(const SurfaceRepresentation& rep);

SL2Element evaluate_word(const SurfaceRepresentation& rep, const Word& word);

/// Conjugate every generator: g -> h g h^-1.
SurfaceRepresentation conjugate(const SurfaceRepresentation& rep, const SL2Element& h);

/// The order-8 rotation r and the base generator g0 of the regular-octagon
/// genus-2 group; g_k = r^k g0 r^-k.
Mat2 octagon_rotation();
std::vector<Mat2> octagon_generators();

/// Exhaustive search over cyclically reduced length-8 words using every
/// generator once with each sign. Returns the first (lexicographic) word
/// evaluating to +-I within `tol`. Throws RelatorSearchFailed.
Word search_relator(const std::vector<Mat2>& generators, double tol = 1e-9);

/// Regular-octagon Fuchsian group of genus 2. The relator is read from
/// $GHLAB_CACHE_DIR/octagon_relator.json (default ./cache) when present and
/// valid, otherwise searched for and written there.
SurfaceRepresentation octagon_fuchsian();

/// A tangent vector at a representation: one traceless matrix per generator,
/// interpreted as the variation g_k -> exp(t X_k) g_k.
struct TangentDirection {
  std::vector<Sl2Algebra> components;
  /// True once projected to the relator tangent space and made orthogonal to
  /// the conjugation orbit.
  bool normalized = false;
};

/// Coordinates (sqrt2*a, b, c) per generator, so the Euclidean product is the
/// Frobenius product of traceless matrices.
Eigen::VectorXd to_vector(const TangentDirection& dir);
TangentDirection from_vector(const Eigen::VectorXd& v, bool normalized);

/// 3 x 3n Jacobian of the relator's traceless part with respect to left
/// multiplicative perturbations of the generators, in to_vector coordinates.
Eigen::MatrixXd relator_jacobian(const Presentation& p, const std::vector<Mat2>& generators);

/// Tangent directions of conjugation, (X - Ad(g_k) X)_k for the three basis
/// elements X of sl(2); each column in to_vector coordinates.
Eigen::MatrixXd orbit_directions(const std::vector<Mat2>& generators);

/// Projects onto the relator tangent space and removes conjugation.
TangentDirection project_direction(const SurfaceRepresentation& rep,
                                   const TangentDirection& dir);

/// Unit-norm normalized direction from Gaussian samples.
TangentDirection random_direction(const SurfaceRepresentation& rep, std::uint64_t seed);

/// Frobenius-orthogonality defect of `dir` against the conjugation orbit.
double orbit_overlap(const SurfaceRepresentation& rep, const TangentDirection& dir);

/// Moves along exp(t X_k) g_k, then restores the relator with a Newton solve
/// for a correction in the normal space of the base point, then fixes the
/// gauge (fixed points of g0 and the attracting fixed point of g1 match the
/// input). deform(rep, dir, 0) returns rep unchanged. Throws NewtonDiverged
/// for |t| > 0.5 or when the residual stays above 1e-9 after 50 iterations.
SurfaceRepresentation deform(const SurfaceRepresentation& rep, const TangentDirection& dir,
                             double t);

/// (deform(+t), deform(-t)): the pure bending path through (rep, rep).
GHPair pure_bending_path(const SurfaceRepresentation& rep, const TangentDirection& dir,
                         double t);

using PairPath = std::function<GHPair(double)>;

/// u(w) = (d/dt rho_t(w)) rho_0(w)^-1 by central differences, per factor.
std::pair<Sl2Algebra, Sl2Algebra> tangent_cocycle(const PairPath& path, const Word& word,
                                                  double eps);

/// Largest entry of a traceless matrix.
double max_abs(const Sl2Algebra& x);

}  // namespace ghlab::rep
