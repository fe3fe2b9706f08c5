#pragma once

// Pressure, entropy and the pressure form on finite Markov shifts with
// edge-valued (locally constant) potentials. Closed orbits are graph cycles.

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "ghlab/errors.hpp"

namespace ghlab::thermo {

struct Edge {
  int id = 0;
  int tail = 0;
  int head = 0;
};

/// Finite directed multigraph, validated strongly connected and aperiodic.
class MarkovShift {
 public:
  MarkovShift(int vertex_count, std::vector<Edge> edges);

  int vertex_count() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  /// Position of the edge with this id. Throws InvalidArgument.
  int index_of(int id) const;

  /// Edge positions leaving vertex v.
  const std::vector<int>& out_edges(int v) const { return out_[v]; }

 private:
  int n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> out_;
};

bool strongly_connected(int vertex_count, const std::vector<Edge>& edges);

/// gcd of the lengths of closed walks of length <= n^2.
int period(int vertex_count, const std::vector<Edge>& edges);

/// Values indexed by edge position.
using EdgeFunction = Eigen::VectorXd;

/// M_uv = sum over edges u -> v of exp(g(e) - shift).
Eigen::MatrixXd weighted_matrix(const MarkovShift& shift, const EdgeFunction& g,
                                double offset = 0);

struct PerronData {
  double log_eigenvalue = 0;
  Eigen::VectorXd right;
  Eigen::VectorXd left;
  int iterations = 0;
};

/// Perron root of a primitive nonnegative matrix by power iteration from the
/// all-ones vector, stopped when the Collatz-Wielandt bounds agree to 1e-13
/// relative (at most 1e5 iterations), then refined by the two-sided Rayleigh
/// quotient. Throws NonConvergence.
PerronData perron(const Eigen::MatrixXd& m);

/// log of the Perron root of weighted_matrix(shift, g).
double pressure(const MarkovShift& shift, const EdgeFunction& g);

/// Unique h >= 0 with P(-h f) = 0, by bisection on [0, P(0)/min f].
/// Throws InvalidArgument unless min f > 0.
double entropy_root(const MarkovShift& shift, const EdgeFunction& f);

/// d/dt P(F + t g) at t = 0, i.e. the integral of g against the equilibrium
/// measure of F, computed from the Perron vectors.
double pressure_derivative(const MarkovShift& shift, const EdgeFunction& f,
                           const EdgeFunction& g);

/// Edge weights of the equilibrium measure of F.
Eigen::VectorXd equilibrium_measure(const MarkovShift& shift, const EdgeFunction& f);

struct Cycle {
  /// Edge ids in traversal order, least rotation of the edge positions.
  std::vector<int> edges;
  bool primitive = true;
};

struct CyclePeriod {
  Cycle cycle;
  double period = 0;
};

/// All closed edge paths of length 1..max_len up to rotation (non-primitive
/// ones included and flagged), with the period sum of g. max_len <= 14.
std::vector<CyclePeriod> cycle_periods(const MarkovShift& shift, const EdgeFunction& g,
                                       int max_len, std::size_t budget = 5'000'000);

/// Number of periodic points (closed walks with a marked start) with f-period
/// <= T. Throws Overflow when more than `budget` walks are explored.
std::size_t periodic_point_count(const MarkovShift& shift, const EdgeFunction& f, double t,
                                 std::size_t budget = 20'000'000);

/// Entropy from counting alone: [log N(T) - log N(T/2)] / (T/2) with N the
/// periodic point count. Throws Overflow past the budget and InsufficientData
/// when N(T/2) = 0.
double brute_force_entropy(const MarkovShift& shift, const EdgeFunction& f, double t,
                           std::size_t budget = 20'000'000);

/// Largest T on a 1.25-geometric grid with N(T) <= target, found from counts
/// only.
double brute_force_horizon(const MarkovShift& shift, const EdgeFunction& f,
                           std::size_t target = 1'000'000);

/// Var(g)/D: Var is the Richardson-combined second difference of
/// t -> P(F + t g) at steps 1e-2 and 5e-3, D = -d/ds P(F + s F) at 0.
/// Throws NotOnPressureZero if |P(F)| > 1e-9 and NotTangent if the central
/// first difference (step 1e-4) exceeds 1e-6 in magnitude.
double pressure_form(const MarkovShift& shift, const EdgeFunction& f, const EdgeFunction& g);

/// g - (dP[g] / dP[F]) F: the component of g tangent to {P = 0} at F.
EdgeFunction tangent_projection(const MarkovShift& shift, const EdgeFunction& f,
                                const EdgeFunction& g);

struct CoboundaryResult {
  bool flag = false;
  /// Vertex potential with g(e) = u(head) - u(tail), u(0) = 0, when flag.
  Eigen::VectorXd witness;
  /// A simple directed cycle with |period| > tol, when not flag.
  std::optional<CyclePeriod> violating;
  /// Largest mismatch on a non-tree edge.
  double defect = 0;
};

CoboundaryResult is_coboundary(const MarkovShift& shift, const EdgeFunction& g,
                               double tol = 1e-9);

/// g(e) = u(head) - u(tail).
EdgeFunction coboundary(const MarkovShift& shift, const Eigen::VectorXd& u);

/// Random strongly connected aperiodic graph on n vertices: a Hamiltonian
/// cycle plus extra random edges.
MarkovShift random_shift(std::uint64_t seed, int vertex_count, int extra_edges);

/// The full shift on k symbols: one vertex with k loops.
MarkovShift full_shift(int symbols);

}  // namespace ghlab::thermo
