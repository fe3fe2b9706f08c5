#include "ghlab/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

namespace ghlab::thermo {

bool strongly_connected(int n, const std::vector<Edge>& edges) {
  if (n <= 0) return false;
  auto reach = [&](bool forward) {
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (const auto& e : edges) {
        const int from = forward ? e.tail : e.head;
        const int to = forward ? e.head : e.tail;
        if (from == v && !seen[to]) {
          seen[to] = 1;
          stack.push_back(to);
        }
      }
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
  };
  return reach(true) && reach(false);
}

int period(int n, const std::vector<Edge>& edges) {
  // Boolean powers of the adjacency matrix; a closed walk of length k exists
  // iff some diagonal entry of A^k is set.
  std::vector<char> a(static_cast<std::size_t>(n) * n, 0);
  for (const auto& e : edges) a[static_cast<std::size_t>(e.tail) * n + e.head] = 1;
  std::vector<char> p = a, q(a.size());
  int g = 0;
  for (int k = 1; k <= n * n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (p[static_cast<std::size_t>(i) * n + i]) {
        g = std::gcd(g, k);
        break;
      }
    }
    if (g == 1) return 1;
    std::fill(q.begin(), q.end(), 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (p[static_cast<std::size_t>(i) * n + j])
          for (int l = 0; l < n; ++l)
            if (a[static_cast<std::size_t>(j) * n + l]) q[static_cast<std::size_t>(i) * n + l] = 1;
    std::swap(p, q);
  }
  return g;
}

MarkovShift::MarkovShift(int vertex_count, std::vector<Edge> edges)
    : n_(vertex_count), edges_(std::move(edges)) {
  if (n_ <= 0) throw InvalidArgument("shift needs at least one vertex");
  if (edges_.empty()) throw InvalidArgument("shift needs at least one edge");
  std::vector<int> ids;
  for (const auto& e : edges_) {
    if (e.tail < 0 || e.tail >= n_ || e.head < 0 || e.head >= n_)
      throw InvalidArgument("edge " + std::to_string(e.id) + " has an endpoint out of range");
    ids.push_back(e.id);
  }
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
    throw InvalidArgument("duplicate edge id");
  if (!strongly_connected(n_, edges_)) throw ValidationError("graph is not strongly connected");
  if (period(n_, edges_) != 1) throw ValidationError("graph is periodic");
  out_.resize(n_);
  for (int i = 0; i < edge_count(); ++i) out_[edges_[i].tail].push_back(i);
}

int MarkovShift::index_of(int id) const {
  for (int i = 0; i < edge_count(); ++i)
    if (edges_[i].id == id) return i;
  throw InvalidArgument("unknown edge id " + std::to_string(id));
}

namespace {

void check_function(const MarkovShift& shift, const EdgeFunction& g) {
  if (g.size() != shift.edge_count())
    throw InvalidArgument("edge function has " + std::to_string(g.size()) + " values for " +
                          std::to_string(shift.edge_count()) + " edges");
  if (!g.allFinite()) throw InvalidArgument("edge function has non-finite values");
}

}  // namespace

Eigen::MatrixXd weighted_matrix(const MarkovShift& shift, const EdgeFunction& g, double offset) {
  check_function(shift, g);
  const int n = shift.vertex_count();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < shift.edge_count(); ++i) {
    const auto& e = shift.edges()[i];
    m(e.tail, e.head) += std::exp(g[i] - offset);
  }
  return m;
}

namespace {

/// Returns the normalized Perron vector of m and the number of iterations.
Eigen::VectorXd power_vector(const Eigen::MatrixXd& m, int& iterations) {
  const Eigen::Index n = m.rows();
  Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
  constexpr int kMaxIter = 100000;
  for (int it = 1; it <= kMaxIter; ++it) {
    const Eigen::VectorXd y = m * x;
    double lo = std::numeric_limits<double>::infinity(), hi = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double r = y[i] / x[i];
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    x = y / y.sum();
    if (!(hi > 0) || !std::isfinite(hi)) throw NonConvergence("power iteration broke down");
    if (hi - lo <= 1e-13 * hi) {
      iterations = it;
      return x;
    }
  }
  throw NonConvergence("power iteration did not converge in 1e5 steps");
}

}  // namespace

PerronData perron(const Eigen::MatrixXd& m) {
  PerronData out;
  int it_r = 0, it_l = 0;
  out.right = power_vector(m, it_r);
  const Eigen::MatrixXd mt = m.transpose();
  out.left = power_vector(mt, it_l);
  out.iterations = std::max(it_r, it_l);
  const double lambda = out.left.dot(m * out.right) / out.left.dot(out.right);
  out.log_eigenvalue = std::log(lambda);
  return out;
}

double pressure(const MarkovShift& shift, const EdgeFunction& g) {
  check_function(shift, g);
  const double offset = g.maxCoeff();
  return offset + perron(weighted_matrix(shift, g, offset)).log_eigenvalue;
}

double entropy_root(const MarkovShift& shift, const EdgeFunction& f) {
  check_function(shift, f);
  const double fmin = f.minCoeff();
  if (!(fmin > 0)) throw InvalidArgument("entropy_root needs a positive roof function");
  const EdgeFunction zero = EdgeFunction::Zero(f.size());
  double lo = 0, hi = std::max(pressure(shift, zero), 0.0) / fmin;
  // P(-h f) is strictly decreasing; P(0) >= 0 since every vertex has an exit.
  while (hi - lo > 1e-13 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (pressure(shift, -mid * f) > 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Eigen::VectorXd equilibrium_measure(const MarkovShift& shift, const EdgeFunction& f) {
  check_function(shift, f);
  const double offset = f.maxCoeff();
  const Eigen::MatrixXd m = weighted_matrix(shift, f, offset);
  const PerronData pd = perron(m);
  const double lambda = std::exp(pd.log_eigenvalue);
  Eigen::VectorXd mu(shift.edge_count());
  for (int i = 0; i < shift.edge_count(); ++i) {
    const auto& e = shift.edges()[i];
    mu[i] = pd.left[e.tail] * std::exp(f[i] - offset) * pd.right[e.head];
  }
  mu /= lambda * pd.left.dot(pd.right);
  return mu;
}

double pressure_derivative(const MarkovShift& shift, const EdgeFunction& f,
                           const EdgeFunction& g) {
  check_function(shift, g);
  return equilibrium_measure(shift, f).dot(g);
}

namespace {

class CycleWalker {
 public:
  CycleWalker(const MarkovShift& shift, const EdgeFunction& g, int max_len, std::size_t budget,
              bool simple_only)
      : shift_(shift), g_(g), max_len_(max_len), budget_(budget), simple_(simple_only) {}

  std::vector<CyclePeriod> run() {
    for (int first = 0; first < shift_.edge_count(); ++first) {
      path_.assign(1, first);
      visited_.assign(shift_.vertex_count(), 0);
      visited_[shift_.edges()[first].tail] = 1;
      extend(first);
    }
    return std::move(out_);
  }

 private:
  void extend(int first) {
    if (++work_ > budget_) throw Overflow("cycle enumeration exceeded its budget");
    const int v = shift_.edges()[path_.back()].head;
    if (v == shift_.edges()[first].tail && is_min_rotation(path_)) emit();
    if (static_cast<int>(path_.size()) == max_len_) return;
    if (simple_ && visited_[v]) return;
    if (simple_) visited_[v] = 1;
    for (int e : shift_.out_edges(v)) {
      if (e < first) continue;
      path_.push_back(e);
      extend(first);
      path_.pop_back();
    }
    if (simple_) visited_[v] = 0;
  }

  static bool is_min_rotation(const std::vector<int>& w) {
    const std::size_t n = w.size();
    for (std::size_t s = 1; s < n; ++s) {
      for (std::size_t i = 0; i < n; ++i) {
        const int a = w[(s + i) % n], b = w[i];
        if (a < b) return false;
        if (a > b) break;
      }
    }
    return true;
  }

  void emit() {
    CyclePeriod cp;
    const std::size_t n = path_.size();
    double sum = 0;
    for (int e : path_) {
      cp.cycle.edges.push_back(shift_.edges()[e].id);
      sum += g_[e];
    }
    for (std::size_t d = 1; d < n; ++d) {
      if (n % d) continue;
      bool periodic = true;
      for (std::size_t i = 0; i + d < n && periodic; ++i) periodic = path_[i] == path_[i + d];
      if (periodic) {
        cp.cycle.primitive = false;
        break;
      }
    }
    cp.period = sum;
    out_.push_back(std::move(cp));
  }

  const MarkovShift& shift_;
  const EdgeFunction& g_;
  int max_len_;
  std::size_t budget_;
  bool simple_;
  std::size_t work_ = 0;
  std::vector<int> path_;
  std::vector<char> visited_;
  std::vector<CyclePeriod> out_;
};

}  // namespace

std::vector<CyclePeriod> cycle_periods(const MarkovShift& shift, const EdgeFunction& g,
                                       int max_len, std::size_t budget) {
  check_function(shift, g);
  if (max_len < 1 || max_len > 14) throw InvalidArgument("cycle length must be in [1, 14]");
  return CycleWalker(shift, g, max_len, budget, false).run();
}

std::size_t periodic_point_count(const MarkovShift& shift, const EdgeFunction& f, double t,
                                 std::size_t budget) {
  check_function(shift, f);
  if (!(f.minCoeff() > 0)) throw InvalidArgument("periodic point count needs a positive roof");
  std::size_t count = 0, work = 0;
  // Depth-first over walks from each start vertex with accumulated period <= t.
  struct Frame {
    int v;
    double len;
  };
  for (int s = 0; s < shift.vertex_count(); ++s) {
    std::vector<Frame> stack{{s, 0.0}};
    while (!stack.empty()) {
      const Frame fr = stack.back();
      stack.pop_back();
      for (int e : shift.out_edges(fr.v)) {
        const double len = fr.len + f[e];
        if (len > t) continue;
        if (++work > budget) throw Overflow("periodic point enumeration exceeded its budget");
        const int h = shift.edges()[e].head;
        if (h == s) ++count;
        stack.push_back({h, len});
      }
    }
  }
  return count;
}

double brute_force_entropy(const MarkovShift& shift, const EdgeFunction& f, double t,
                           std::size_t budget) {
  if (!(t > 0)) throw InvalidArgument("horizon must be positive");
  const auto full = periodic_point_count(shift, f, t, budget);
  const auto half = periodic_point_count(shift, f, 0.5 * t, budget);
  if (half == 0) throw InsufficientData("no periodic points below half the horizon");
  return (std::log(static_cast<double>(full)) - std::log(static_cast<double>(half))) / (0.5 * t);
}

double brute_force_horizon(const MarkovShift& shift, const EdgeFunction& f, std::size_t target) {
  check_function(shift, f);
  double t = 2 * f.maxCoeff();
  double best = t;
  for (int i = 0; i < 200; ++i) {
    std::size_t n = 0;
    try {
      n = periodic_point_count(shift, f, t, 20 * target);
    } catch (const Overflow&) {
      break;
    }
    if (n > target) break;
    best = t;
    t *= 1.25;
  }
  return best;
}

namespace {

constexpr double kZeroTol = 1e-9;
constexpr double kTangentTol = 1e-6;

}  // namespace

double pressure_form(const MarkovShift& shift, const EdgeFunction& f, const EdgeFunction& g) {
  check_function(shift, f);
  check_function(shift, g);
  const double p0 = pressure(shift, f);
  if (std::abs(p0) > kZeroTol)
    throw NotOnPressureZero("P(F) = " + std::to_string(p0) + " is not zero");
  auto p = [&](double t) { return pressure(shift, f + t * g); };

  const double h1 = 1e-4;
  const double d1 = (p(h1) - p(-h1)) / (2 * h1);
  if (std::abs(d1) > kTangentTol)
    throw NotTangent("dP(F + tg)/dt = " + std::to_string(d1) + " at t = 0");

  auto second = [&](double h) { return (p(h) - 2 * p0 + p(-h)) / (h * h); };
  const double var = (4 * second(5e-3) - second(1e-2)) / 3;
  const double denom = -pressure_derivative(shift, f, f);
  if (!(denom > 0)) throw InvalidArgument("roof normalization -dP(F + sF)/ds is not positive");
  return var / denom;
}

EdgeFunction tangent_projection(const MarkovShift& shift, const EdgeFunction& f,
                                const EdgeFunction& g) {
  const Eigen::VectorXd mu = equilibrium_measure(shift, f);
  return g - (mu.dot(g) / mu.dot(f)) * f;
}

CoboundaryResult is_coboundary(const MarkovShift& shift, const EdgeFunction& g, double tol) {
  check_function(shift, g);
  const int n = shift.vertex_count();
  CoboundaryResult res;
  res.witness = Eigen::VectorXd::Zero(n);
  std::vector<char> seen(n, 0), tree(shift.edge_count(), 0);
  std::vector<int> queue{0};
  seen[0] = 1;
  // Undirected breadth-first spanning tree.
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const int v = queue[qi];
    for (int i = 0; i < shift.edge_count(); ++i) {
      const auto& e = shift.edges()[i];
      if (e.tail == v && !seen[e.head]) {
        seen[e.head] = 1;
        tree[i] = 1;
        res.witness[e.head] = res.witness[v] + g[i];
        queue.push_back(e.head);
      } else if (e.head == v && !seen[e.tail]) {
        seen[e.tail] = 1;
        tree[i] = 1;
        res.witness[e.tail] = res.witness[v] - g[i];
        queue.push_back(e.tail);
      }
    }
  }
  for (int i = 0; i < shift.edge_count(); ++i) {
    if (tree[i]) continue;
    const auto& e = shift.edges()[i];
    res.defect = std::max(res.defect, std::abs(g[i] - (res.witness[e.head] - res.witness[e.tail])));
  }
  res.flag = res.defect <= tol;
  if (res.flag) return res;

  // Simple directed cycles span the cycle space of a strongly connected graph,
  // so one of them carries a nonzero period.
  auto cycles = CycleWalker(shift, g, std::min(n, 14), 5'000'000, true).run();
  const auto it = std::max_element(cycles.begin(), cycles.end(), [](const auto& a, const auto& b) {
    return std::abs(a.period) < std::abs(b.period);
  });
  if (it != cycles.end() && std::abs(it->period) > tol) res.violating = *it;
  return res;
}

EdgeFunction coboundary(const MarkovShift& shift, const Eigen::VectorXd& u) {
  if (u.size() != shift.vertex_count()) throw InvalidArgument("vertex function has wrong size");
  EdgeFunction g(shift.edge_count());
  for (int i = 0; i < shift.edge_count(); ++i) {
    const auto& e = shift.edges()[i];
    g[i] = u[e.head] - u[e.tail];
  }
  return g;
}

MarkovShift random_shift(std::uint64_t seed, int n, int extra) {
  if (n < 1 || extra < 0) throw InvalidArgument("random_shift needs n >= 1, extra >= 0");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> vertex(0, n - 1);
  for (;;) {
    std::vector<Edge> edges;
    for (int v = 0; v < n; ++v) edges.push_back({v, v, (v + 1) % n});
    for (int k = 0; k < extra; ++k) {
      const int id = static_cast<int>(edges.size());
      edges.push_back({id, vertex(rng), vertex(rng)});
    }
    if (period(n, edges) == 1) return MarkovShift(n, std::move(edges));
  }
}

MarkovShift full_shift(int symbols) {
  if (symbols < 1) throw InvalidArgument("full shift needs a symbol");
  std::vector<Edge> edges;
  for (int k = 0; k < symbols; ++k) edges.push_back({k, 0, 0});
  return MarkovShift(1, std::move(edges));
}

}  // namespace ghlab::thermo
