#pragma once
// Regular balanced bipartite graphs with a fixed total edge order, their
// spectral expansion, and the edge-count (mixing) inequality.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "xtrellis/error.hpp"
#include "xtrellis/rng.hpp"

namespace xtrellis {

struct GraphEdge {
  std::size_t left = 0, right = 0;  // 0-based vertex indices
  bool operator==(const GraphEdge&) const = default;
  auto operator<=>(const GraphEdge&) const = default;
};

/// Delta-regular bipartite graph on n + n vertices. The position of an edge
/// in `edges()` is its rank in the total order; incidence lists are sorted by
/// that rank.
class BipartiteGraph {
 public:
  static BipartiteGraph make(std::size_t n, std::size_t degree, std::vector<GraphEdge> edges) {
    require(n >= 1, ErrorKind::PreconditionViolated, "need n >= 1");
    require(edges.size() == n * degree, ErrorKind::PreconditionViolated, "edge count != n * degree");
    BipartiteGraph g;
    g.n_ = n;
    g.degree_ = degree;
    g.edges_ = std::move(edges);
    g.left_inc_.assign(n, {});
    g.right_inc_.assign(n, {});
    for (std::size_t i = 0; i < g.edges_.size(); ++i) {
      const auto& e = g.edges_[i];
      require(e.left < n && e.right < n, ErrorKind::PreconditionViolated, "edge endpoint out of range");
      g.left_inc_[e.left].push_back(i);
      g.right_inc_[e.right].push_back(i);
    }
    for (std::size_t v = 0; v < n; ++v) {
      require(g.left_inc_[v].size() == degree && g.right_inc_[v].size() == degree,
              ErrorKind::PreconditionViolated, "graph is not " + std::to_string(degree) + "-regular");
    }
    return g;
  }

  std::size_t n() const noexcept { return n_; }
  std::size_t degree() const noexcept { return degree_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  const std::vector<GraphEdge>& edges() const noexcept { return edges_; }
  /// Edge positions incident to left vertex s (the set E(u_s)), in edge order.
  const std::vector<std::size_t>& left_incidence(std::size_t s) const { return left_inc_[s]; }
  const std::vector<std::size_t>& right_incidence(std::size_t t) const { return right_inc_[t]; }

  bool is_simple() const {
    auto sorted = edges_;
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  }

  Eigen::MatrixXd biadjacency() const {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_));
    for (const auto& e : edges_) a(static_cast<Eigen::Index>(e.left), static_cast<Eigen::Index>(e.right)) += 1.0;
    return a;
  }

 private:
  std::size_t n_ = 0, degree_ = 0;
  std::vector<GraphEdge> edges_;
  std::vector<std::vector<std::size_t>> left_inc_, right_inc_;
};

/// K_{n,n}, edges in lexicographic (left, right) order.
inline BipartiteGraph xg_complete(std::size_t n) {
  require(n >= 1, ErrorKind::PreconditionViolated, "need n >= 1");
  std::vector<GraphEdge> edges;
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t) edges.push_back({s, t});
  return BipartiteGraph::make(n, n, std::move(edges));
}

/// The 2n-cycle as a 2-regular bipartite graph: u_s ~ v_s and u_s ~ v_{s+1}.
inline BipartiteGraph xg_cycle(std::size_t n) {
  require(n >= 2, ErrorKind::PreconditionViolated, "need n >= 2");
  std::vector<GraphEdge> edges;
  for (std::size_t s = 0; s < n; ++s) {
    edges.push_back({s, s});
    edges.push_back({s, (s + 1) % n});
  }
  std::sort(edges.begin(), edges.end());
  return BipartiteGraph::make(n, 2, std::move(edges));
}

/// Union of `degree` random perfect matchings, each redrawn until it avoids
/// every edge already present. Edges are then put in lexicographic order.
inline BipartiteGraph xg_random_regular(std::size_t n, std::size_t degree, std::uint64_t seed,
                                        std::size_t max_attempts = 10000) {
  require(degree >= 1 && degree <= n, ErrorKind::PreconditionViolated, "need 1 <= degree <= n");
  SplitMix rng(seed);
  std::vector<std::vector<bool>> used(n, std::vector<bool>(n, false));
  std::vector<GraphEdge> edges;
  std::size_t attempts = 0;
  for (std::size_t d = 0; d < degree;) {
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    rng.shuffle(perm);
    bool clash = false;
    for (std::size_t s = 0; s < n && !clash; ++s) clash = used[s][perm[s]];
    if (clash) {
      require(++attempts < max_attempts, ErrorKind::RejectionBudgetExceeded,
              "could not draw a parallel-free matching");
      continue;
    }
    for (std::size_t s = 0; s < n; ++s) {
      used[s][perm[s]] = true;
      edges.push_back({s, perm[s]});
    }
    ++d;
  }
  std::sort(edges.begin(), edges.end());
  return BipartiteGraph::make(n, degree, std::move(edges));
}

struct SpectralProfile {
  std::size_t degree = 0;
  double sigma1 = 0.0;  // top singular value; equals degree for regular graphs
  double sigma2 = 0.0;
  double gamma = 0.0;   // sigma2 / degree
  std::string method;   // "exact-svd" or "power-iteration"
  double residual = 0.0;
};

/// gamma from the second singular value of the biadjacency matrix. Every
/// bipartite graph has adjacency eigenvalue -degree, so the singular values
/// are the meaningful "second eigenvalue" here.
inline SpectralProfile xg_gamma(const BipartiteGraph& g, std::size_t exact_limit = 512,
                                std::size_t max_iter = 20000, double tol = 1e-12) {
  SpectralProfile sp;
  sp.degree = g.degree();
  const Eigen::MatrixXd a = g.biadjacency();
  const auto n = static_cast<Eigen::Index>(g.n());
  if (g.n() <= exact_limit) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    const auto& s = svd.singularValues();
    sp.sigma1 = s(0);
    sp.sigma2 = n > 1 ? s(1) : 0.0;
    sp.method = "exact-svd";
    sp.residual = std::fabs(sp.sigma1 - static_cast<double>(g.degree()));
  } else {
    // Power iteration on A^T A restricted to the complement of the all-ones
    // vector (the top right singular vector of a regular graph).
    const Eigen::MatrixXd ata = a.transpose() * a;
    Eigen::VectorXd v(n);
    SplitMix rng(0x5eed);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.uniform01() - 0.5;
    auto deflate = [&](Eigen::VectorXd& x) { x.array() -= x.mean(); };
    deflate(v);
    v.normalize();
    double lambda = 0.0;
    bool converged = false;
    for (std::size_t it = 0; it < max_iter; ++it) {
      Eigen::VectorXd w = ata * v;
      deflate(w);
      const double norm = w.norm();
      if (norm == 0.0) {
        lambda = 0.0;
        converged = true;
        break;
      }
      const double next = v.dot(w);
      w /= norm;
      const double res = (ata * w - next * w).norm();
      v = w;
      if (std::fabs(next - lambda) <= tol * std::max(1.0, next) && res <= 1e-6 * std::max(1.0, next)) {
        lambda = next;
        sp.residual = res;
        converged = true;
        break;
      }
      lambda = next;
    }
    require(converged, ErrorKind::ConvergenceFailure, "power iteration did not converge");
    sp.sigma1 = static_cast<double>(g.degree());
    sp.sigma2 = std::sqrt(std::max(0.0, lambda));
    sp.method = "power-iteration";
  }
  sp.gamma = g.degree() > 0 ? std::clamp(sp.sigma2 / static_cast<double>(g.degree()), 0.0, 1.0) : 0.0;
  return sp;
}

struct MixingCheck {
  std::size_t lhs = 0;  // edges between S and T
  double rhs = 0.0;     // ((1 - gamma)|S||T|/n + gamma sqrt(|S||T|)) * degree
  bool holds = false;
};

inline MixingCheck xg_mixing_check(const BipartiteGraph& g, const std::vector<std::size_t>& left_subset,
                                   const std::vector<std::size_t>& right_subset, double gamma,
                                   double tol = 1e-9) {
  require(!left_subset.empty() && !right_subset.empty(), ErrorKind::EmptySubset, "S and T must be nonempty");
  std::vector<bool> in_t(g.n(), false);
  for (auto t : right_subset) in_t.at(t) = true;
  MixingCheck m;
  for (auto s : left_subset)
    for (auto e : g.left_incidence(s)) m.lhs += in_t[g.edges()[e].right];
  const double S = static_cast<double>(left_subset.size()), T = static_cast<double>(right_subset.size());
  m.rhs = ((1.0 - gamma) * S * T / static_cast<double>(g.n()) + gamma * std::sqrt(S * T)) *
          static_cast<double>(g.degree());
  m.holds = static_cast<double>(m.lhs) <= m.rhs + tol;
  return m;
}

struct MixingTrials {
  std::size_t trials = 0;
  std::size_t violations = 0;
  double min_slack = 0.0;  // min of rhs - lhs over the trials
};

/// Mixing check on random nonempty subset pairs, each vertex kept with
/// probability 1/2.
inline MixingTrials xg_mixing_trials(const BipartiteGraph& g, double gamma, std::size_t trials, std::uint64_t seed,
                                     double tol = 1e-9) {
  SplitMix rng(seed);
  auto draw = [&] {
    std::vector<std::size_t> out;
    while (out.empty())
      for (std::size_t v = 0; v < g.n(); ++v)
        if (rng.below(2)) out.push_back(v);
    return out;
  };
  MixingTrials r;
  for (std::size_t i = 0; i < trials; ++i) {
    const auto S = draw();
    const auto T = draw();
    const auto m = xg_mixing_check(g, S, T, gamma, tol);
    const double slack = m.rhs - static_cast<double>(m.lhs);
    r.min_slack = i == 0 ? slack : std::min(r.min_slack, slack);
    r.violations += !m.holds;
    ++r.trials;
  }
  return r;
}

/// Coordinates of the copies G_0, ..., G_m: edge at position p of copy j sits
/// at j * |E| + p, so every copy inherits the order of E_0.
struct EdgeIndexing {
  std::size_t edges_per_copy = 0;
  std::size_t copies = 1;  // m + 1

  std::size_t offset(std::size_t copy, std::size_t position) const { return copy * edges_per_copy + position; }
  std::size_t copy_of(std::size_t index) const { return index / edges_per_copy; }
  std::size_t position_of(std::size_t index) const { return index % edges_per_copy; }
  std::size_t total() const { return copies * edges_per_copy; }

  /// Order isomorphism between every copy and E_0.
  bool consistent() const {
    for (std::size_t j = 0; j < copies; ++j)
      for (std::size_t a = 0; a < edges_per_copy; ++a)
        for (std::size_t b = 0; b < edges_per_copy; ++b)
          if ((offset(j, a) < offset(j, b)) != (a < b) || position_of(offset(j, a)) != a) return false;
    return true;
  }
};

inline EdgeIndexing xg_copies(const BipartiteGraph& g, std::size_t m) { return {g.num_edges(), m + 1}; }

}  // namespace xtrellis
