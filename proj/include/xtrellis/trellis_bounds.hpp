#pragma once
// Singleton-type bounds for trellis codes and the disjoint-alphabet
// construction whose column distances exceed the convolutional bound.

#include <cstdint>
#include <optional>
#include <vector>

#include "xtrellis/rational.hpp"
#include "xtrellis/trellis.hpp"

namespace xtrellis {

/// Bound values for an (n, M) trellis code over an alphabet of size q with
/// (upper bound on) degree delta, at time j.
struct TrellisBoundValues {
  Real log_q_M;
  Real delta;
  std::optional<Real> free_bound;  // (n - log_q M)(floor(delta / log_q M) + 1) + delta + 1; needs M >= 2
  Real column_bound_small;         // (j+1)(n - log_q M) + 1, valid when d_j^c <= n
  Real column_bound;               // (j+1) n - log_q M + 1
  std::int64_t free_bound_int = 0;
  std::int64_t column_bound_small_int = 0;
  std::int64_t column_bound_int = 0;
};

inline TrellisBoundValues trellis_bound_values(std::uint64_t q, std::uint64_t M, std::size_t n, const Real& delta,
                                               std::size_t j) {
  TrellisBoundValues v;
  v.log_q_M = log_ratio(M, q);
  v.delta = delta;
  const Real nn = Real::integer(static_cast<std::int64_t>(n));
  const Real one = Real::integer(1);
  const Real jj = Real::integer(static_cast<std::int64_t>(j + 1));
  if (M >= 2) {
    const Real ratio = delta / v.log_q_M;
    const Real fl = Real::integer(ratio.floor());
    v.free_bound = (nn - v.log_q_M) * (fl + one) + delta + one;
    v.free_bound_int = v.free_bound->floor();
  }
  v.column_bound_small = jj * (nn - v.log_q_M) + one;
  v.column_bound = jj * nn - v.log_q_M + one;
  v.column_bound_small_int = v.column_bound_small.floor();
  v.column_bound_int = v.column_bound.floor();
  return v;
}

struct BoundReport {
  std::size_t j = 0;
  TrellisBoundValues values;          // at time j
  std::vector<std::size_t> column;    // achieved d_0^c .. d_j^c (deterministic presentations)
  std::optional<std::size_t> free;    // achieved d_f when finite
  bool small_column_applicable = false;  // d_j^c <= n at time j
  bool free_ok = true;         // d_f <= free bound
  bool small_column_ok = true;  // for every i <= j with d_i^c <= n
  bool column_ok = true;        // d_i^c <= (i+1)n - log_q M + 1 for every i <= j
  bool column_chain_ok = true;  // equality at i > 0 forces equality before it (integer-effective)

  bool all_ok() const { return free_ok && small_column_ok && column_ok && column_chain_ok; }
};

/// Evaluates all three bounds at j and, when the presentation is
/// deterministic, checks them against the achieved distances.
inline BoundReport tc_bounds(const TrellisCode& t, std::size_t j,
                             std::uint64_t pair_guard = TrellisCode::kDefaultPairGuard) {
  BoundReport r;
  r.j = j;
  const std::uint64_t q = t.graph().q;
  const std::size_t n = t.graph().n;
  r.values = trellis_bound_values(q, t.M(), n, t.degree_upper(), j);
  if (!t.flags().deterministic || t.M() < 2) return r;

  r.column = tc_column_distances(t, j, pair_guard);
  if (!t.has_dead_ends()) {
    const auto fd = tc_free_distance(t, pair_guard);
    if (fd.weight != kInfWeight) r.free = fd.weight;
  }
  if (r.free && r.values.free_bound)
    r.free_ok = leq(Real::integer(static_cast<std::int64_t>(*r.free)), *r.values.free_bound);

  std::vector<std::int64_t> eff(j + 1);
  for (std::size_t i = 0; i <= j; ++i) {
    const auto vi = trellis_bound_values(q, t.M(), n, t.degree_upper(), i);
    const Real d = Real::integer(static_cast<std::int64_t>(r.column[i]));
    if (r.column[i] <= n && !leq(d, vi.column_bound_small)) r.small_column_ok = false;
    if (!leq(d, vi.column_bound)) r.column_ok = false;
    eff[i] = vi.column_bound_int;
  }
  for (std::size_t i = 1; i <= j; ++i) {
    if (static_cast<std::int64_t>(r.column[i]) != eff[i]) continue;
    for (std::size_t h = 0; h < i; ++h)
      if (static_cast<std::int64_t>(r.column[h]) != eff[h]) r.column_chain_ok = false;
  }
  r.small_column_applicable = r.column[j] <= n;
  return r;
}

/// The disjoint-alphabet code: symbols are split into M^j blocks of q/M^j
/// consecutive values, level j sets are the n-fold products of the blocks, and
/// each lower-level set takes the first element of M consecutive sets one
/// level up. Codewords (a_0..a_j) start in the single level-0 set and each a_i
/// lies in the level-i set its predecessor was taken from.
struct Example1Code {
  std::uint32_t q = 0;
  std::size_t M = 0, n = 0, j = 0;
  std::vector<std::vector<Elem>> partition;        // A_{j,t}, t = 0..M^j-1
  std::vector<std::vector<std::vector<Vec>>> sets;  // sets[i][t]: M words of length n
  std::vector<std::vector<Vec>> codewords;          // the block code, (j+1) words each
  TrellisCode trellis;                              // depth j+1 tree, root is state 0
  std::size_t column_distance = 0;                  // d_j^c on the tree

  /// Index t of the level-(i+1) set containing a, for a in some level-i set.
  std::size_t successor_set(std::size_t i, const Vec& a) const {
    for (std::size_t t = 0; t < sets[i + 1].size(); ++t)
      for (const auto& w : sets[i + 1][t])
        if (w == a) return t;
    fail(ErrorKind::PreconditionViolated, "word not found in the next level");
  }
};

inline Example1Code tc_example1(std::uint32_t q, std::size_t M, std::size_t n, std::size_t j) {
  require(j >= 1, ErrorKind::HypothesisViolated, "needs j >= 1");
  require(M >= 2 && n >= 1, ErrorKind::HypothesisViolated, "needs M >= 2 and n >= 1");
  std::uint64_t Mj = 1;
  for (std::size_t i = 0; i < j; ++i) {
    Mj *= M;
    require(Mj <= q, ErrorKind::HypothesisViolated, "M^j exceeds q");
  }
  require(q % Mj == 0, ErrorKind::HypothesisViolated, "M^j does not divide q");
  const std::uint64_t width = q / Mj;
  std::uint64_t pw = 1;
  for (std::size_t i = 0; i < n; ++i) pw *= width;
  require(pw == M, ErrorKind::HypothesisViolated, "(q / M^j)^n != M");

  Example1Code ex;
  ex.q = q;
  ex.M = M;
  ex.n = n;
  ex.j = j;
  ex.sets.resize(j + 1);
  for (std::uint64_t t = 0; t < Mj; ++t) {
    std::vector<Elem> block;
    for (std::uint64_t s = 0; s < width; ++s) block.push_back(static_cast<Elem>(t * width + s));
    ex.partition.push_back(block);
    // Level j: block^n in lexicographic order.
    std::vector<Vec> words;
    for (std::uint64_t idx = 0; idx < pw; ++idx) {
      Vec w(n);
      std::uint64_t v = idx;
      for (std::size_t pos = n; pos-- > 0;) {
        w[pos] = block[v % width];
        v /= width;
      }
      words.push_back(w);
    }
    ex.sets[j].push_back(words);
  }
  for (std::size_t i = j; i-- > 0;) {
    const std::size_t count = ex.sets[i + 1].size() / M;
    for (std::size_t t = 0; t < count; ++t) {
      std::vector<Vec> words;
      for (std::size_t u = 0; u < M; ++u) words.push_back(ex.sets[i + 1][t * M + u].front());
      ex.sets[i].push_back(words);
    }
  }

  // Tree presentation: a node at depth i carries the index of the level-i set
  // its children draw from; the u-th child of a node with set t moves on to
  // level-(i+1) set t*M + u.
  LabeledDigraph g;
  g.q = q;
  g.n = n;
  struct Node {
    std::size_t id, depth, set;
    std::vector<Vec> prefix;
  };
  std::vector<Node> frontier{{0, 0, 0, {}}};
  std::size_t next_id = 1;
  for (std::size_t depth = 0; depth <= j; ++depth) {
    std::vector<Node> nf;
    for (const auto& node : frontier) {
      const auto& words = ex.sets[depth][node.set];
      for (std::size_t u = 0; u < words.size(); ++u) {
        Node child{next_id++, depth + 1, node.set * M + u, node.prefix};
        child.prefix.push_back(words[u]);
        g.edges.push_back({node.id, child.id, words[u]});
        if (depth == j) ex.codewords.push_back(child.prefix);
        nf.push_back(std::move(child));
      }
    }
    frontier = std::move(nf);
  }
  g.num_states = next_id;
  ex.trellis = TrellisCode::validate(std::move(g), 0);

  std::uint64_t expect = M;
  for (std::size_t i = 0; i < j; ++i) expect *= M;
  require(ex.codewords.size() == expect, ErrorKind::PreconditionViolated, "|A| != M^{j+1}");
  ex.column_distance = tc_column_distance(ex.trellis, j);
  require(ex.column_distance == (j + 1) * n, ErrorKind::PreconditionViolated, "d_j^c != (j+1)n");
  return ex;
}

}  // namespace xtrellis
