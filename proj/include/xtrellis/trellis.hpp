#pragma once
// Trellis codes presented by labeled digraphs, and distance searches on the
// pair graph V x V.

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <vector>

#include "xtrellis/conv_code.hpp"
#include "xtrellis/rational.hpp"
#include "xtrellis/rng.hpp"

namespace xtrellis {

struct TrellisEdge {
  std::size_t src = 0, dst = 0;
  Vec label;  // n symbols from {0, ..., q-1}
};

struct LabeledDigraph {
  std::uint32_t q = 2;
  std::size_t n = 1;
  std::size_t num_states = 1;
  std::vector<TrellisEdge> edges;  // presentation order
};

struct TrellisFlags {
  std::size_t M = 0;  // out-degree of the initial state
  bool m_regular = false;
  bool deterministic = false;
  bool irreducible = false;
  bool lossless = false;
};

class TrellisCode;

namespace detail {

inline std::size_t label_distance(const Vec& a, const Vec& b) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

}  // namespace detail

class TrellisCode {
 public:
  static constexpr std::uint64_t kDefaultPairGuard = 1ull << 24;

  /// Computes every structural flag. Never throws on structural defects; the
  /// flags carry the verdicts.
  static TrellisCode validate(LabeledDigraph g, std::size_t initial) {
    require(g.num_states >= 1, ErrorKind::PreconditionViolated, "digraph has no states");
    require(initial < g.num_states, ErrorKind::PreconditionViolated, "initial state out of range");
    for (const auto& e : g.edges) {
      require(e.src < g.num_states && e.dst < g.num_states, ErrorKind::PreconditionViolated,
              "edge endpoint out of range");
      require(e.label.size() == g.n, ErrorKind::LengthMismatch, "edge label length != n");
      for (auto s : e.label) require(s < g.q, ErrorKind::PreconditionViolated, "label symbol >= q");
    }
    TrellisCode t;
    t.g_ = std::move(g);
    t.initial_ = initial;
    const std::size_t V = t.g_.num_states;
    t.out_.assign(V, {});
    for (std::size_t i = 0; i < t.g_.edges.size(); ++i) t.out_[t.g_.edges[i].src].push_back(i);

    auto& f = t.flags_;
    f.M = t.out_[initial].size();
    f.m_regular = std::all_of(t.out_.begin(), t.out_.end(), [&](const auto& o) { return o.size() == f.M; });
    f.deterministic = true;
    for (std::size_t v = 0; v < V && f.deterministic; ++v) {
      std::set<Vec> seen;
      for (auto ei : t.out_[v])
        if (!seen.insert(t.g_.edges[ei].label).second) {
          f.deterministic = false;
          break;
        }
    }
    f.irreducible = t.strongly_connected();
    f.lossless = f.deterministic || t.lossless_by_pairs();
    return t;
  }

  const LabeledDigraph& graph() const noexcept { return g_; }
  std::size_t initial() const noexcept { return initial_; }
  const TrellisFlags& flags() const noexcept { return flags_; }
  std::size_t M() const noexcept { return flags_.M; }
  std::size_t num_states() const noexcept { return g_.num_states; }
  const std::vector<std::size_t>& out_edges(std::size_t v) const { return out_[v]; }
  const TrellisEdge& edge(std::size_t i) const { return g_.edges[i]; }

  /// log_q |V| of this presentation: an upper bound on the code degree.
  Real degree_upper() const { return log_ratio(g_.num_states, g_.q); }

  bool has_dead_ends() const {
    return std::any_of(out_.begin(), out_.end(), [](const auto& o) { return o.empty(); });
  }

 private:
  bool strongly_connected() const {
    const std::size_t V = g_.num_states;
    auto reach = [&](bool reverse) {
      std::vector<std::vector<std::size_t>> adj(V);
      for (const auto& e : g_.edges) {
        if (reverse)
          adj[e.dst].push_back(e.src);
        else
          adj[e.src].push_back(e.dst);
      }
      std::vector<bool> seen(V, false);
      std::vector<std::size_t> stack{0};
      seen[0] = true;
      std::size_t count = 1;
      while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        for (auto w : adj[v])
          if (!seen[w]) {
            seen[w] = true;
            ++count;
            stack.push_back(w);
          }
      }
      return count == V;
    };
    return reach(false) && reach(true);
  }

  // Not lossless iff two distinct equal-label paths from one state meet
  // again: a split (two different edges, same source, same label) followed by
  // equal-label steps reaching a common state.
  bool lossless_by_pairs() const {
    const std::size_t V = g_.num_states;
    require(static_cast<std::uint64_t>(V) * V <= kDefaultPairGuard, ErrorKind::BudgetExceeded,
            "pair graph exceeds guard");
    std::vector<bool> seen(V * V, false);
    std::vector<std::size_t> frontier;
    for (std::size_t v = 0; v < V; ++v)
      for (auto a : out_[v])
        for (auto b : out_[v]) {
          if (a == b || g_.edges[a].label != g_.edges[b].label) continue;
          const std::size_t p = g_.edges[a].dst * V + g_.edges[b].dst;
          if (!seen[p]) {
            seen[p] = true;
            frontier.push_back(p);
          }
        }
    while (!frontier.empty()) {
      const std::size_t p = frontier.back();
      frontier.pop_back();
      const std::size_t x = p / V, y = p % V;
      if (x == y) return false;
      for (auto a : out_[x])
        for (auto b : out_[y]) {
          if (g_.edges[a].label != g_.edges[b].label) continue;
          const std::size_t np = g_.edges[a].dst * V + g_.edges[b].dst;
          if (!seen[np]) {
            seen[np] = true;
            frontier.push_back(np);
          }
        }
    }
    return true;
  }

  LabeledDigraph g_;
  std::size_t initial_ = 0;
  TrellisFlags flags_;
  std::vector<std::vector<std::size_t>> out_;
};

/// d_0^c .. d_upto^c: minimum accumulated label distance between two paths
/// from the initial state whose first edges differ (hence whose first labels
/// differ, by determinism).
inline std::vector<std::size_t> tc_column_distances(const TrellisCode& t, std::size_t upto,
                                                    std::uint64_t pair_guard = TrellisCode::kDefaultPairGuard) {
  require(t.flags().deterministic, ErrorKind::NotDeterministic,
          "column distance needs a deterministic presentation");
  const std::size_t V = t.num_states();
  require(static_cast<std::uint64_t>(V) * V <= pair_guard, ErrorKind::BudgetExceeded, "|V|^2 exceeds guard");
  require(t.M() >= 2, ErrorKind::PreconditionViolated, "column distance needs at least two outgoing edges");
  std::vector<std::size_t> dist(V * V, kInfWeight), next(V * V, kInfWeight);
  const auto& root = t.out_edges(t.initial());
  for (auto a : root)
    for (auto b : root) {
      if (a == b) continue;
      const auto& ea = t.edge(a);
      const auto& eb = t.edge(b);
      const std::size_t p = ea.dst * V + eb.dst;
      dist[p] = std::min(dist[p], detail::label_distance(ea.label, eb.label));
    }
  std::vector<std::size_t> profile{*std::min_element(dist.begin(), dist.end())};
  for (std::size_t step = 1; step <= upto; ++step) {
    std::fill(next.begin(), next.end(), kInfWeight);
    for (std::size_t p = 0; p < V * V; ++p) {
      if (dist[p] == kInfWeight) continue;
      const std::size_t x = p / V, y = p % V;
      for (auto a : t.out_edges(x))
        for (auto b : t.out_edges(y)) {
          const auto& ea = t.edge(a);
          const auto& eb = t.edge(b);
          const std::size_t np = ea.dst * V + eb.dst;
          next[np] = std::min(next[np], dist[p] + detail::label_distance(ea.label, eb.label));
        }
    }
    dist.swap(next);
    profile.push_back(*std::min_element(dist.begin(), dist.end()));
  }
  return profile;
}

inline std::size_t tc_column_distance(const TrellisCode& t, std::size_t j,
                                      std::uint64_t pair_guard = TrellisCode::kDefaultPairGuard) {
  return tc_column_distances(t, j, pair_guard).back();
}

struct TrellisFreeDistance {
  std::size_t weight = kInfWeight;
  bool zero_cost_cycle = false;  // two distinct paths that never remerge yet stop differing
  bool truncated = false;        // presentation has dead ends; codewords are maximal paths
};

/// Minimum distance between distinct codewords: two paths share a prefix from
/// the initial state, split at some reachable state, and accumulate label
/// distance until they either remerge, enter a zero-cost cycle of the pair
/// graph, or (in truncated presentations) both end.
inline TrellisFreeDistance tc_free_distance(const TrellisCode& t,
                                            std::uint64_t pair_guard = TrellisCode::kDefaultPairGuard) {
  require(t.flags().deterministic, ErrorKind::NotDeterministic,
          "free distance needs a deterministic presentation");
  const std::size_t V = t.num_states();
  require(static_cast<std::uint64_t>(V) * V <= pair_guard, ErrorKind::BudgetExceeded, "|V|^2 exceeds guard");
  TrellisFreeDistance res;
  res.truncated = t.has_dead_ends();

  std::vector<bool> reachable(V, false);
  std::vector<std::size_t> stack{t.initial()};
  reachable[t.initial()] = true;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (auto e : t.out_edges(v))
      if (!reachable[t.edge(e).dst]) {
        reachable[t.edge(e).dst] = true;
        stack.push_back(t.edge(e).dst);
      }
  }

  // Completion set: pairs from which the two paths can continue forever (or
  // stop together) without adding distance.
  std::vector<bool> done(V * V, false);
  for (std::size_t x = 0; x < V; ++x)
    for (std::size_t y = 0; y < V; ++y) {
      if (x == y || (t.out_edges(x).empty() && t.out_edges(y).empty())) done[x * V + y] = true;
    }
  std::vector<bool> zero(V * V, false);
  for (std::size_t p = 0; p < V * V; ++p) zero[p] = !done[p];
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t p = 0; p < V * V; ++p) {
      if (!zero[p]) continue;
      const std::size_t x = p / V, y = p % V;
      bool ok = false;
      for (auto a : t.out_edges(x)) {
        for (auto b : t.out_edges(y)) {
          const auto& ea = t.edge(a);
          const auto& eb = t.edge(b);
          if (ea.label != eb.label) continue;
          const std::size_t np = ea.dst * V + eb.dst;
          if (zero[np] || done[np]) {
            ok = true;
            break;
          }
        }
        if (ok) break;
      }
      if (!ok) {
        zero[p] = false;
        changed = true;
      }
    }
  }
  for (std::size_t p = 0; p < V * V; ++p)
    if (zero[p]) {
      res.zero_cost_cycle = true;
      done[p] = true;
    }

  using Item = std::pair<std::size_t, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  std::vector<std::size_t> dist(V * V, kInfWeight);
  for (std::size_t v = 0; v < V; ++v) {
    if (!reachable[v]) continue;
    for (auto a : t.out_edges(v))
      for (auto b : t.out_edges(v)) {
        if (a == b) continue;
        const auto& ea = t.edge(a);
        const auto& eb = t.edge(b);
        const std::size_t p = ea.dst * V + eb.dst;
        const std::size_t w = detail::label_distance(ea.label, eb.label);
        if (w < dist[p]) {
          dist[p] = w;
          pq.push({w, p});
        }
      }
  }
  while (!pq.empty()) {
    auto [d, p] = pq.top();
    pq.pop();
    if (d != dist[p]) continue;
    if (done[p]) {
      res.weight = d;
      return res;
    }
    const std::size_t x = p / V, y = p % V;
    for (auto a : t.out_edges(x))
      for (auto b : t.out_edges(y)) {
        const auto& ea = t.edge(a);
        const auto& eb = t.edge(b);
        const std::size_t np = ea.dst * V + eb.dst;
        const std::size_t w = d + detail::label_distance(ea.label, eb.label);
        if (w < dist[np]) {
          dist[np] = w;
          pq.push({w, np});
        }
      }
  }
  return res;
}

/// State-graph presentation of a convolutional code: states are encoder
/// memories (zero state first, hence initial), one edge per input block in
/// input-index order, labeled with the output block.
inline TrellisCode trellis_from_conv(const ConvolutionalCode& code, std::uint64_t state_guard = 1u << 16) {
  const EncoderStateGraph sg(code, state_guard);
  LabeledDigraph g;
  g.q = code.field()->q();
  g.n = code.n();
  g.num_states = sg.num_states();
  Vec out(code.n());
  for (std::uint64_t s = 0; s < sg.num_states(); ++s)
    for (std::uint64_t x = 0; x < sg.num_inputs(); ++x) {
      sg.output(s, x, out);
      g.edges.push_back({static_cast<std::size_t>(s), static_cast<std::size_t>(sg.next(s, x)), out});
    }
  return TrellisCode::validate(std::move(g), 0);
}

/// M-regular deterministic presentation with V states: each state gets M
/// distinct labels drawn uniformly from the q^n words and uniform targets.
inline TrellisCode tc_random_deterministic(std::uint32_t q, std::size_t n, std::size_t M, std::size_t V,
                                           std::uint64_t seed) {
  require(q >= 2 && n >= 1 && V >= 1 && M >= 1, ErrorKind::PreconditionViolated, "need q >= 2, n, M, V >= 1");
  std::uint64_t words = 1;
  for (std::size_t i = 0; i < n; ++i) {
    words *= q;
    require(words <= (1u << 20), ErrorKind::PreconditionViolated, "q^n too large");
  }
  require(M <= words, ErrorKind::PreconditionViolated, "M exceeds q^n");
  SplitMix rng(seed);
  LabeledDigraph g;
  g.q = q;
  g.n = n;
  g.num_states = V;
  for (std::size_t v = 0; v < V; ++v) {
    std::set<std::uint64_t> used;
    while (used.size() < M) {
      const auto w = rng.below(words);
      if (!used.insert(w).second) continue;
      Vec label(n);
      auto x = w;
      for (auto& s : label) {
        s = static_cast<Elem>(x % q);
        x /= q;
      }
      g.edges.push_back({v, static_cast<std::size_t>(rng.below(V)), std::move(label)});
    }
  }
  return TrellisCode::validate(std::move(g), 0);
}

}  // namespace xtrellis
