#pragma once
// Reference computations for the tests. Each one enumerates from the
// definitions and shares no search code with the library; only field
// arithmetic is borrowed, and that is checked on its own against
// schoolbook polynomial products.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <set>
#include <vector>

#include "xtrellis/construction.hpp"

namespace oracle {

using xtrellis::BipartiteGraph;
using xtrellis::Elem;
using xtrellis::Field;
using xtrellis::Vec;

inline constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

/// a * b in GF(p)[x] / (modulus), operands as base-p digit encodings.
inline Elem poly_mul_mod(Elem a, Elem b, std::uint32_t p, const std::vector<std::uint32_t>& modulus) {
  const std::size_t e = modulus.size() - 1;
  std::vector<std::int64_t> da(e, 0), db(e, 0), prod(2 * e, 0);
  for (std::size_t i = 0; i < e; ++i) {
    da[i] = a % p;
    a /= p;
    db[i] = b % p;
    b /= p;
  }
  for (std::size_t i = 0; i < e; ++i)
    for (std::size_t j = 0; j < e; ++j) prod[i + j] += da[i] * db[j];
  for (std::size_t deg = 2 * e - 1; deg >= e; --deg) {
    const std::int64_t c = prod[deg] % p;
    prod[deg] = 0;
    for (std::size_t i = 0; i < e; ++i) prod[deg - e + i] -= c * modulus[i];
    if (deg == e) break;
  }
  Elem out = 0, scale = 1;
  for (std::size_t i = 0; i < e; ++i) {
    out += static_cast<Elem>(((prod[i] % p) + p) % p) * scale;
    scale *= p;
  }
  return out;
}

/// Odometer over q^len digit vectors; returns false after the last one.
inline bool next_digits(std::vector<Elem>& d, std::uint32_t q) {
  for (auto& x : d) {
    if (++x < q) return true;
    x = 0;
  }
  return false;
}

inline std::size_t hamming(const Vec& v) {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](Elem x) { return x != 0; }));
}

/// Polynomial generator: G[i][j] is the ascending coefficient list of g_ij(D).
using PolyGen = std::vector<std::vector<std::vector<Elem>>>;

inline std::size_t poly_memory(const PolyGen& G) {
  std::size_t m = 0;
  for (const auto& row : G)
    for (const auto& p : row) m = std::max(m, p.empty() ? 0 : p.size() - 1);
  return m;
}

/// c(D) = x(D) G(D), blocks 0 .. x.size() - 1 + m.
inline std::vector<Vec> conv_encode(const Field& f, const PolyGen& G, const std::vector<Vec>& x) {
  const std::size_t k = G.size(), n = G[0].size(), m = poly_memory(G);
  std::vector<Vec> c(x.size() + m, Vec(n, 0));
  for (std::size_t t = 0; t < x.size(); ++t)
    for (std::size_t i = 0; i < k; ++i) {
      if (x[t][i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t d = 0; d < G[i][j].size(); ++d)
          c[t + d][j] = f.add(c[t + d][j], f.mul(x[t][i], G[i][j][d]));
    }
  return c;
}

/// d_0^c .. d_upto^c by enumerating every message of length j+1 with x_0 != 0.
inline std::vector<std::size_t> conv_column_distances(const Field& f, const PolyGen& G, std::size_t upto) {
  const std::size_t k = G.size();
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j <= upto; ++j) {
    std::size_t best = kInf;
    std::vector<Elem> digits(k * (j + 1), 0);
    while (next_digits(digits, f.q())) {
      if (std::all_of(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(k), [](Elem v) { return v == 0; }))
        continue;
      std::vector<Vec> x(j + 1, Vec(k));
      for (std::size_t t = 0; t <= j; ++t)
        for (std::size_t i = 0; i < k; ++i) x[t][i] = digits[t * k + i];
      const auto c = conv_encode(f, G, x);
      std::size_t w = 0;
      for (std::size_t t = 0; t <= j; ++t) w += hamming(c[t]);
      best = std::min(best, w);
    }
    out.push_back(best);
  }
  return out;
}

/// Least codeword weight over nonzero messages of length <= max_len.
inline std::size_t conv_free_distance(const Field& f, const PolyGen& G, std::size_t max_len) {
  const std::size_t k = G.size();
  std::size_t best = kInf;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<Elem> digits(k * len, 0);
    while (next_digits(digits, f.q())) {
      if (std::all_of(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(k), [](Elem v) { return v == 0; }))
        continue;
      std::vector<Vec> x(len, Vec(k));
      for (std::size_t t = 0; t < len; ++t)
        for (std::size_t i = 0; i < k; ++i) x[t][i] = digits[t * k + i];
      std::size_t w = 0;
      for (const auto& b : conv_encode(f, G, x)) w += hamming(b);
      best = std::min(best, w);
    }
  }
  return best;
}

/// All codewords of the row space of `rows`.
inline std::vector<Vec> span(const Field& f, const std::vector<Vec>& rows, std::size_t n) {
  std::vector<Vec> out;
  std::vector<Elem> digits(rows.size(), 0);
  do {
    Vec w(n, 0);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t c = 0; c < n; ++c) w[c] = f.add(w[c], f.mul(digits[i], rows[i][c]));
    out.push_back(std::move(w));
  } while (next_digits(digits, f.q()));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::size_t block_min_distance(const Field& f, const std::vector<Vec>& rows, std::size_t n) {
  std::size_t best = kInf;
  for (const auto& w : span(f, rows, n))
    if (hamming(w) > 0) best = std::min(best, hamming(w));
  return best;
}

/// Column distances of a deterministic trellis by listing every pair of
/// label sequences of length j+1 from the initial state with different first
/// edges.
inline std::vector<std::size_t> trellis_column_distances(const xtrellis::TrellisCode& t, std::size_t upto) {
  const auto& g = t.graph();
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j <= upto; ++j) {
    // (first edge, concatenated labels)
    std::vector<std::pair<std::size_t, Vec>> paths;
    std::vector<std::tuple<std::size_t, std::size_t, Vec>> frontier;  // state, first edge, labels
    for (std::size_t e = 0; e < g.edges.size(); ++e)
      if (g.edges[e].src == t.initial()) frontier.emplace_back(g.edges[e].dst, e, g.edges[e].label);
    for (std::size_t step = 1; step <= j; ++step) {
      std::vector<std::tuple<std::size_t, std::size_t, Vec>> next;
      for (const auto& [s, first, lab] : frontier)
        for (const auto& e : g.edges)
          if (e.src == s) {
            Vec l = lab;
            l.insert(l.end(), e.label.begin(), e.label.end());
            next.emplace_back(e.dst, first, std::move(l));
          }
      frontier = std::move(next);
    }
    std::size_t best = kInf;
    for (std::size_t a = 0; a < frontier.size(); ++a)
      for (std::size_t b = a + 1; b < frontier.size(); ++b) {
        if (std::get<1>(frontier[a]) == std::get<1>(frontier[b])) continue;
        const auto& la = std::get<2>(frontier[a]);
        const auto& lb = std::get<2>(frontier[b]);
        std::size_t d = 0;
        for (std::size_t i = 0; i < la.size(); ++i) d += la[i] != lb[i];
        best = std::min(best, d);
      }
    out.push_back(best);
  }
  return out;
}

inline std::size_t edges_between(const BipartiteGraph& g, const std::vector<std::size_t>& S,
                                 const std::vector<std::size_t>& T) {
  std::size_t c = 0;
  for (const auto& e : g.edges())
    c += std::count(S.begin(), S.end(), e.left) && std::count(T.begin(), T.end(), e.right);
  return c;
}

/// B by enumerating all q^{n(m+1)Delta} words and testing both defining
/// conditions directly. Coordinates: copy i, then edge position.
inline std::vector<Vec> intersection_code(const xtrellis::ConstructionSpec& spec) {
  const Field& f = *spec.field();
  const auto& g = spec.graph;
  const std::size_t m = spec.m(), E = g.num_edges(), N = (m + 1) * E, k = spec.conv.k();
  // Outer block code: rows (G_0 | G_1 | ... | G_m).
  std::vector<Vec> outer_rows(k, Vec((m + 1) * spec.delta(), 0));
  for (std::size_t i = 0; i <= m; ++i) {
    const auto gi = spec.conv.coeff(i);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < spec.delta(); ++c) outer_rows[r][i * spec.delta() + c] = gi(r, c);
  }
  const auto outer = span(f, outer_rows, (m + 1) * spec.delta());
  const std::set<Vec> outer_set(outer.begin(), outer.end());
  std::vector<Vec> inner_rows;
  for (std::size_t r = 0; r < spec.inner.k(); ++r) {
    const auto row = spec.inner.generator().row(r);
    inner_rows.emplace_back(row.begin(), row.end());
  }
  const auto inner = span(f, inner_rows, spec.delta());
  const std::set<Vec> inner_set(inner.begin(), inner.end());

  std::vector<Vec> out;
  std::vector<Elem> w(N, 0);
  do {
    bool ok = true;
    for (std::size_t s = 0; s < g.n() && ok; ++s) {
      Vec sub;
      for (std::size_t i = 0; i <= m; ++i)
        for (std::size_t p = 0; p < E; ++p)
          if (g.edges()[p].right == s) sub.push_back(w[i * E + p]);
      ok = outer_set.count(sub) > 0;
    }
    for (std::size_t i = 0; i <= m && ok; ++i)
      for (std::size_t s = 0; s < g.n() && ok; ++s) {
        Vec sub;
        for (std::size_t p = 0; p < E; ++p)
          if (g.edges()[p].left == s) sub.push_back(w[i * E + p]);
        ok = inner_set.count(sub) > 0;
      }
    if (ok) out.push_back(w);
  } while (next_digits(w, f.q()));
  std::sort(out.begin(), out.end());
  return out;
}

/// Packed column distances of the lifted code from its blocks G~_i by
/// enumerating all messages; a block's packed weight is the number of left
/// vertices with a nonzero incident symbol.
inline std::vector<std::size_t> packed_column_distances(const xtrellis::ExpanderTrellisCode& etc, std::size_t upto) {
  const Field& f = *etc.spec.field();
  const auto& g = etc.spec.graph;
  const auto& blocks = etc.lifted.blocks;
  const std::size_t kt = etc.k_tilde(), E = g.num_edges();
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j <= upto; ++j) {
    std::size_t best = kInf;
    std::vector<Elem> digits(kt * (j + 1), 0);
    while (next_digits(digits, f.q())) {
      if (std::all_of(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(kt), [](Elem v) { return v == 0; }))
        continue;
      std::size_t w = 0;
      for (std::size_t t = 0; t <= j; ++t) {
        Vec c(E, 0);
        for (std::size_t i = 0; i <= t && i < blocks.size(); ++i)
          for (std::size_t r = 0; r < kt; ++r) {
            const Elem x = digits[(t - i) * kt + r];
            if (x == 0) continue;
            for (std::size_t p = 0; p < E; ++p) c[p] = f.add(c[p], f.mul(x, blocks[i](r, p)));
          }
        std::vector<bool> hit(g.n(), false);
        for (std::size_t p = 0; p < E; ++p)
          if (c[p] != 0) hit[g.edges()[p].left] = true;
        w += static_cast<std::size_t>(std::count(hit.begin(), hit.end(), true));
      }
      best = std::min(best, w);
    }
    out.push_back(best);
  }
  return out;
}

}  // namespace oracle
