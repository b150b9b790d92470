#pragma once
// Trellis codes on expander graphs: the intersection code B on m + 1 copies
// of a bipartite graph, its lifted convolutional code, the packing map into
// GF(q^{k2}), and the checks that accompany each stage.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xtrellis/block_code.hpp"
#include "xtrellis/conv_code.hpp"
#include "xtrellis/embedding.hpp"
#include "xtrellis/expander.hpp"
#include "xtrellis/rational.hpp"
#include "xtrellis/trellis_bounds.hpp"

namespace xtrellis {

/// Outer convolutional code C, inner block code B2 and graph G_0, all of
/// length / degree Delta over one field.
struct ConstructionSpec {
  ConvolutionalCode conv;
  LinearBlockCode inner;
  BipartiteGraph graph;

  static ConstructionSpec make(ConvolutionalCode conv, LinearBlockCode inner, BipartiteGraph graph) {
    require(conv.n() == inner.n() && inner.n() == graph.degree(), ErrorKind::LengthMismatch,
            "code lengths and graph degree must all equal Delta");
    require_same_field(*conv.field(), *inner.field());
    return {std::move(conv), std::move(inner), std::move(graph)};
  }

  std::size_t delta() const { return graph.degree(); }
  std::size_t n() const { return graph.n(); }
  std::size_t m() const { return conv.memory(); }
  const FieldPtr& field() const { return conv.field(); }
};

/// B = B^(1) ∩ B^(2) on n(m+1)Delta coordinates (copy-major, see EdgeIndexing).
struct IntersectionCode {
  EdgeIndexing index;
  LinearBlockCode outer_block;  // B1, generated by (G_0, ..., G_m)
  Matrix b1_parity;             // rows: B1 checks at every right vertex
  Matrix b2_parity;             // rows: B2 checks at every (copy, left vertex)
  Matrix basis;                 // RREF basis of B, k~ rows
  std::size_t k_tilde = 0;
  std::int64_t dim_lower = 0;   // (k - (m+1)(Delta - k2)) n
  bool degenerate() const { return k_tilde == 0; }
};

namespace detail {

// Coordinates of E(v_{0,s}, ..., v_{m,s}): copy 0 in edge order, then copy 1, ...
inline std::vector<std::size_t> right_coords(const BipartiteGraph& g, const EdgeIndexing& idx, std::size_t s) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < idx.copies; ++j)
    for (auto e : g.right_incidence(s)) out.push_back(idx.offset(j, e));
  return out;
}

inline std::vector<std::size_t> left_coords(const BipartiteGraph& g, const EdgeIndexing& idx, std::size_t copy,
                                            std::size_t s) {
  std::vector<std::size_t> out;
  for (auto e : g.left_incidence(s)) out.push_back(idx.offset(copy, e));
  return out;
}

// One row per (check, site): the check h placed on the site's coordinates.
inline void place_checks(const Matrix& h, const std::vector<std::size_t>& coords, std::vector<Vec>& rows,
                         std::size_t ambient) {
  for (std::size_t i = 0; i < h.rows(); ++i) {
    Vec r(ambient, 0);
    for (std::size_t c = 0; c < coords.size(); ++c) r[coords[c]] = h(i, c);
    rows.push_back(std::move(r));
  }
}

inline Vec restrict(std::span<const Elem> word, const std::vector<std::size_t>& positions) {
  Vec out;
  out.reserve(positions.size());
  for (auto p : positions) out.push_back(word[p]);
  return out;
}

inline Matrix rref_rows(const Matrix& m) { return row_basis(m); }

}  // namespace detail

/// Solves the stacked vertex constraints for B and cross-checks the result
/// against the row-space intersection of B^(1) and B^(2).
inline IntersectionCode ec_build_B(const ConstructionSpec& spec) {
  const auto& g = spec.graph;
  const std::size_t n = spec.n(), delta = spec.delta(), m = spec.m();
  const std::size_t k = spec.conv.k(), k2 = spec.inner.k();
  IntersectionCode ic;
  ic.index = xg_copies(g, m);
  const std::size_t N = ic.index.total();
  const FieldPtr& f = spec.field();

  Matrix g_concat(f, k, (m + 1) * delta);
  for (std::size_t j = 0; j <= m; ++j) {
    const Matrix gj = spec.conv.coeff(j);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < delta; ++c) g_concat(r, j * delta + c) = gj(r, c);
  }
  ic.outer_block = LinearBlockCode::from_generator(g_concat);
  require(ic.outer_block.k() == k, ErrorKind::RankAssertionFailed, "(G_0, ..., G_m) is not full rank");

  std::vector<Vec> rows1, rows2;
  for (std::size_t s = 0; s < n; ++s)
    detail::place_checks(ic.outer_block.parity_check(), detail::right_coords(g, ic.index, s), rows1, N);
  for (std::size_t j = 0; j <= m; ++j)
    for (std::size_t s = 0; s < n; ++s)
      detail::place_checks(spec.inner.parity_check(), detail::left_coords(g, ic.index, j, s), rows2, N);
  ic.b1_parity = Matrix::from_rows(f, rows1, N);
  ic.b2_parity = Matrix::from_rows(f, rows2, N);

  const Matrix stacked = vstack(ic.b1_parity, ic.b2_parity);
  ic.basis = detail::rref_rows(rref(stacked).nullspace);
  ic.k_tilde = ic.basis.rows();

  // Second route: intersect the two row spaces directly.
  const Matrix b1 = rref(ic.b1_parity).nullspace;
  const Matrix b2 = rref(ic.b2_parity).nullspace;
  require(b1.rows() == n * k && b2.rows() == n * (m + 1) * k2, ErrorKind::RankAssertionFailed,
          "constituent dimensions differ from n k and n (m+1) k2");
  const Matrix inter = subspace_intersect(b1, b2);
  require(inter == ic.basis, ErrorKind::RankAssertionFailed, "null-space and intersection routes disagree");

  ic.dim_lower = (static_cast<std::int64_t>(k) -
                  static_cast<std::int64_t>((m + 1) * (delta - k2))) *
                 static_cast<std::int64_t>(n);
  require(static_cast<std::int64_t>(ic.k_tilde) >= ic.dim_lower, ErrorKind::RankAssertionFailed,
          "dim B below dim B^(1) + dim B^(2) - n(m+1)Delta");
  return ic;
}

enum class Tamper {
  None,
  RankDeficientG0,  // overwrite the last row of G~_0 so it loses rank
  PerturbG0,        // add 1 to the first entry of G~_0
};

struct LiftedCode {
  std::vector<Matrix> blocks;  // G~_0, ..., G~_m, each k~ x n Delta
  ConvolutionalCode conv_tilde;
  std::size_t k_tilde = 0;
};

inline LiftedCode ec_extract_generator(const IntersectionCode& b, std::size_t m, Tamper tamper = Tamper::None) {
  require(!b.degenerate(), ErrorKind::DimensionZero, "B is zero-dimensional");
  const std::size_t width = b.index.edges_per_copy;
  LiftedCode lc;
  lc.k_tilde = b.k_tilde;
  for (std::size_t j = 0; j <= m; ++j) lc.blocks.push_back(b.basis.col_block(j * width, width));
  Matrix& g0 = lc.blocks[0];
  const Field& f = *g0.field();
  if (tamper == Tamper::RankDeficientG0) {
    const std::size_t last = g0.rows() - 1;
    for (std::size_t c = 0; c < width; ++c) g0(last, c) = last == 0 ? 0 : g0(0, c);
  } else if (tamper == Tamper::PerturbG0) {
    g0(0, 0) = f.add(g0(0, 0), 1);
  }
  require(rank(g0) == lc.k_tilde, ErrorKind::RankAssertionFailed,
          "G~_0 has rank " + std::to_string(rank(g0)) + " < k~ = " + std::to_string(lc.k_tilde));
  PolyGeneratorMatrix pg;
  pg.field = g0.field();
  pg.n = width;
  pg.k = lc.k_tilde;
  pg.coeffs = lc.blocks;
  lc.conv_tilde = ConvolutionalCode::create(std::move(pg));
  return lc;
}

/// phi: B2 -> GF(q^{k2}) through the reduced-basis coordinates of B2.
class PackingMap {
 public:
  static constexpr std::uint64_t kExhaustiveLimit = 1u << 12;

  static PackingMap make(const LinearBlockCode& inner) {
    const FieldPtr& f = inner.field();
    std::uint64_t size = 1;
    for (std::size_t i = 0; i < inner.k(); ++i) {
      size *= f->q();
      require(size <= Field::kMaxOrder, ErrorKind::PreconditionViolated, "q^{k2} exceeds the field size limit");
    }
    PackingMap pm{inner, FieldEmbedding::make(f, static_cast<std::uint32_t>(inner.k()))};
    if (size <= kExhaustiveLimit) pm.check_exhaustive();
    return pm;
  }

  const LinearBlockCode& inner() const { return inner_; }
  const FieldPtr& packed_field() const { return emb_.ext(); }
  const FieldEmbedding& embedding() const { return emb_; }

  /// Undefined off B2; raises ClaimViolated there since every caller feeds
  /// it left-vertex restrictions, which lie in B2.
  Elem apply(std::span<const Elem> word) const {
    if (!inner_.contains(word)) fail(ErrorKind::ClaimViolated, "word outside B2 passed to phi");
    return emb_.forward(inner_.coordinates(word));
  }

  Vec inverse(Elem y) const { return inner_.encode(emb_.backward(y)); }

 private:
  PackingMap(LinearBlockCode inner, FieldEmbedding emb) : inner_(std::move(inner)), emb_(std::move(emb)) {}

  // Bijective onto GF(q^{k2}); additive against every basis vector and
  // homogeneous on them, which together give GF(q)-linearity.
  void check_exhaustive() const {
    const Field& f = *inner_.field();
    const Field& ext = *emb_.ext();
    const std::size_t k2 = inner_.k();
    std::vector<bool> hit(ext.q(), false);
    std::vector<Elem> basis_img(k2);
    for (std::size_t i = 0; i < k2; ++i) basis_img[i] = apply(inner_.generator().row(i));
    Vec u(k2, 0);
    for (std::uint64_t idx = 0; idx < ext.q(); ++idx) {
      std::uint64_t v = idx;
      for (std::size_t i = 0; i < k2; ++i) {
        u[i] = static_cast<Elem>(v % f.q());
        v /= f.q();
      }
      const Vec word = inner_.encode(u);
      const Elem y = apply(word);
      require(!hit[y], ErrorKind::ClaimViolated, "phi is not injective");
      hit[y] = true;
      for (std::size_t i = 0; i < k2; ++i) {
        Vec sum = word;
        axpy(f, 1, inner_.generator().row(i), sum);
        require(apply(sum) == ext.add(y, basis_img[i]), ErrorKind::ClaimViolated, "phi is not additive");
      }
    }
    for (std::size_t i = 0; i < k2; ++i)
      for (Elem a = 0; a < f.q(); ++a) {
        Vec scaled(inner_.n(), 0);
        axpy(f, a, inner_.generator().row(i), scaled);
        require(apply(scaled) == ext.mul(emb_.lift(a), basis_img[i]), ErrorKind::ClaimViolated,
                "phi is not homogeneous");
      }
  }

  LinearBlockCode inner_;
  FieldEmbedding emb_;
};

inline PackingMap ec_build_phi(const LinearBlockCode& inner) { return PackingMap::make(inner); }

/// Hamming weight over GF(q^{k2}) of a packed block: the number of left
/// vertices whose incident symbols are not all zero.
struct PackedWeight {
  const BipartiteGraph* graph = nullptr;
  std::size_t operator()(std::span<const Elem> block) const {
    std::size_t w = 0;
    for (std::size_t s = 0; s < graph->n(); ++s)
      for (auto e : graph->left_incidence(s))
        if (block[e] != 0) {
          ++w;
          break;
        }
    return w;
  }
};

struct ExpanderTrellisCode {
  ConstructionSpec spec;
  IntersectionCode b;
  LiftedCode lifted;
  PackingMap phi;

  std::size_t k_tilde() const { return lifted.k_tilde; }
  PackedWeight packed_weight() const { return {&spec.graph}; }
};

inline ExpanderTrellisCode ec_assemble(const ConstructionSpec& spec, Tamper tamper = Tamper::None) {
  auto b = ec_build_B(spec);
  auto lifted = ec_extract_generator(b, spec.m(), tamper);
  auto phi = ec_build_phi(spec.inner);
  return {spec, std::move(b), std::move(lifted), std::move(phi)};
}

struct EncodedBlocks {
  std::vector<Vec> c;       // over GF(q), coordinates on E_j
  std::vector<Vec> packed;  // over GF(q^{k2}), one symbol per left vertex
};

/// c_j = sum_i x_{j-i} G~_i for j < messages.size(), and C_j = phi^n(c_j).
inline EncodedBlocks ec_encode(const ExpanderTrellisCode& etc, const std::vector<Vec>& messages) {
  EncodedBlocks out;
  if (messages.empty()) return out;
  auto full = etc.lifted.conv_tilde.encode(messages);
  full.resize(messages.size());
  out.c = std::move(full);
  const auto& g = etc.spec.graph;
  const PackedWeight pw = etc.packed_weight();
  for (const auto& cj : out.c) {
    Vec packed(g.n());
    for (std::size_t s = 0; s < g.n(); ++s) {
      const Vec sub = detail::restrict(cj, g.left_incidence(s));
      if (!etc.spec.inner.contains(sub))
        fail(ErrorKind::ClaimViolated, "Claim 1: restriction at left vertex " + std::to_string(s + 1) +
                                           " is not in B2");
      packed[s] = etc.phi.apply(sub);
    }
    require(weight(packed) == pw(cj), ErrorKind::ClaimViolated, "wt(C_j) != |S_j|");
    out.packed.push_back(std::move(packed));
  }
  return out;
}

/// Random message sequences x_0..x_j with x_0 != 0.
inline std::vector<std::vector<Vec>> ec_sample_messages(const ExpanderTrellisCode& etc, std::size_t j,
                                                        std::size_t count, std::uint64_t seed) {
  const std::uint64_t q = etc.spec.field()->q();
  const std::size_t k = etc.k_tilde();
  SplitMix rng(seed);
  std::vector<std::vector<Vec>> out;
  for (std::size_t t = 0; t < count; ++t) {
    std::vector<Vec> msg(j + 1, Vec(k, 0));
    for (auto& block : msg)
      for (auto& x : block) x = static_cast<Elem>(rng.below(q));
    while (is_zero(msg[0]))
      for (auto& x : msg[0]) x = static_cast<Elem>(rng.below(q));
    out.push_back(std::move(msg));
  }
  return out;
}

/// Every message sequence x_0..x_j (zero included), or BudgetExceeded.
inline std::vector<std::vector<Vec>> ec_all_messages(const ExpanderTrellisCode& etc, std::size_t j,
                                                     std::uint64_t guard = 1u << 16) {
  const std::uint64_t q = etc.spec.field()->q();
  const std::size_t k = etc.k_tilde(), len = k * (j + 1);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < len; ++i) {
    total *= q;
    require(total <= guard, ErrorKind::BudgetExceeded, "message space exceeds guard");
  }
  std::vector<std::vector<Vec>> out;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::vector<Vec> msg(j + 1, Vec(k, 0));
    std::uint64_t v = idx;
    for (std::size_t i = 0; i < len; ++i) {
      msg[i / k][i % k] = static_cast<Elem>(v % q);
      v /= q;
    }
    out.push_back(std::move(msg));
  }
  return out;
}

struct ClaimsReport {
  std::size_t codewords = 0;
  std::size_t left_checks = 0;   // (c_j) on E(u_{j,s}) in B2
  std::size_t right_checks = 0;  // right-vertex sequences are truncated codewords of C
};

/// Checks both claims on each message sequence; the first failure raises
/// ClaimViolated naming the codeword, time and vertex.
inline ClaimsReport ec_verify_claims(const ExpanderTrellisCode& etc, const std::vector<std::vector<Vec>>& samples) {
  const auto& g = etc.spec.graph;
  ClaimsReport rep;
  std::vector<std::optional<LinearBlockCode>> truncated;
  for (std::size_t t = 0; t < samples.size(); ++t) {
    const auto& msg = samples[t];
    auto full = etc.lifted.conv_tilde.encode(msg);
    full.resize(msg.size());
    const std::size_t j = msg.size() - 1;
    for (std::size_t i = 0; i <= j; ++i)
      for (std::size_t s = 0; s < g.n(); ++s) {
        if (!etc.spec.inner.contains(detail::restrict(full[i], g.left_incidence(s))))
          fail(ErrorKind::ClaimViolated, "Claim 1 fails for sample " + std::to_string(t) + " at time " +
                                             std::to_string(i) + ", left vertex " + std::to_string(s + 1));
        ++rep.left_checks;
      }
    if (truncated.size() <= j) truncated.resize(j + 1);
    if (!truncated[j]) truncated[j] = LinearBlockCode::from_generator(etc.spec.conv.truncated_generator(j));
    for (std::size_t s = 0; s < g.n(); ++s) {
      Vec seq;
      for (std::size_t i = 0; i <= j; ++i) {
        const Vec sub = detail::restrict(full[i], g.right_incidence(s));
        seq.insert(seq.end(), sub.begin(), sub.end());
      }
      if (!truncated[j]->contains(seq))
        fail(ErrorKind::ClaimViolated, "Claim 2 fails for sample " + std::to_string(t) + " at right vertex " +
                                           std::to_string(s + 1) + " up to time " + std::to_string(j));
      ++rep.right_checks;
    }
    ++rep.codewords;
  }
  return rep;
}

/// d_0^c .. d_upto^c of the packed code, by dynamic programming on the
/// encoder state graph of C~ with packed block weights.
inline std::vector<std::size_t> ec_packed_column_distances(const ExpanderTrellisCode& etc, std::size_t upto,
                                                           const DistanceOptions& opt = {}) {
  return column_distances(etc.lifted.conv_tilde, upto, opt, etc.packed_weight());
}

/// d_j^c of the packed code by enumerating every x_0 != 0, x_1, ..., x_j.
inline std::size_t ec_packed_column_distance_bruteforce(const ExpanderTrellisCode& etc, std::size_t j,
                                                        const DistanceOptions& opt = {}) {
  return column_distance_enumerate(etc.lifted.conv_tilde, j, opt, etc.packed_weight());
}

/// d_0^c and d_1^c of the packed code without the state graph:
///   d_0^c = min_{x_0 != 0} wt(x_0 G~_0),
///   d_1^c = min_{x_0 != 0} wt(x_0 G~_0) + min_{x_1} wt(x_0 G~_1 + x_1 G~_0),
/// where the inner minimum is the least packed weight in a coset of the row
/// space of G~_0. Blocks are compressed to their B2 coordinates per left
/// vertex; coset weights come from a breadth-first search on syndromes whose
/// generators are the weight-one packed words.
inline std::vector<std::size_t> ec_packed_column_distances_coset(const ExpanderTrellisCode& etc, std::size_t upto,
                                                                 std::uint64_t guard = 1ull << 24) {
  require(upto <= 1, ErrorKind::PreconditionViolated, "coset route covers j <= 1 only");
  const auto& g = etc.spec.graph;
  const auto& inner = etc.spec.inner;
  const Field& f = *etc.spec.field();
  const std::uint64_t q = f.q();
  const std::size_t n = g.n(), k2 = inner.k(), kt = etc.k_tilde(), len = n * k2;

  auto compress = [&](std::span<const Elem> block) {
    Vec out;
    out.reserve(len);
    for (std::size_t s = 0; s < n; ++s) {
      const Vec sub = detail::restrict(block, g.left_incidence(s));
      const Vec u = inner.coordinates(sub);
      out.insert(out.end(), u.begin(), u.end());
    }
    return out;
  };
  auto compress_rows = [&](const Matrix& m) {
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(compress(m.row(i)));
    return Matrix::from_rows(m.field(), rows, len);
  };
  const Matrix g0 = compress_rows(etc.lifted.blocks[0]);
  const Matrix g1 = etc.lifted.blocks.size() > 1 ? compress_rows(etc.lifted.blocks[1]) : Matrix(etc.spec.field(), kt, len);
  require(rank(g0) == kt, ErrorKind::RankAssertionFailed, "compressed G~_0 lost rank");

  const Matrix h = rref(g0).nullspace;  // r x len, rows orthogonal to the code
  const std::size_t r = h.rows();
  std::uint64_t cosets = 1;
  for (std::size_t i = 0; i < r; ++i) {
    cosets *= q;
    require(cosets <= guard, ErrorKind::BudgetExceeded, "syndrome space exceeds guard");
  }
  std::uint64_t space = 1;
  for (std::size_t i = 0; i < kt; ++i) {
    space *= q;
    require(space <= guard, ErrorKind::BudgetExceeded, "q^{k~} exceeds guard");
  }
  auto syndrome_vec = [&](std::span<const Elem> v) {
    Vec sv(r, 0);
    for (std::size_t i = 0; i < r; ++i) {
      Elem acc = 0;
      for (std::size_t c = 0; c < len; ++c) acc = f.add(acc, f.mul(h(i, c), v[c]));
      sv[i] = acc;
    }
    return sv;
  };
  auto encode_syn = [&](const Vec& sv) {
    std::uint64_t idx = 0;
    for (std::size_t i = r; i-- > 0;) idx = idx * q + sv[i];
    return idx;
  };

  std::vector<std::uint8_t> coset_w;
  if (upto >= 1) {
    std::uint64_t nonzero = 1;
    for (std::size_t i = 0; i < k2; ++i) nonzero *= q;
    std::vector<Vec> gens;
    Vec v(len, 0), u(k2, 0);
    for (std::size_t s = 0; s < n; ++s)
      for (std::uint64_t idx = 1; idx < nonzero; ++idx) {
        std::uint64_t x = idx;
        for (std::size_t t = 0; t < k2; ++t) {
          u[t] = static_cast<Elem>(x % q);
          x /= q;
        }
        std::fill(v.begin(), v.end(), 0);
        std::copy(u.begin(), u.end(), v.begin() + s * k2);
        gens.push_back(syndrome_vec(v));
      }
    std::vector<std::uint64_t> gen_idx;
    for (const auto& sv : gens) gen_idx.push_back(encode_syn(sv));
    std::sort(gen_idx.begin(), gen_idx.end());
    gen_idx.erase(std::unique(gen_idx.begin(), gen_idx.end()), gen_idx.end());
    // Syndromes add digit-wise in GF(q).
    auto add_syn = [&](std::uint64_t a, std::uint64_t b) {
      if (f.p() == 2) return a ^ b;
      std::uint64_t out = 0, pw = 1;
      for (std::size_t i = 0; i < r; ++i) {
        out += f.add(static_cast<Elem>(a % q), static_cast<Elem>(b % q)) * pw;
        a /= q;
        b /= q;
        pw *= q;
      }
      return out;
    };
    coset_w.assign(cosets, 0xff);
    coset_w[0] = 0;
    std::vector<std::uint64_t> frontier{0};
    for (std::uint8_t d = 1; !frontier.empty(); ++d) {
      std::vector<std::uint64_t> next;
      for (auto a : frontier)
        for (auto gi : gen_idx) {
          const auto b = add_syn(a, gi);
          if (coset_w[b] == 0xff) {
            coset_w[b] = d;
            next.push_back(b);
          }
        }
      frontier = std::move(next);
    }
    require(std::none_of(coset_w.begin(), coset_w.end(), [](auto w) { return w == 0xff; }),
            ErrorKind::RankAssertionFailed, "weight-one words do not span the coset space");
  }

  // Mixed-radix walk over x_0 with incremental updates of x_0 G~_0 and of the
  // syndrome of x_0 G~_1.
  std::vector<Vec> row_syn;
  for (std::size_t i = 0; i < kt; ++i) row_syn.push_back(syndrome_vec(g1.row(i)));
  Vec word(len, 0), syn(r, 0);
  std::vector<Elem> digits(kt, 0);
  std::size_t best0 = kInfWeight, best1 = kInfWeight;
  auto packed_w = [&](const Vec& w) {
    std::size_t c = 0;
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t t = 0; t < k2; ++t)
        if (w[s * k2 + t] != 0) {
          ++c;
          break;
        }
    return c;
  };
  while (true) {
    std::size_t pos = 0;
    while (pos < kt) {
      const Elem old = digits[pos];
      const Elem nx = (old + 1 == q) ? 0 : old + 1;
      const Elem delta_coef = f.sub(nx, old);
      axpy(f, delta_coef, g0.row(pos), word);
      axpy(f, delta_coef, row_syn[pos], syn);
      digits[pos] = nx;
      if (nx != 0) break;
      ++pos;
    }
    if (pos == kt) break;
    const std::size_t w0 = packed_w(word);
    best0 = std::min(best0, w0);
    if (upto >= 1) best1 = std::min(best1, w0 + coset_w[encode_syn(syn)]);
  }
  std::vector<std::size_t> out{best0};
  if (upto >= 1) out.push_back(best1);
  return out;
}

/// Packed column distances by the state graph when it fits the guards, else
/// by the coset route (j <= 1).
inline std::vector<std::size_t> ec_packed_column_profile(const ExpanderTrellisCode& etc, std::size_t upto,
                                                         const DistanceOptions& opt = {},
                                                         std::string* method = nullptr) {
  try {
    auto out = ec_packed_column_distances(etc, upto, opt);
    if (method) *method = "state-graph";
    return out;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BudgetExceeded || upto > 1) throw;
  }
  if (method) *method = "coset";
  return ec_packed_column_distances_coset(etc, upto);
}

/// d(B2) / Delta.
inline Rational ec_theta(const ConstructionSpec& spec) {
  return rat(static_cast<std::int64_t>(spec.inner.min_distance()), static_cast<std::int64_t>(spec.delta()));
}

namespace detail {

// Right-hand side (x - gamma sqrt(1/theta)) / (1 - gamma) of the rw and
// column-distance lemmas; nullopt when gamma is 1 (the lemma is vacuous).
inline std::optional<double> expander_rhs(double x, double gamma, const Rational& theta) {
  if (gamma >= 1.0 - 1e-12) return std::nullopt;
  return (x - gamma * std::sqrt(1.0 / to_double(theta))) / (1.0 - gamma);
}

// lhs >= rhs, exactly when gamma is 0 and otherwise with 1e-9 slack on the
// bound side.
inline bool expander_geq(const Rational& lhs, const Rational& x, double gamma, const Rational& theta) {
  if (gamma == 0.0) return lhs >= x;
  const auto rhs = expander_rhs(to_double(x), gamma, theta);
  return !rhs || to_double(lhs) + 1e-9 >= *rhs;
}

}  // namespace detail

struct ColumnBoundReport {
  std::size_t j = 0;
  std::vector<std::size_t> conv_column;    // d_i^c(C), i <= j
  std::vector<std::size_t> packed_column;  // d_i^c of the packed code, i <= j
  std::vector<Rational> achieved;          // d_i^c / ((i+1) n)
  std::vector<Rational> min_term;          // min_{h <= i} d_h^c(C) / ((h+1) Delta)
  std::vector<std::optional<double>> bound;
  std::string method;  // how the packed distances were computed
  bool ok = true;
};

inline ColumnBoundReport ec_column_bound_check(const ExpanderTrellisCode& etc, double gamma, const Rational& theta,
                                               std::size_t j, const DistanceOptions& opt = {}) {
  ColumnBoundReport r;
  r.j = j;
  r.conv_column = column_distances(etc.spec.conv, j, opt);
  r.packed_column = ec_packed_column_profile(etc, j, opt, &r.method);
  const auto n = static_cast<std::int64_t>(etc.spec.n());
  const auto delta = static_cast<std::int64_t>(etc.spec.delta());
  Rational running;
  for (std::size_t i = 0; i <= j; ++i) {
    const auto ii = static_cast<std::int64_t>(i + 1);
    const Rational term = rat(static_cast<std::int64_t>(r.conv_column[i]), ii * delta);
    running = i == 0 ? term : std::min(running, term);
    r.min_term.push_back(running);
    r.achieved.push_back(rat(static_cast<std::int64_t>(r.packed_column[i]), ii * n));
    r.bound.push_back(detail::expander_rhs(to_double(running), gamma, theta));
    if (!detail::expander_geq(r.achieved.back(), running, gamma, theta)) r.ok = false;
  }
  return r;
}

struct WitnessDecomposition {
  std::size_t j = 0;
  std::vector<std::vector<std::size_t>> S, T;  // 0-based vertex indices
  std::vector<std::size_t> Y;                  // |Y_i|
  std::vector<Rational> arw;                   // arw(T̄_i), subword weights relative to Delta
  std::vector<Rational> a, b, lambda;          // a_0..a_j, b_0..b_{j+1}, lambda_0..lambda_j
  Rational partition_lhs, partition_rhs;
  bool rw_ok = true, lambda_ok = true, partition_ok = true, edge_ok = true;

  bool all_ok() const { return rw_ok && lambda_ok && partition_ok && edge_ok; }
  std::string dump() const;
};

inline std::string WitnessDecomposition::dump() const {
  auto set_str = [](const std::vector<std::size_t>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i] + 1);
    return s + "}";
  };
  std::string out;
  for (std::size_t i = 0; i <= j; ++i) {
    out += "i=" + std::to_string(i) + " S=" + set_str(S[i]) + " T=" + set_str(T[i]) + " |Y|=" +
           std::to_string(Y[i]) + " arw=" + to_string(arw[i]) + " a=" + to_string(a[i]) + " lambda=" +
           to_string(lambda[i]) + "\n";
  }
  out += "partition: " + to_string(partition_lhs) + " >= " + to_string(partition_rhs) + "\n";
  return out;
}

/// Computes the support sets and convex weights behind the column-distance
/// lemma for one codeword and checks every inequality along the way.
/// `conv_column` holds d_0^c(C) .. d_j^c(C). Raises WitnessViolated with the
/// full decomposition on any failure.
inline WitnessDecomposition ec_witness_check(const ExpanderTrellisCode& etc, const std::vector<Vec>& messages,
                                             const std::vector<std::size_t>& conv_column, double gamma,
                                             const Rational& theta) {
  require(!messages.empty(), ErrorKind::PreconditionViolated, "no message blocks");
  const std::size_t j = messages.size() - 1;
  require(conv_column.size() > j, ErrorKind::PreconditionViolated, "column distances of C missing");
  const auto& g = etc.spec.graph;
  const std::size_t n = g.n(), delta = g.degree();
  const std::size_t dmin_inner = static_cast<std::size_t>(
      boost::multiprecision::numerator(theta * rat(static_cast<std::int64_t>(delta))).convert_to<std::int64_t>());
  auto c = etc.lifted.conv_tilde.encode(messages);
  c.resize(j + 1);
  require(!is_zero(c[0]), ErrorKind::PreconditionViolated, "c_0 must be nonzero");

  WitnessDecomposition w;
  w.j = j;
  const auto D = static_cast<std::int64_t>(delta);
  for (std::size_t i = 0; i <= j; ++i) {
    std::vector<std::size_t> S, T;
    std::size_t Y = 0, tw = 0;
    for (std::size_t s = 0; s < n; ++s) {
      if (!is_zero(detail::restrict(c[i], g.left_incidence(s)))) S.push_back(s);
      const std::size_t wt = weight(detail::restrict(c[i], g.right_incidence(s)));
      if (wt > 0) {
        T.push_back(s);
        tw += wt;
      }
    }
    for (auto sym : c[i]) Y += sym != 0;
    const Rational arw = T.empty() ? rat(0) : rat(static_cast<std::int64_t>(tw), static_cast<std::int64_t>(T.size()) * D);
    // |Y| >= |S| d(B2) and |Y| = |T| arw Delta.
    if (Y < S.size() * dmin_inner) w.edge_ok = false;
    if (rat(static_cast<std::int64_t>(Y)) != rat(static_cast<std::int64_t>(T.size())) * arw * rat(D)) w.edge_ok = false;
    const Rational rw = rat(static_cast<std::int64_t>(S.size()), static_cast<std::int64_t>(n));
    if (!detail::expander_geq(rw, arw, gamma, theta)) w.rw_ok = false;
    w.S.push_back(std::move(S));
    w.T.push_back(std::move(T));
    w.Y.push_back(Y);
    w.arw.push_back(arw);
  }

  std::vector<bool> seen(n, false);
  std::size_t uni = 0;
  for (std::size_t l = 0; l <= j; ++l) {
    for (auto s : w.T[l])
      if (!seen[s]) {
        seen[s] = true;
        ++uni;
      }
    w.a.push_back(rat(static_cast<std::int64_t>(uni)));
  }
  for (std::size_t l = 0; l <= j; ++l) w.b.push_back(1 / w.a[l]);
  w.b.push_back(rat(0));
  auto a_at = [&](std::ptrdiff_t l) { return l < 0 ? rat(0) : w.a[static_cast<std::size_t>(l)]; };
  const auto J1 = static_cast<std::int64_t>(j + 1);
  Rational sum_lambda, rhs_inner;
  for (std::size_t i = 0; i <= j; ++i) {
    Rational acc;
    for (std::size_t l = 0; l + i <= j; ++l)
      acc += (w.a[l] - a_at(static_cast<std::ptrdiff_t>(l) - 1)) * (w.b[l + i] - w.b[l + i + 1]);
    const Rational lam = rat(static_cast<std::int64_t>(i + 1), J1) * acc;
    if (lam < 0) w.lambda_ok = false;
    w.lambda.push_back(lam);
    sum_lambda += lam;
    rhs_inner += lam * rat(static_cast<std::int64_t>(conv_column[i]), static_cast<std::int64_t>(i + 1));
  }
  if (sum_lambda != 1) w.lambda_ok = false;
  for (const auto& x : w.arw) w.partition_lhs += x * rat(D);
  w.partition_rhs = rat(J1) * rhs_inner;
  if (w.partition_lhs < w.partition_rhs) w.partition_ok = false;

  if (!w.all_ok()) fail(ErrorKind::WitnessViolated, "witness check failed:\n" + w.dump());
  return w;
}

struct RateDegreeReport {
  std::size_t k_tilde = 0;
  std::int64_t dim_lower = 0;
  bool dim_ok = false;
  Rational rate;        // k~ / (n k2)
  Rational rate_lower;  // k/k2 - (m+1)(Delta/k2 - 1)
  Rational rate_upper;  // k / k2, from k~ <= n k
  bool rate_ok = false;
  bool degree_applicable = false;  // C reduced with equal row degrees
  std::size_t nu_tilde = 0;
  Rational degree_ratio;  // nu(G~) / (k2 n)
  Rational degree_bound;  // min{delta(C)/k2, (m+1) delta(C)/k}
  bool degree_ok = true;

  bool all_ok() const { return dim_ok && rate_ok && degree_ok; }
};

inline RateDegreeReport ec_rate_degree_report(const ExpanderTrellisCode& etc) {
  const auto& spec = etc.spec;
  const auto n = static_cast<std::int64_t>(spec.n()), D = static_cast<std::int64_t>(spec.delta());
  const auto k = static_cast<std::int64_t>(spec.conv.k()), k2 = static_cast<std::int64_t>(spec.inner.k());
  const auto m1 = static_cast<std::int64_t>(spec.m() + 1);
  RateDegreeReport r;
  r.k_tilde = etc.k_tilde();
  r.dim_lower = etc.b.dim_lower;
  r.dim_ok = static_cast<std::int64_t>(r.k_tilde) >= r.dim_lower;
  r.rate = rat(static_cast<std::int64_t>(r.k_tilde), n * k2);
  r.rate_lower = rat(k, k2) - rat(m1) * (rat(D, k2) - rat(1));
  r.rate_upper = rat(k, k2);
  r.rate_ok = r.rate >= r.rate_lower && r.rate <= r.rate_upper;
  r.nu_tilde = etc.lifted.conv_tilde.degree_upper();
  r.degree_ratio = rat(static_cast<std::int64_t>(r.nu_tilde), k2 * n);
  r.degree_applicable = spec.conv.reduced() && spec.conv.equal_row_degrees();
  if (r.degree_applicable) {
    const auto delta = static_cast<std::int64_t>(spec.conv.degree_upper());
    r.degree_bound = std::min(rat(delta, k2), rat(m1 * delta, k));
    r.degree_ok = r.degree_ratio <= r.degree_bound;
  }
  return r;
}

struct TheoremReport {
  SpectralProfile spectral;
  Rational r, theta;
  std::size_t inner_distance = 0;
  std::size_t horizon = 0;
  DistanceProfile conv_profile;
  std::vector<std::size_t> packed_column;      // primary route, see packed_method
  std::string packed_method;
  std::vector<std::size_t> packed_column_coset;  // coset route when it is not primary (j <= 1)
  std::vector<std::size_t> packed_column_bf;     // brute force, as far as the guard allows
  bool packed_routes_agree = true;
  ColumnBoundReport column_bound;
  RateDegreeReport rate_degree;
  ClaimsReport claims;
  std::size_t witnesses = 0;
  std::optional<std::size_t> packed_free;     // d_f of the packed code
  bool free_dominates_column = true;          // d_j^c <= d_f for every j <= horizon
  std::optional<Real> packed_free_bound;      // trellis Singleton bound with the presentation degree
  bool packed_free_bound_ok = true;
  Rational relative_target;                   // 1 - k/Delta
  std::vector<Rational> relative_column;      // d_j^c / ((j+1) n)

  bool all_ok() const {
    return packed_routes_agree && column_bound.ok && rate_degree.all_ok() && free_dominates_column &&
           packed_free_bound_ok;
  }
};

struct ReportOptions {
  std::size_t horizon = 1;
  std::size_t samples = 1000;
  std::uint64_t seed = 7;
  std::uint64_t brute_guard = 1ull << 24;  // message-space cap for the brute-force route
  DistanceOptions distance;
};

/// End-to-end pipeline: assemble, measure gamma, compute distances by two
/// routes, run the claims and witness checks on sampled codewords, and
/// evaluate every lemma at the given horizon.
inline TheoremReport ec_theorem_main_report(const ExpanderTrellisCode& etc, const ReportOptions& opt = {}) {
  TheoremReport rep;
  const auto& spec = etc.spec;
  rep.horizon = opt.horizon;
  rep.spectral = xg_gamma(spec.graph);
  rep.r = rat(static_cast<std::int64_t>(spec.inner.k()), static_cast<std::int64_t>(spec.delta()));
  rep.inner_distance = spec.inner.min_distance();
  rep.theta = ec_theta(spec);
  rep.conv_profile = cc_bounds(spec.conv, opt.distance);
  rep.column_bound = ec_column_bound_check(etc, rep.spectral.gamma, rep.theta, opt.horizon, opt.distance);
  rep.packed_column = rep.column_bound.packed_column;
  rep.packed_method = rep.column_bound.method;

  // Independent routes, as far as their guards allow.
  if (opt.horizon <= 1 && rep.packed_method != "coset") {
    try {
      rep.packed_column_coset = ec_packed_column_distances_coset(etc, opt.horizon);
      if (rep.packed_column_coset != rep.packed_column) rep.packed_routes_agree = false;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BudgetExceeded) throw;
    }
  }
  DistanceOptions bf = opt.distance;
  bf.enum_guard = opt.brute_guard;
  for (std::size_t j = 0; j <= opt.horizon; ++j) {
    try {
      rep.packed_column_bf.push_back(ec_packed_column_distance_bruteforce(etc, j, bf));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BudgetExceeded) throw;
      break;
    }
    if (rep.packed_column_bf.back() != rep.packed_column[j]) rep.packed_routes_agree = false;
  }
  rep.rate_degree = ec_rate_degree_report(etc);

  const auto samples = ec_sample_messages(etc, opt.horizon, opt.samples, opt.seed);
  rep.claims = ec_verify_claims(etc, samples);
  for (const auto& msg : samples) {
    ec_encode(etc, msg);
    ec_witness_check(etc, msg, rep.column_bound.conv_column, rep.spectral.gamma, rep.theta);
    ++rep.witnesses;
  }

  try {
    const auto fd = free_distance(etc.lifted.conv_tilde, opt.distance, etc.packed_weight());
    if (fd.weight != kInfWeight) rep.packed_free = fd.weight;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BudgetExceeded) throw;
  }
  if (rep.packed_free) {
    for (auto d : rep.packed_column)
      if (d > *rep.packed_free) rep.free_dominates_column = false;
    // Packed alphabet q^{k2}, size q^{k~}, presentation degree nu(G~)/k2.
    const std::uint64_t q = spec.field()->q();
    std::uint64_t qp = 1, M = 1;
    bool fits = true;
    for (std::size_t i = 0; i < spec.inner.k(); ++i) qp *= q;
    for (std::size_t i = 0; i < etc.k_tilde() && fits; ++i) {
      if (M > (1ull << 62) / q) fits = false;
      M *= q;
    }
    if (fits && M >= 2) {
      const Real delta = Real::of(rat(static_cast<std::int64_t>(etc.lifted.conv_tilde.degree_upper()),
                                      static_cast<std::int64_t>(spec.inner.k())));
      const auto v = trellis_bound_values(qp, M, spec.n(), delta, 0);
      rep.packed_free_bound = v.free_bound;
      if (v.free_bound)
        rep.packed_free_bound_ok = leq(Real::integer(static_cast<std::int64_t>(*rep.packed_free)), *v.free_bound);
    }
  }

  rep.relative_target = rat(1) - rat(static_cast<std::int64_t>(spec.conv.k()), static_cast<std::int64_t>(spec.delta()));
  for (std::size_t j = 0; j < rep.packed_column.size(); ++j)
    rep.relative_column.push_back(rat(static_cast<std::int64_t>(rep.packed_column[j]),
                                      static_cast<std::int64_t>((j + 1) * spec.n())));
  return rep;
}

/// K_{2,2}, C generated by (1, 1) over GF(2), B2 the [2,1] parity code.
inline ConstructionSpec ec_micro_spec(bool inner_full_space = false) {
  auto f = Field::make(2, 1);
  auto conv = ConvolutionalCode::create(PolyGeneratorMatrix::from_polynomials(f, {{{1}, {1}}}));
  auto inner = inner_full_space ? LinearBlockCode::full_space(f, 2) : LinearBlockCode::single_parity_check(f, 2);
  return ConstructionSpec::make(conv, inner, xg_complete(2));
}

/// K_{5,5}, B2 the [5,4] parity code over GF(4), C the best (5,3) memory-1
/// profile found by the seeded search.
inline ConstructionSpec ec_default_spec(std::uint64_t seed = 7, std::uint64_t budget = 2000) {
  auto f = Field::make(2, 2);
  auto search = search_profile(5, 3, 1, f, budget, seed);
  return ConstructionSpec::make(search.code, LinearBlockCode::single_parity_check(f, 5), xg_complete(5));
}

}  // namespace xtrellis
