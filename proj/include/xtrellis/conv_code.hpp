#pragma once
// Convolutional codes given by polynomial generator matrices G(D) = sum G_i D^i.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <random>
#include <string>
#include <vector>

#include "xtrellis/block_code.hpp"
#include "xtrellis/matrix.hpp"
#include "xtrellis/rng.hpp"

namespace xtrellis {

struct PolyGeneratorMatrix {
  FieldPtr field;
  std::size_t n = 0, k = 0;
  std::vector<Matrix> coeffs;  // G_0 .. G_m, each k x n

  /// entries[i][j] holds the ascending D-coefficients of g_{i,j}(D).
  static PolyGeneratorMatrix from_polynomials(FieldPtr f,
                                              const std::vector<std::vector<std::vector<Elem>>>& entries) {
    require(!entries.empty() && !entries[0].empty(), ErrorKind::EmptyGenerator, "no generator entries");
    PolyGeneratorMatrix g;
    g.field = f;
    g.k = entries.size();
    g.n = entries[0].size();
    std::size_t len = 1;
    for (const auto& row : entries) {
      require(row.size() == g.n, ErrorKind::LengthMismatch, "ragged generator rows");
      for (const auto& poly : row) len = std::max(len, poly.size());
    }
    g.coeffs.assign(len, Matrix(f, g.k, g.n));
    for (std::size_t i = 0; i < g.k; ++i)
      for (std::size_t j = 0; j < g.n; ++j)
        for (std::size_t d = 0; d < entries[i][j].size(); ++d) {
          require(entries[i][j][d] < f->q(), ErrorKind::PreconditionViolated, "coefficient outside field");
          g.coeffs[d](i, j) = entries[i][j][d];
        }
    return g;
  }
};

inline constexpr std::size_t kInfWeight = std::numeric_limits<std::size_t>::max();

struct HammingWeight {
  std::size_t operator()(std::span<const Elem> block) const { return weight(block); }
};

class ConvolutionalCode {
 public:
  static ConvolutionalCode create(PolyGeneratorMatrix gen) {
    require(gen.field && gen.k > 0 && gen.n > 0 && !gen.coeffs.empty(), ErrorKind::EmptyGenerator,
            "generator has no coefficients");
    for (const auto& c : gen.coeffs)
      require(c.rows() == gen.k && c.cols() == gen.n, ErrorKind::LengthMismatch, "coefficient shape");
    while (gen.coeffs.size() > 1 && gen.coeffs.back().is_zero()) gen.coeffs.pop_back();
    require(rank(gen.coeffs[0]) == gen.k, ErrorKind::G0RankDeficient, "G_0 does not have full row rank");

    ConvolutionalCode c;
    c.gen_ = std::move(gen);
    const std::size_t k = c.gen_.k, n = c.gen_.n;
    c.row_degrees_.assign(k, 0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t d = 0; d < c.gen_.coeffs.size(); ++d)
        for (std::size_t j = 0; j < n; ++j)
          if (c.gen_.coeffs[d](i, j) != 0) c.row_degrees_[i] = d;
    c.nu_ = 0;
    for (auto v : c.row_degrees_) c.nu_ += v;
    Matrix lead(c.gen_.field, k, n);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < n; ++j) lead(i, j) = c.gen_.coeffs[c.row_degrees_[i]](i, j);
    c.reduced_ = rank(lead) == k;
    c.equal_row_degrees_ =
        std::all_of(c.row_degrees_.begin(), c.row_degrees_.end(), [&](auto v) { return v == c.row_degrees_[0]; });
    return c;
  }

  const FieldPtr& field() const noexcept { return gen_.field; }
  std::size_t n() const noexcept { return gen_.n; }
  std::size_t k() const noexcept { return gen_.k; }
  std::size_t memory() const noexcept { return gen_.coeffs.size() - 1; }
  const std::vector<std::size_t>& row_degrees() const noexcept { return row_degrees_; }
  /// nu(G), the sum of row degrees.
  std::size_t overall_constraint_length() const noexcept { return nu_; }
  /// Upper bound on the code degree; exact when reduced().
  std::size_t degree_upper() const noexcept { return nu_; }
  std::optional<std::size_t> degree() const {
    return reduced_ ? std::optional<std::size_t>(nu_) : std::nullopt;
  }
  bool reduced() const noexcept { return reduced_; }
  bool equal_row_degrees() const noexcept { return equal_row_degrees_; }
  const PolyGeneratorMatrix& generator() const noexcept { return gen_; }

  /// G_i, or the zero matrix for i > m.
  Matrix coeff(std::size_t i) const {
    return i < gen_.coeffs.size() ? gen_.coeffs[i] : Matrix(gen_.field, gen_.k, gen_.n);
  }

  /// Block-Toeplitz matrix with (c_0..c_j) = (x_0..x_j) * result.
  Matrix truncated_generator(std::size_t j) const {
    const std::size_t k = gen_.k, n = gen_.n;
    Matrix t(gen_.field, (j + 1) * k, (j + 1) * n);
    for (std::size_t bi = 0; bi <= j; ++bi)
      for (std::size_t bj = bi; bj <= j && bj - bi < gen_.coeffs.size(); ++bj) {
        const Matrix& g = gen_.coeffs[bj - bi];
        for (std::size_t r = 0; r < k; ++r)
          for (std::size_t c = 0; c < n; ++c) t(bi * k + r, bj * n + c) = g(r, c);
      }
    return t;
  }

  /// Encodes x_0..x_T (each of length k) into c_0..c_{T+m}.
  std::vector<Vec> encode(const std::vector<Vec>& messages) const {
    const std::size_t m = memory();
    std::vector<Vec> out(messages.empty() ? 0 : messages.size() + m, Vec(gen_.n, 0));
    for (std::size_t t = 0; t < messages.size(); ++t) {
      require(messages[t].size() == gen_.k, ErrorKind::LengthMismatch, "message block length");
      for (std::size_t i = 0; i <= m; ++i) {
        auto part = vec_mat(messages[t], gen_.coeffs[i]);
        axpy(*gen_.field, 1, part, out[t + i]);
      }
    }
    return out;
  }

 private:
  PolyGeneratorMatrix gen_;
  std::vector<std::size_t> row_degrees_;
  std::size_t nu_ = 0;
  bool reduced_ = false;
  bool equal_row_degrees_ = false;
};

struct DistanceOptions {
  std::uint64_t enum_guard = 1ull << 26;   // q^{k(j+1)} for exhaustive enumeration
  std::uint64_t state_guard = 1ull << 22;  // q^nu states of the encoder state graph
  unsigned threads = 1;
};

/// Controller-form state graph of an encoder: a state holds, for each row i,
/// the last nu_i input symbols of that row. Output on input x from state s is
/// x G_0 + (contribution of s), which is precomputed per state and per input.
class EncoderStateGraph {
 public:
  EncoderStateGraph(const ConvolutionalCode& code, std::uint64_t state_guard) : field_(code.field()) {
    const std::uint64_t q = field_->q();
    const std::size_t k = code.k();
    n_ = code.n();
    const auto& deg = code.row_degrees();
    std::uint64_t states = 1, inputs = 1;
    for (std::size_t i = 0; i < code.overall_constraint_length(); ++i) {
      states *= q;
      require(states <= state_guard, ErrorKind::BudgetExceeded, "encoder state count exceeds guard");
    }
    for (std::size_t i = 0; i < k; ++i) {
      inputs *= q;
      require(inputs * states <= state_guard * 1024, ErrorKind::BudgetExceeded,
              "state graph edge count exceeds guard");
    }
    num_states_ = states;
    num_inputs_ = inputs;

    // Digit layout: row i occupies digits [offset_i, offset_i + nu_i), most
    // recent input first.
    std::vector<std::size_t> offset(k, 0);
    std::size_t acc = 0;
    for (std::size_t i = 0; i < k; ++i) {
      offset[i] = acc;
      acc += deg[i];
    }
    std::vector<std::uint64_t> power(acc + 1, 1);
    for (std::size_t d = 1; d <= acc; ++d) power[d] = power[d - 1] * q;

    input_out_.assign(num_inputs_ * n_, 0);
    insert_.assign(num_inputs_, 0);
    const Matrix g0 = code.coeff(0);
    Vec x(k, 0);
    for (std::uint64_t xi = 0; xi < num_inputs_; ++xi) {
      std::uint64_t v = xi;
      for (std::size_t i = 0; i < k; ++i) {
        x[i] = static_cast<Elem>(v % q);
        v /= q;
      }
      auto out = vec_mat(x, g0);
      std::copy(out.begin(), out.end(), input_out_.begin() + xi * n_);
      std::uint64_t ins = 0;
      for (std::size_t i = 0; i < k; ++i)
        if (deg[i] > 0) ins += x[i] * power[offset[i]];
      insert_[xi] = ins;
    }

    state_out_.assign(num_states_ * n_, 0);
    shifted_.assign(num_states_, 0);
    std::vector<Elem> digits(acc, 0);
    std::vector<Matrix> coeffs;
    for (std::size_t d = 0; d <= code.memory(); ++d) coeffs.push_back(code.coeff(d));
    for (std::uint64_t s = 0; s < num_states_; ++s) {
      std::uint64_t v = s;
      for (std::size_t d = 0; d < acc; ++d) {
        digits[d] = static_cast<Elem>(v % q);
        v /= q;
      }
      std::span<Elem> out(state_out_.data() + s * n_, n_);
      std::uint64_t sh = 0;
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t lag = 1; lag <= deg[i]; ++lag) {
          const Elem sym = digits[offset[i] + lag - 1];
          axpy(*field_, sym, coeffs[lag].row(i), out);
          if (lag < deg[i]) sh += sym * power[offset[i] + lag];
        }
      }
      shifted_[s] = sh;
    }
  }

  std::uint64_t num_states() const noexcept { return num_states_; }
  std::uint64_t num_inputs() const noexcept { return num_inputs_; }
  std::size_t n() const noexcept { return n_; }
  std::uint64_t next(std::uint64_t s, std::uint64_t x) const noexcept { return shifted_[s] + insert_[x]; }

  /// Writes the output block for (s, x) into out.
  void output(std::uint64_t s, std::uint64_t x, std::span<Elem> out) const noexcept {
    const Elem* a = input_out_.data() + x * n_;
    const Elem* b = state_out_.data() + s * n_;
    for (std::size_t i = 0; i < n_; ++i) out[i] = field_->add(a[i], b[i]);
  }

 private:
  FieldPtr field_;
  std::size_t n_ = 0;
  std::uint64_t num_states_ = 1, num_inputs_ = 1;
  std::vector<Elem> input_out_, state_out_;
  std::vector<std::uint64_t> insert_, shifted_;
};

/// d_0^c .. d_upto^c by dynamic programming over the state graph, starting
/// from the zero state with a nonzero first input. `blockw` maps an output
/// block to its weight (Hamming by default).
template <class BlockWeight = HammingWeight>
std::vector<std::size_t> column_distances(const ConvolutionalCode& code, std::size_t upto,
                                          const DistanceOptions& opt = {}, BlockWeight blockw = {}) {
  const EncoderStateGraph sg(code, opt.state_guard);
  const std::uint64_t S = sg.num_states(), X = sg.num_inputs();
  std::vector<std::size_t> dist(S, kInfWeight), next(S, kInfWeight);
  Vec out(sg.n());
  for (std::uint64_t x = 1; x < X; ++x) {
    sg.output(0, x, out);
    const auto ns = sg.next(0, x);
    dist[ns] = std::min(dist[ns], blockw(out));
  }
  std::vector<std::size_t> profile;
  profile.push_back(*std::min_element(dist.begin(), dist.end()));
  for (std::size_t t = 1; t <= upto; ++t) {
    std::fill(next.begin(), next.end(), kInfWeight);
    for (std::uint64_t s = 0; s < S; ++s) {
      if (dist[s] == kInfWeight) continue;
      for (std::uint64_t x = 0; x < X; ++x) {
        sg.output(s, x, out);
        const auto ns = sg.next(s, x);
        const std::size_t w = dist[s] + blockw(out);
        if (w < next[ns]) next[ns] = w;
      }
    }
    dist.swap(next);
    profile.push_back(*std::min_element(dist.begin(), dist.end()));
  }
  return profile;
}

/// Exhaustive d_j^c over x_0 != 0 and free x_1..x_j; independent of the state
/// graph and used to cross-check it.
template <class BlockWeight = HammingWeight>
std::size_t column_distance_enumerate(const ConvolutionalCode& code, std::size_t j,
                                      const DistanceOptions& opt = {}, BlockWeight blockw = {}) {
  const std::uint64_t q = code.field()->q();
  const std::size_t k = code.k(), n = code.n();
  std::uint64_t space = 1;
  for (std::size_t i = 0; i < k * (j + 1); ++i) {
    space *= q;
    require(space <= opt.enum_guard, ErrorKind::BudgetExceeded, "q^{k(j+1)} exceeds enumeration guard");
  }
  const Matrix t = code.truncated_generator(j);
  const Field& f = *code.field();
  const std::size_t len = k * (j + 1);
  std::size_t best = kInfWeight;
  Vec word(t.cols(), 0);
  std::vector<Elem> digits(len, 0);
  auto block_weight_sum = [&]() {
    std::size_t w = 0;
    for (std::size_t b = 0; b <= j; ++b) w += blockw(std::span<const Elem>(word.data() + b * n, n));
    return w;
  };
  while (true) {
    bool x0_nonzero = false;
    for (std::size_t i = 0; i < k; ++i) x0_nonzero |= digits[i] != 0;
    if (x0_nonzero) best = std::min(best, block_weight_sum());
    std::size_t pos = 0;
    while (pos < len) {
      const Elem old = digits[pos];
      const Elem nx = (old + 1 == q) ? 0 : old + 1;
      axpy(f, f.sub(nx, old), t.row(pos), word);
      digits[pos] = nx;
      if (nx != 0) break;
      ++pos;
    }
    if (pos == len) break;
  }
  return best;
}

/// d_j^c: state-graph DP when the encoder fits the state guard, else
/// exhaustive enumeration when that fits, else BudgetExceeded.
inline std::size_t column_distance(const ConvolutionalCode& code, std::size_t j, const DistanceOptions& opt = {}) {
  try {
    return column_distances(code, j, opt).back();
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BudgetExceeded) throw;
  }
  return column_distance_enumerate(code, j, opt);
}

struct FreeDistanceResult {
  std::size_t weight = kInfWeight;
  bool catastrophic = false;  // zero-weight cycle away from the zero state
};

/// Minimum weight over codewords of finite-support messages: shortest path
/// that leaves the zero state on a nonzero input and first returns to it.
template <class BlockWeight = HammingWeight>
FreeDistanceResult free_distance(const ConvolutionalCode& code, const DistanceOptions& opt = {},
                                 BlockWeight blockw = {}) {
  const EncoderStateGraph sg(code, opt.state_guard);
  const std::uint64_t S = sg.num_states(), X = sg.num_inputs();
  using Item = std::pair<std::size_t, std::uint64_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  std::vector<std::size_t> dist(S, kInfWeight);
  Vec out(sg.n());
  for (std::uint64_t x = 1; x < X; ++x) {
    sg.output(0, x, out);
    const auto ns = sg.next(0, x);
    const auto w = blockw(out);
    if (w < dist[ns]) {
      dist[ns] = w;
      pq.push({w, ns});
    }
  }
  FreeDistanceResult res;
  while (!pq.empty()) {
    auto [d, s] = pq.top();
    pq.pop();
    if (d != dist[s]) continue;
    if (s == 0) {
      res.weight = d;
      break;
    }
    for (std::uint64_t x = 0; x < X; ++x) {
      sg.output(s, x, out);
      const auto ns = sg.next(s, x);
      const auto w = d + blockw(out);
      if (w < dist[ns]) {
        dist[ns] = w;
        pq.push({w, ns});
      }
    }
  }
  // Zero-weight cycles among nonzero states: peel states with no zero-weight
  // successor inside the remaining set; anything left lies on or leads into
  // such a cycle.
  if (S > 1) {
    std::vector<std::vector<std::uint64_t>> pred(S);
    std::vector<std::size_t> outdeg(S, 0);
    for (std::uint64_t s = 1; s < S; ++s)
      for (std::uint64_t x = 0; x < X; ++x) {
        const auto ns = sg.next(s, x);
        if (ns == 0) continue;
        sg.output(s, x, out);
        if (blockw(out) == 0) {
          ++outdeg[s];
          pred[ns].push_back(s);
        }
      }
    std::vector<std::uint64_t> stack;
    for (std::uint64_t s = 1; s < S; ++s)
      if (outdeg[s] == 0) stack.push_back(s);
    std::size_t removed = stack.size();
    while (!stack.empty()) {
      const auto s = stack.back();
      stack.pop_back();
      for (auto p : pred[s])
        if (--outdeg[p] == 0) {
          stack.push_back(p);
          ++removed;
        }
    }
    res.catastrophic = removed < S - 1;
  }
  return res;
}

struct DistanceProfile {
  std::vector<std::size_t> column;
  std::size_t free = 0;
  bool catastrophic = false;
  std::size_t delta = 0;
  bool delta_exact = false;
  std::size_t L = 0, J = 0;
  std::size_t eq1_rhs = 0;               // Singleton-type bound on d_f
  std::vector<std::size_t> eq2_rhs;      // (n-k)(j+1)+1 per computed j
  bool is_mds = false, is_mdp = false, is_smds = false;
  bool chain_holds = true;
  bool monotone = true;  // d_j <= d_{j+1} <= d_j + n and d_j <= d_f
};

namespace detail {

struct ProfileFlags {
  std::size_t L, J, eq1;
  bool mds, mdp, smds;
  bool operator==(const ProfileFlags&) const = default;
};

inline ProfileFlags profile_flags(std::size_t n, std::size_t k, std::size_t delta,
                                  const std::vector<std::size_t>& column, std::size_t free) {
  ProfileFlags f{};
  if (n > k) {
    f.L = delta / k + delta / (n - k);
    f.J = delta / k + (delta + (n - k) - 1) / (n - k);
  } else {
    f.L = f.J = 0;  // n = k: Eq. (2) is 1 at every j and there is no profile to speak of
  }
  f.eq1 = (n - k) * (delta / k + 1) + delta + 1;
  f.mds = free == f.eq1;
  f.mdp = f.L < column.size() && column[f.L] == (n - k) * (f.L + 1) + 1;
  f.smds = f.J < column.size() && column[f.J] == f.eq1;
  return f;
}

}  // namespace detail

/// True iff whenever column[j] meets (n-k)(j+1)+1, every earlier entry meets
/// its own version of that bound.
inline bool column_chain_holds(std::size_t n, std::size_t k, const std::vector<std::size_t>& column) {
  for (std::size_t j = 0; j < column.size(); ++j) {
    if (column[j] != (n - k) * (j + 1) + 1) continue;
    for (std::size_t i = 0; i < j; ++i)
      if (column[i] != (n - k) * (i + 1) + 1) return false;
  }
  return true;
}

/// Column distances up to max(L, J), free distance, Singleton-type bounds and
/// MDS/MDP/strongly-MDS flags. For a non-reduced generator the flags are
/// evaluated for every degree in [0, nu(G)]; DegreeUnknown if they disagree.
inline DistanceProfile cc_bounds(const ConvolutionalCode& code, const DistanceOptions& opt = {}) {
  const std::size_t n = code.n(), k = code.k();
  DistanceProfile p;
  p.delta = code.degree_upper();
  p.delta_exact = code.reduced();
  const auto top = detail::profile_flags(n, k, p.delta, {}, 0);
  const std::size_t horizon = std::max(top.L, top.J);
  p.column = column_distances(code, horizon, opt);
  const auto fd = free_distance(code, opt);
  p.free = fd.weight;
  p.catastrophic = fd.catastrophic;
  for (std::size_t j = 0; j < p.column.size(); ++j) p.eq2_rhs.push_back((n - k) * (j + 1) + 1);
  p.chain_holds = column_chain_holds(n, k, p.column);
  for (std::size_t j = 0; j < p.column.size(); ++j) {
    if (p.column[j] > p.free) p.monotone = false;
    if (j + 1 < p.column.size() && (p.column[j + 1] < p.column[j] || p.column[j + 1] > p.column[j] + n))
      p.monotone = false;
  }
  const auto flags = detail::profile_flags(n, k, p.delta, p.column, p.free);
  if (!p.delta_exact) {
    for (std::size_t d = 0; d < p.delta; ++d)
      if (!(detail::profile_flags(n, k, d, p.column, p.free) == flags))
        fail(ErrorKind::DegreeUnknown, "generator is not reduced and the verdicts depend on the true degree");
  }
  p.L = flags.L;
  p.J = flags.J;
  p.eq1_rhs = flags.eq1;
  p.is_mds = flags.mds;
  p.is_mdp = flags.mdp;
  p.is_smds = flags.smds;
  return p;
}

struct SearchResult {
  ConvolutionalCode code;
  std::vector<std::size_t> profile;  // d_0^c .. d_L^c
  std::size_t L = 0;
  std::uint64_t examined = 0;  // candidates drawn or enumerated
  std::uint64_t valid = 0;     // with full-rank G_0 and G_m
  std::uint64_t mdp_count = 0;
  bool all_chains_hold = true;
  bool exhaustive = false;
};

/// Searches (n, k) generators of memory m whose G_0 and G_m both have full
/// rank (so the generator is reduced with all row degrees m), maximizing
/// (d_0^c, ..., d_L^c) lexicographically with L = m + floor(km/(n-k)). Ties
/// go to the lexicographically smallest serialized (G_0, ..., G_m). The whole
/// space is enumerated when it fits in the budget; otherwise `budget`
/// candidates are drawn from a generator seeded with `seed`.
inline SearchResult search_profile(std::size_t n, std::size_t k, std::size_t m, FieldPtr field,
                                   std::uint64_t budget, std::uint64_t seed = 7,
                                   const DistanceOptions& opt = {}) {
  require(budget > 0, ErrorKind::NoneFound, "search budget is zero");
  require(k >= 1 && k <= n, ErrorKind::PreconditionViolated, "need 1 <= k <= n");
  const std::uint64_t q = field->q();
  const std::size_t len = k * n * (m + 1);
  std::uint64_t space = 1;
  bool fits = true;
  for (std::size_t i = 0; i < len && fits; ++i) {
    if (space > budget / q) fits = false;
    space *= q;
  }
  const std::size_t L = (n > k) ? m + (k * m) / (n - k) : 0;

  SplitMix rng(seed);
  std::optional<SearchResult> best;
  std::vector<Elem> best_ser;
  std::uint64_t examined = 0, valid = 0, mdp = 0;
  bool chains = true;
  std::vector<Elem> ser(len, 0);
  const std::uint64_t total = fits ? space : budget;
  for (std::uint64_t it = 0; it < total; ++it) {
    if (fits) {
      // Big-endian digits: enumeration order is lexicographic order.
      std::uint64_t v = it;
      for (std::size_t i = len; i-- > 0;) {
        ser[i] = static_cast<Elem>(v % q);
        v /= q;
      }
    } else {
      for (auto& s : ser) s = static_cast<Elem>(rng.below(q));
    }
    ++examined;
    PolyGeneratorMatrix g;
    g.field = field;
    g.n = n;
    g.k = k;
    for (std::size_t d = 0; d <= m; ++d)
      g.coeffs.emplace_back(field, k, n,
                            std::vector<Elem>(ser.begin() + d * k * n, ser.begin() + (d + 1) * k * n));
    if (rank(g.coeffs[0]) != k || rank(g.coeffs[m]) != k) continue;
    ++valid;
    auto code = ConvolutionalCode::create(g);
    auto prof = column_distances(code, L, opt);
    chains = chains && column_chain_holds(n, k, prof);
    if (prof[L] == (n - k) * (L + 1) + 1) ++mdp;
    const bool better = !best || prof > best->profile || (prof == best->profile && ser < best_ser);
    if (better) {
      best = SearchResult{code, prof, L, 0, 0, 0, true, fits};
      best_ser = ser;
    }
  }
  require(best.has_value(), ErrorKind::NoneFound, "no candidate with full-rank G_0 and G_m");
  best->examined = examined;
  best->valid = valid;
  best->mdp_count = mdp;
  best->all_chains_hold = chains;
  best->exhaustive = fits;
  return *best;
}

}  // namespace xtrellis
