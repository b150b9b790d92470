#pragma once
// File formats and report serialization.
//
//   field   {"p": 2, "e": 2, "modulus": [1, 1, 1]}        modulus optional, ascending
//   block   {"field": {...}, "generator": [[...], ...]}
//           or {"field": {...}, "type": "parity" | "repetition" | "full", "n": 5}
//   conv    {"field": {...}, "n": 2, "k": 1, "G": [[[1, 0, 1], [1, 1, 1]]]}
//           G[i][j] holds the ascending D-coefficients of g_ij(D)
//           or {"field": {...}, "search": {"n": 5, "k": 3, "m": 1, "budget": 2000, "seed": 7}}
//   graph   text: "n degree", then n*degree lines "s t" (1-indexed, file order = edge order)
//           or JSON {"type": "complete", "n": 5} / {"type": "random", "n": 6, "degree": 3, "seed": 1}
//   trellis text: "q n M V", then one line per edge "src dst sym_1 ... sym_n";
//           states 0-based, initial state 0, file order = presentation order
//   construction spec JSON: {"conv": ..., "inner": ..., "graph": ...}, each an
//           inline object or a path relative to the spec file.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "xtrellis/construction.hpp"

namespace xtrellis::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchema = 1;

[[noreturn]] inline void parse_fail(const std::string& msg) { fail(ErrorKind::InputParseError, msg); }

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) parse_fail("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Json parse_json_text(const std::string& text, const std::string& where) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    parse_fail(where + ": " + e.what());
  }
}

inline Json load_json(const std::filesystem::path& p) { return parse_json_text(read_file(p), p.string()); }

namespace detail {

template <class T>
T get(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) parse_fail(where + ": missing \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    parse_fail(where + ": bad \"" + key + "\": " + e.what());
  }
}

// An inline object, or a string naming a file relative to `base`.
inline Json resolve(const Json& j, const std::filesystem::path& base) {
  if (j.is_string()) return load_json(base / j.get<std::string>());
  return j;
}

}  // namespace detail

inline FieldPtr field_from_json(const Json& j) {
  const auto p = detail::get<std::uint32_t>(j, "p", "field");
  const auto e = j.contains("e") ? detail::get<std::uint32_t>(j, "e", "field") : 1u;
  std::optional<std::vector<std::uint32_t>> mod;
  if (j.contains("modulus")) mod = detail::get<std::vector<std::uint32_t>>(j, "modulus", "field");
  return Field::make(p, e, mod);
}

inline Json field_to_json(const Field& f) {
  return Json{{"p", f.p()}, {"e", f.e()}, {"q", f.q()}, {"modulus", f.modulus()}, {"primitive", f.primitive()}};
}

inline LinearBlockCode block_from_json(const Json& j) {
  const auto f = field_from_json(detail::get<Json>(j, "field", "block code"));
  if (j.contains("type")) {
    const auto type = detail::get<std::string>(j, "type", "block code");
    const auto n = detail::get<std::size_t>(j, "n", "block code");
    if (type == "parity") return LinearBlockCode::single_parity_check(f, n);
    if (type == "repetition") return LinearBlockCode::repetition(f, n);
    if (type == "full") return LinearBlockCode::full_space(f, n);
    parse_fail("block code: unknown type \"" + type + "\"");
  }
  const auto rows = detail::get<std::vector<std::vector<Elem>>>(j, "generator", "block code");
  if (rows.empty() || rows[0].empty()) parse_fail("block code: empty generator");
  for (const auto& r : rows)
    if (r.size() != rows[0].size()) parse_fail("block code: ragged generator");
  for (const auto& r : rows)
    for (auto x : r)
      if (x >= f->q()) parse_fail("block code: symbol outside the field");
  return LinearBlockCode::from_generator(Matrix::from_rows(f, rows, rows[0].size()));
}

inline ConvolutionalCode conv_from_json(const Json& j, const DistanceOptions& opt = {}) {
  const auto f = field_from_json(detail::get<Json>(j, "field", "conv code"));
  if (j.contains("search")) {
    const auto& s = j.at("search");
    const auto n = detail::get<std::size_t>(s, "n", "search");
    const auto k = detail::get<std::size_t>(s, "k", "search");
    const auto m = detail::get<std::size_t>(s, "m", "search");
    const auto budget = s.contains("budget") ? detail::get<std::uint64_t>(s, "budget", "search") : 2000;
    const auto seed = s.contains("seed") ? detail::get<std::uint64_t>(s, "seed", "search") : 7;
    return search_profile(n, k, m, f, budget, seed, opt).code;
  }
  const auto G = detail::get<std::vector<std::vector<std::vector<Elem>>>>(j, "G", "conv code");
  auto pg = PolyGeneratorMatrix::from_polynomials(f, G);
  if (j.contains("n") && detail::get<std::size_t>(j, "n", "conv code") != pg.n)
    parse_fail("conv code: \"n\" disagrees with G");
  if (j.contains("k") && detail::get<std::size_t>(j, "k", "conv code") != pg.k)
    parse_fail("conv code: \"k\" disagrees with G");
  return ConvolutionalCode::create(std::move(pg));
}

inline Json conv_to_json(const ConvolutionalCode& c) {
  Json G = Json::array();
  for (std::size_t i = 0; i < c.k(); ++i) {
    Json row = Json::array();
    for (std::size_t jj = 0; jj < c.n(); ++jj) {
      std::vector<Elem> poly;
      for (std::size_t d = 0; d <= c.memory(); ++d) poly.push_back(c.coeff(d)(i, jj));
      row.push_back(poly);
    }
    G.push_back(row);
  }
  const auto& f = *c.field();
  return Json{{"field", {{"p", f.p()}, {"e", f.e()}}}, {"n", c.n()}, {"k", c.k()}, {"G", G}};
}

inline BipartiteGraph graph_from_text(const std::string& text, const std::string& where = "graph") {
  std::istringstream in(text);
  std::size_t n = 0, degree = 0;
  if (!(in >> n >> degree)) parse_fail(where + ": missing header \"n degree\"");
  std::vector<GraphEdge> edges;
  std::size_t s = 0, t = 0;
  while (in >> s >> t) {
    if (s < 1 || t < 1 || s > n || t > n) parse_fail(where + ": vertex index out of range");
    edges.push_back({s - 1, t - 1});
  }
  if (!in.eof()) parse_fail(where + ": malformed edge line");
  if (edges.size() != n * degree) parse_fail(where + ": expected n*degree edges");
  try {
    return BipartiteGraph::make(n, degree, std::move(edges));
  } catch (const Error& e) {
    parse_fail(where + ": " + e.what());
  }
}

inline std::string graph_to_text(const BipartiteGraph& g) {
  std::ostringstream out;
  out << g.n() << ' ' << g.degree() << '\n';
  for (const auto& e : g.edges()) out << e.left + 1 << ' ' << e.right + 1 << '\n';
  return out.str();
}

inline BipartiteGraph graph_from_json(const Json& j) {
  const auto type = detail::get<std::string>(j, "type", "graph");
  const auto n = detail::get<std::size_t>(j, "n", "graph");
  if (type == "complete") return xg_complete(n);
  if (type == "random")
    return xg_random_regular(n, detail::get<std::size_t>(j, "degree", "graph"),
                             j.contains("seed") ? detail::get<std::uint64_t>(j, "seed", "graph") : 7);
  parse_fail("graph: unknown type \"" + type + "\"");
}

// A graph entry in a spec: inline JSON, a JSON file, or a text edge list.
inline BipartiteGraph graph_from_entry(const Json& j, const std::filesystem::path& base) {
  if (j.is_string()) {
    const auto path = base / j.get<std::string>();
    const auto text = read_file(path);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return graph_from_json(parse_json_text(text, path.string()));
    return graph_from_text(text, path.string());
  }
  return graph_from_json(j);
}

inline TrellisCode trellis_from_text(const std::string& text, const std::string& where = "trellis") {
  std::istringstream in(text);
  std::uint32_t q = 0;
  std::size_t n = 0, M = 0, V = 0;
  if (!(in >> q >> n >> M >> V)) parse_fail(where + ": missing header \"q n M V\"");
  if (q < 2 || n < 1 || V < 1) parse_fail(where + ": header values out of range");
  LabeledDigraph g;
  g.q = q;
  g.n = n;
  g.num_states = V;
  std::size_t src = 0;
  while (in >> src) {
    TrellisEdge e;
    e.src = src;
    if (!(in >> e.dst)) parse_fail(where + ": truncated edge line");
    e.label.resize(n);
    for (auto& sym : e.label)
      if (!(in >> sym)) parse_fail(where + ": truncated edge label");
    if (e.src >= V || e.dst >= V) parse_fail(where + ": state index out of range");
    for (auto sym : e.label)
      if (sym >= q) parse_fail(where + ": label symbol >= q");
    g.edges.push_back(std::move(e));
  }
  if (!in.eof()) parse_fail(where + ": malformed edge line");
  auto t = TrellisCode::validate(std::move(g), 0);
  if (t.M() != M) parse_fail(where + ": header M disagrees with the out-degree of state 0");
  return t;
}

inline std::string trellis_to_text(const TrellisCode& t) {
  std::ostringstream out;
  const auto& g = t.graph();
  out << g.q << ' ' << g.n << ' ' << t.M() << ' ' << g.num_states << '\n';
  for (const auto& e : g.edges) {
    out << e.src << ' ' << e.dst;
    for (auto s : e.label) out << ' ' << s;
    out << '\n';
  }
  return out.str();
}

struct LoadedSpec {
  ConstructionSpec spec;
  Tamper tamper = Tamper::None;
};

inline Tamper tamper_from_string(const std::string& s) {
  if (s == "none") return Tamper::None;
  if (s == "rank") return Tamper::RankDeficientG0;
  if (s == "perturb") return Tamper::PerturbG0;
  parse_fail("unknown tamper mode \"" + s + "\"");
}

/// "builtin:micro", "builtin:default", or a JSON spec file.
inline LoadedSpec load_spec(const std::string& ref, const DistanceOptions& opt = {}) {
  if (ref == "builtin:micro") return {ec_micro_spec(), Tamper::None};
  if (ref == "builtin:default") return {ec_default_spec(), Tamper::None};
  const std::filesystem::path path(ref);
  const Json j = load_json(path);
  const auto base = path.parent_path();
  try {
    auto conv = conv_from_json(detail::resolve(detail::get<Json>(j, "conv", "spec"), base), opt);
    auto inner = block_from_json(detail::resolve(detail::get<Json>(j, "inner", "spec"), base));
    auto graph = graph_from_entry(detail::get<Json>(j, "graph", "spec"), base);
    LoadedSpec ls{ConstructionSpec::make(std::move(conv), std::move(inner), std::move(graph)), Tamper::None};
    if (j.contains("tamper")) ls.tamper = tamper_from_string(detail::get<std::string>(j, "tamper", "spec"));
    return ls;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InputParseError) throw;
    parse_fail(ref + ": " + e.what());
  }
}

// ---------------------------------------------------------------- reports

inline std::string rstr(const Rational& r) { return to_string(r); }

inline Json real_to_json(const Real& r) {
  Json j{{"value", r.approx}};
  if (r.exact) j["exact"] = rstr(*r.exact);
  j["floor"] = r.floor();
  return j;
}

inline Json to_json(const DistanceProfile& p) {
  return Json{{"column", p.column},
              {"free", p.free},
              {"catastrophic", p.catastrophic},
              {"degree", p.delta},
              {"degree_exact", p.delta_exact},
              {"L", p.L},
              {"J", p.J},
              {"free_bound", p.eq1_rhs},
              {"column_bounds", p.eq2_rhs},
              {"mds", p.is_mds},
              {"mdp", p.is_mdp},
              {"strongly_mds", p.is_smds},
              {"chain_holds", p.chain_holds},
              {"monotone", p.monotone}};
}

inline Json to_json(const TrellisFlags& f) {
  return Json{{"M", f.M},
              {"m_regular", f.m_regular},
              {"deterministic", f.deterministic},
              {"irreducible", f.irreducible},
              {"lossless", f.lossless}};
}

inline Json to_json(const TrellisBoundValues& v) {
  Json j{{"log_q_M", real_to_json(v.log_q_M)}, {"degree", real_to_json(v.delta)}};
  j["free_bound"] = v.free_bound ? real_to_json(*v.free_bound) : Json();
  j["column_bound_small"] = real_to_json(v.column_bound_small);
  j["column_bound"] = real_to_json(v.column_bound);
  return j;
}

inline Json to_json(const BoundReport& r) {
  Json j{{"j", r.j}, {"bounds", to_json(r.values)}, {"column", r.column}};
  j["free"] = r.free ? Json(*r.free) : Json();
  j["small_column_applicable"] = r.small_column_applicable;
  j["free_ok"] = r.free_ok;
  j["small_column_ok"] = r.small_column_ok;
  j["column_ok"] = r.column_ok;
  j["column_chain_ok"] = r.column_chain_ok;
  return j;
}

inline Json to_json(const SpectralProfile& s) {
  return Json{{"degree", s.degree}, {"sigma1", s.sigma1}, {"sigma2", s.sigma2},
              {"gamma", s.gamma},   {"method", s.method}, {"residual", s.residual}};
}

inline Json rationals(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& r : v) a.push_back(rstr(r));
  return a;
}

inline Json to_json(const ColumnBoundReport& r) {
  Json bounds = Json::array();
  for (const auto& b : r.bound) bounds.push_back(b ? Json(*b) : Json());
  return Json{{"j", r.j},
              {"method", r.method},
              {"conv_column", r.conv_column},
              {"packed_column", r.packed_column},
              {"achieved", rationals(r.achieved)},
              {"min_term", rationals(r.min_term)},
              {"bound", bounds},
              {"ok", r.ok}};
}

inline Json to_json(const RateDegreeReport& r) {
  Json j{{"k_tilde", r.k_tilde},
         {"dim_lower", r.dim_lower},
         {"dim_ok", r.dim_ok},
         {"rate", rstr(r.rate)},
         {"rate_lower", rstr(r.rate_lower)},
         {"rate_upper", rstr(r.rate_upper)},
         {"rate_ok", r.rate_ok},
         {"degree_applicable", r.degree_applicable},
         {"nu_tilde", r.nu_tilde},
         {"degree_ratio", rstr(r.degree_ratio)}};
  j["degree_bound"] = r.degree_applicable ? Json(rstr(r.degree_bound)) : Json();
  j["degree_ok"] = r.degree_ok;
  return j;
}

inline Json to_json(const ClaimsReport& c) {
  return Json{{"codewords", c.codewords}, {"left_checks", c.left_checks}, {"right_checks", c.right_checks}};
}

inline Json to_json(const WitnessDecomposition& w) {
  Json steps = Json::array();
  for (std::size_t i = 0; i <= w.j; ++i) {
    Json S = Json::array(), T = Json::array();
    for (auto s : w.S[i]) S.push_back(s + 1);
    for (auto t : w.T[i]) T.push_back(t + 1);
    steps.push_back(Json{{"S", S}, {"T", T}, {"Y", w.Y[i]}, {"arw", rstr(w.arw[i])}, {"lambda", rstr(w.lambda[i])}});
  }
  return Json{{"j", w.j},
              {"steps", steps},
              {"a", rationals(w.a)},
              {"b", rationals(w.b)},
              {"partition_lhs", rstr(w.partition_lhs)},
              {"partition_rhs", rstr(w.partition_rhs)},
              {"rw_ok", w.rw_ok},
              {"lambda_ok", w.lambda_ok},
              {"partition_ok", w.partition_ok},
              {"edge_ok", w.edge_ok}};
}

inline Json to_json(const TheoremReport& r) {
  Json j;
  j["spectral"] = to_json(r.spectral);
  j["r"] = rstr(r.r);
  j["theta"] = rstr(r.theta);
  j["inner_distance"] = r.inner_distance;
  j["horizon"] = r.horizon;
  j["conv_profile"] = to_json(r.conv_profile);
  j["packed_column"] = r.packed_column;
  j["packed_method"] = r.packed_method;
  j["packed_column_coset"] = r.packed_column_coset;
  j["packed_column_bruteforce"] = r.packed_column_bf;
  j["packed_routes_agree"] = r.packed_routes_agree;
  j["column_bound"] = to_json(r.column_bound);
  j["rate_degree"] = to_json(r.rate_degree);
  j["claims"] = to_json(r.claims);
  j["witnesses_checked"] = r.witnesses;
  j["packed_free"] = r.packed_free ? Json(*r.packed_free) : Json();
  j["free_dominates_column"] = r.free_dominates_column;
  j["packed_free_bound"] = r.packed_free_bound ? real_to_json(*r.packed_free_bound) : Json();
  j["packed_free_bound_ok"] = r.packed_free_bound_ok;
  j["relative_target"] = rstr(r.relative_target);
  j["relative_column"] = rationals(r.relative_column);
  j["all_ok"] = r.all_ok();
  return j;
}

// ---------------------------------------------------------------- output

/// key,value lines with nested keys joined by '.', arrays of scalars joined by ';'.
inline void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  auto scalar = [](const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return std::string("-");
    return v.dump();
  };
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array()) {
    const bool flat = std::all_of(j.begin(), j.end(), [](const Json& v) { return v.is_primitive(); });
    if (flat) {
      std::string s;
      for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ";" : "") + scalar(j[i]);
      out.emplace_back(prefix, s);
    } else {
      for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
    }
  } else {
    out.emplace_back(prefix, scalar(j));
  }
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char c : s) o += c == '"' ? std::string("\"\"") : std::string(1, c);
  return o + "\"";
}

inline std::string render(const Json& j, const std::string& format) {
  if (format == "json") return j.dump(2) + "\n";
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(j, "", rows);
  std::ostringstream out;
  if (format == "csv") {
    out << "key,value\n";
    for (const auto& [k, v] : rows) out << csv_escape(k) << ',' << csv_escape(v) << '\n';
    return out.str();
  }
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.first.size());
  for (const auto& [k, v] : rows) out << k << std::string(width - k.size() + 2, ' ') << v << '\n';
  return out.str();
}

/// CSV table of a distance profile: j, achieved value, bound.
inline std::string profile_csv(const std::vector<std::size_t>& column, const std::vector<std::size_t>& bound) {
  std::ostringstream out;
  out << "j,column_distance,bound\n";
  for (std::size_t j = 0; j < column.size(); ++j) {
    out << j << ',' << column[j] << ',';
    if (j < bound.size()) out << bound[j];
    out << '\n';
  }
  return out.str();
}

}  // namespace xtrellis::io
