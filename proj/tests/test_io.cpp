#include <gtest/gtest.h>

#include <functional>

#include "xtrellis/io.hpp"

using namespace xtrellis;

namespace {

const std::string kData = XTRELLIS_DATA_DIR;

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::UsageError;
}

TEST(Io, ConvRoundTrip) {
  const auto c = io::conv_from_json(io::load_json(kData + "/g.json"));
  EXPECT_EQ(c.n(), 2u);
  EXPECT_EQ(c.k(), 1u);
  EXPECT_EQ(c.memory(), 2u);
  const auto again = io::conv_from_json(io::conv_to_json(c));
  for (std::size_t d = 0; d <= 2; ++d) EXPECT_EQ(again.coeff(d), c.coeff(d));
}

TEST(Io, BlockCodes) {
  EXPECT_EQ(io::block_from_json(io::load_json(kData + "/hamming7.json")).min_distance(), 3u);
  const auto p = io::block_from_json(io::load_json(kData + "/parity5_gf4.json"));
  EXPECT_EQ(p.k(), 4u);
  EXPECT_EQ(p.field()->q(), 4u);
  EXPECT_EQ(kind_of([] { io::block_from_json(io::Json::parse(R"({"field": {"p": 2}, "type": "golay", "n": 3})")); }),
            ErrorKind::InputParseError);
  EXPECT_EQ(kind_of([] { io::block_from_json(io::Json::parse(R"({"field": {"p": 2}, "generator": [[1, 2]]})")); }),
            ErrorKind::InputParseError);
}

TEST(Io, GraphText) {
  const auto g = xg_random_regular(6, 3, 2);
  const auto text = io::graph_to_text(g);
  const auto back = io::graph_from_text(text);
  EXPECT_EQ(back.edges(), g.edges());
  EXPECT_EQ(io::graph_from_text(io::read_file(kData + "/c6.graph")).edges(), xg_cycle(3).edges());
  EXPECT_EQ(kind_of([] { io::graph_from_text("2 2\n1 1\n1 2\n2 1\n"); }), ErrorKind::InputParseError);
  EXPECT_EQ(kind_of([] { io::graph_from_text("2 1\n1 1\n3 2\n"); }), ErrorKind::InputParseError);
  EXPECT_EQ(kind_of([] { io::graph_from_text("2 1\n1 1\n1 2\n"); }), ErrorKind::InputParseError);
}

TEST(Io, TrellisText) {
  const auto t = io::trellis_from_text(io::read_file(kData + "/conv_1_5_7.trellis"));
  EXPECT_EQ(t.num_states(), 4u);
  EXPECT_EQ(tc_column_distances(t, 5), (std::vector<std::size_t>{2, 3, 3, 4, 4, 5}));
  const auto again = io::trellis_from_text(io::trellis_to_text(t));
  EXPECT_EQ(io::trellis_to_text(again), io::trellis_to_text(t));
  const auto nd = io::trellis_from_text(io::read_file(kData + "/nondeterministic.trellis"));
  EXPECT_FALSE(nd.flags().deterministic);
  EXPECT_EQ(kind_of([] { io::trellis_from_text("2 1 3 1\n0 0 0\n0 0 1\n"); }), ErrorKind::InputParseError);
  EXPECT_EQ(kind_of([] { io::trellis_from_text("2 1 1 1\n0 0 2\n"); }), ErrorKind::InputParseError);
  EXPECT_EQ(kind_of([] { io::trellis_from_text("2 2 1 1\n0 0 1\n"); }), ErrorKind::InputParseError);
}

TEST(Io, ConstructionSpecs) {
  const auto micro = io::load_spec(kData + "/micro.json");
  EXPECT_EQ(micro.tamper, Tamper::None);
  EXPECT_EQ(ec_assemble(micro.spec).k_tilde(), 1u);
  EXPECT_EQ(io::load_spec(kData + "/micro_tampered_rank.json").tamper, Tamper::RankDeficientG0);
  EXPECT_EQ(io::load_spec(kData + "/micro_tampered_perturb.json").tamper, Tamper::PerturbG0);
  EXPECT_EQ(io::load_spec("builtin:micro").spec.n(), 2u);
  EXPECT_EQ(kind_of([] { io::load_spec("/nonexistent/spec.json"); }), ErrorKind::InputParseError);
  EXPECT_EQ(kind_of([] { io::tamper_from_string("shuffle"); }), ErrorKind::InputParseError);
}

TEST(Io, FileSpecMatchesBuiltinDefault) {
  const auto file = io::load_spec(kData + "/default.json").spec;
  const auto builtin = ec_default_spec();
  EXPECT_EQ(file.conv.coeff(0), builtin.conv.coeff(0));
  EXPECT_EQ(file.conv.coeff(1), builtin.conv.coeff(1));
  EXPECT_EQ(file.graph.edges(), builtin.graph.edges());
  EXPECT_EQ(file.inner.generator(), builtin.inner.generator());
}

TEST(Io, Rendering) {
  const io::Json j{{"a", 1}, {"b", {{"c", "x,y"}, {"d", {1, 2, 3}}}}, {"e", nullptr}};
  EXPECT_EQ(io::render(j, "csv"), "key,value\na,1\nb.c,\"x,y\"\nb.d,1;2;3\ne,-\n");
  EXPECT_EQ(io::render(j, "text"), "a    1\nb.c  x,y\nb.d  1;2;3\ne    -\n");
  EXPECT_EQ(io::Json::parse(io::render(j, "json")), j);
  EXPECT_EQ(io::profile_csv({2, 3}, {2, 3}), "j,column_distance,bound\n0,2,2\n1,3,3\n");
}

TEST(Io, ReportsAreDeterministic) {
  const auto etc = ec_assemble(ec_micro_spec());
  const auto a = io::to_json(ec_theorem_main_report(etc, {})).dump();
  const auto b = io::to_json(ec_theorem_main_report(etc, {})).dump();
  EXPECT_EQ(a, b);
}

}  // namespace
