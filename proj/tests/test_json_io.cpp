#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "reachprobe/domain.hpp"
#include "reachprobe/errors.hpp"
#include "reachprobe/json_io.hpp"
#include "reachprobe/local_graph.hpp"

using namespace reachprobe;
using json::Json;

namespace {

Point vec(std::initializer_list<double> xs) {
  Point p(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) p[i++] = x;
  return p;
}

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const InvalidInput& e) {
    return e.what();
  }
  return "<no error>";
}

}  // namespace

TEST(Dump, SeventeenDigitsAndStableOrder) {
  Json j;
  j["z"] = 0.1;
  j["a"] = 3;
  j["nan"] = std::numeric_limits<double>::quiet_NaN();
  j["inf"] = std::numeric_limits<double>::infinity();
  j["v"] = json::point(vec({1.0, -2.5}));
  j["s"] = "q\"uote";
  EXPECT_EQ(json::dump(j),
            "{\n"
            "  \"z\": 0.10000000000000001,\n"
            "  \"a\": 3,\n"
            "  \"nan\": null,\n"
            "  \"inf\": null,\n"
            "  \"v\": [1, -2.5],\n"
            "  \"s\": \"q\\\"uote\"\n"
            "}\n");
}

TEST(Dump, FloatsRoundTripExactly) {
  for (double v : {M_PI, 1e-300, 123456789.123456789, -0.3}) {
    Json j;
    j["v"] = v;
    EXPECT_EQ(Json::parse(json::dump(j))["v"].get<double>(), v);
  }
}

TEST(GraphFile, RoundTrip) {
  const auto d = builtin("ellipsoid", {{"a1", 2.0}, {"a2", 1.5}, {"a3", 1.0}}, 3);
  const LocalGraph g = extract_local_graph(*d, vec({2, 0, 0}), 0.3, 0.3, 9);
  const LocalGraph back = json::parse_graph(json::dump(json::graph_to_json(g)));
  ASSERT_EQ(back.nodes.size(), g.nodes.size());
  EXPECT_EQ(back.rho, g.rho);
  EXPECT_EQ(back.h, g.h);
  EXPECT_EQ(back.grid_n, g.grid_n);
  EXPECT_EQ(back.base_point, g.base_point);
  EXPECT_EQ(back.frame.rotation(), g.frame.rotation());
  EXPECT_EQ(back.frame.translation(), g.frame.translation());
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    EXPECT_EQ(back.nodes[i].phi, g.nodes[i].phi);
    EXPECT_EQ(back.nodes[i].grad, g.nodes[i].grad);
  }
}

TEST(GraphFile, GradientsByFiniteDifferences) {
  const auto d = builtin("ball", {{"R", 1.0}}, 2);
  const LocalGraph g = extract_local_graph(*d, vec({1, 0}), 0.4, 0.4, 81);
  Json j = json::graph_to_json(g);
  j.erase("gradients");
  const LocalGraph back = json::parse_graph(json::dump(j));
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const bool edge = std::abs(g.nodes[i].xp[0]) > 0.4 - 1e-9;
    EXPECT_NEAR(back.nodes[i].grad[0], g.nodes[i].grad[0], edge ? 0.05 : 1e-3);
  }
}

TEST(GraphFile, ErrorsNameTheField) {
  const auto d = builtin("ball", {{"R", 1.0}}, 2);
  const Json good = json::graph_to_json(extract_local_graph(*d, vec({1, 0}), 0.3, 0.3, 5));

  Json j = good;
  j.erase("rho");
  EXPECT_NE(error_of([&] { json::parse_graph(j.dump()); }).find("'rho'"), std::string::npos);
  j = good;
  j["values"].erase(0);
  EXPECT_NE(error_of([&] { json::parse_graph(j.dump()); }).find("'values'"), std::string::npos);
  j = good;
  j["grid_n"] = 4;
  EXPECT_NE(error_of([&] { json::parse_graph(j.dump()); }).find("'grid_n'"), std::string::npos);
  j = good;
  j["frame"]["rotation"][0][0] = 2.0;
  EXPECT_NE(error_of([&] { json::parse_graph(j.dump()); }).find("'frame'"), std::string::npos);
  j = good;
  j["values"][1] = 5.0;
  EXPECT_NE(error_of([&] { json::parse_graph(j.dump()); }).find("'values[1]'"), std::string::npos);
  j = good;
  j["colour"] = 1;
  EXPECT_NE(error_of([&] { json::parse_graph(j.dump()); }).find("'colour'"), std::string::npos);

  try {
    json::parse_graph("{\n  \"rho\": 0.3,\n  \"h\": ]\n}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 8u);
  }
}

TEST(DomainSpecFile, Builtin) {
  const auto loaded = json::parse_domain_spec(
      R"({"kind": "builtin", "name": "ellipsoid", "params": {"a1": 2, "a2": 1}, "dim": 2})");
  EXPECT_EQ(loaded.spec.name, "ellipsoid");
  EXPECT_NEAR(loaded.domain->value(vec({2, 0})), 0.0, 1e-15);
}

TEST(DomainSpecFile, Implicit) {
  const auto loaded = json::parse_domain_spec(R"({
    "kind": "implicit",
    "expr": "(x/2)^2 + y^2 - 1",
    "dim": 2,
    "bbox": [[-2.2, -1.2], [2.2, 1.2]],
    "seeds": [[0, 0]]
  })");
  EXPECT_EQ(loaded.spec.kind, "implicit");
  EXPECT_EQ(loaded.spec.expr, "(x/2)^2 + y^2 - 1");
  EXPECT_NEAR(loaded.domain->value(vec({0, 1})), 0.0, 1e-15);
}

TEST(DomainSpecFile, ErrorsNameTheField) {
  EXPECT_NE(error_of([] { json::parse_domain_spec(R"({"name": "ball"})"); }).find("'kind'"), std::string::npos);
  EXPECT_NE(error_of([] { json::parse_domain_spec(R"({"kind": "mesh"})"); }).find("'kind'"), std::string::npos);
  EXPECT_NE(error_of([] { json::parse_domain_spec(R"({"kind": "builtin"})"); }).find("'name'"), std::string::npos);
  EXPECT_NE(error_of([] {
              json::parse_domain_spec(R"({"kind": "builtin", "name": "ball", "params": {"R": "one"}})");
            }).find("'params.R'"),
            std::string::npos);
  EXPECT_NE(error_of([] {
              json::parse_domain_spec(R"({"kind": "implicit", "expr": "x^2+y^2-1", "bbox": [[-2, -2], [2]]})");
            }).find("'bbox[1]'"),
            std::string::npos);
  const std::string expr_err = error_of([] {
    json::parse_domain_spec(R"({"kind": "implicit", "expr": "x^2 + * y", "bbox": [[-2, -2], [2, 2]]})");
  });
  EXPECT_NE(expr_err.find("'expr'"), std::string::npos);
  EXPECT_NE(expr_err.find("line 1, column 7"), std::string::npos);
  EXPECT_NE(error_of([] {
              json::parse_domain_spec(
                  R"({"kind": "implicit", "expr": "x^2+y^2-1", "bbox": [[-2, -2], [2, 2]], "seeds": [[5, 5]]})");
            }).find("seeds"),
            std::string::npos);
  EXPECT_THROW(json::parse_domain_spec("{\"kind\": "), ParseError);
}
