// Copyright 2026 The rsf Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "core/error.hpp"
#include "core/network.hpp"
#include "core/random.hpp"

using namespace rsf;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

BuildConfig config_for(const std::string& surface, int d, double delta) {
  BuildConfig c;
  c.dim = d;
  c.delta = delta;
  c.seed = 5;
  c.surface_name = surface;
  return c;
}

ModifiedNetwork one_layer_zero() {
  NetworkMeta meta;
  meta.radius = 1.0;
  meta.delta = 0.2;
  meta.surface = "zero";
  meta.rho = 4.0;
  meta.margin = 1.0;
  ModifiedNetwork net(2, FinalAffine{Vector::Zero(2), 0.0}, meta);
  net.add_stage(0, 1.0, 0.2, std::sqrt(0.1),
                {ProjectionLayer{HalfSpace(vec({-1, 0}), 0.8), 0.0, vec({0.8, 0})}});
  return net;
}

ErrorCode code_of(const std::string& text) {
  try {
    deserialize(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("zero surface network") {
  const auto net = build_network(config_for("zero", 2, 0.25));
  CounterRng rng(1, 0);
  for (int i = 0; i < 1000; ++i) {
    const Vector x = rng.in_ball(2, 1.0);
    const double y = rng.uniform(-2, 2);
    CHECK(std::abs(net.evaluate(x, y) + y) <= 1e-12);
  }
  const auto q = build_network(config_for("quadratic", 2, 0.25));
  CHECK(q.evaluate(Vector::Zero(2), 0.0) == 0.0);
}

TEST_CASE("hand-checked one layer conversion") {
  const auto net = one_layer_zero();
  const auto relu = convert(net, 4.0, 1.0);
  REQUIRE(relu.layers.size() == 1);
  const auto& w = relu.layers[0].weights;
  const auto& b = relu.layers[0].bias;
  CHECK(w.row(0) == vec({-1, 0, 0}).transpose());
  CHECK(b[0] == 0.8);
  CHECK(b[1] == 5.0);
  CHECK(b[2] == 5.0);
  CHECK((w * w.transpose() - Matrix::Identity(3, 3)).norm() <= 1e-15);
  CHECK(w.col(0).tail(2).norm() == 0.0);
  CHECK(relu.layers[0].condition == doctest::Approx(1.0));
  CHECK(relu.final_w[0] == 0.0);
  CHECK(relu.final_w.norm() == doctest::Approx(1.0));
  CHECK(relu.final_b == doctest::Approx(-relu.final_w.tail(2).dot(b.tail(2))));

  CHECK(relu.evaluate(vec({0.9, 0.1}), 0.3) == doctest::Approx(-0.3));
  CHECK(relu.evaluate(vec({-0.5, 0.2}), -1.0) == doctest::Approx(1.0));
}

TEST_CASE("empty network") {
  NetworkMeta meta;
  ModifiedNetwork net(2, FinalAffine{vec({1, 2}), 0.5}, meta);
  CHECK(net.size() == 0);
  CHECK(net.evaluate(vec({1, 1}), 1) == doctest::Approx(2.5));
  const auto relu = convert(net, 3.0, 1.0);
  CHECK(relu.layers.empty());
  CHECK(relu.evaluate(vec({1, 1}), 1) == doctest::Approx(2.5));
}

TEST_CASE("forms agree on the evaluation box") {
  for (int d : {2, 3}) {
    const auto net = build_network(config_for("quadratic", d, 0.25));
    const auto relu = convert(net, net.meta().rho, net.meta().margin);
    CounterRng rng(2, d);
    const double c = net.meta().y_extent;
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
      const Vector x = rng.in_ball(d, 1.0);
      const double y = rng.uniform(-c, c);
      worst = std::max(worst, std::abs(net.evaluate(x, y) - relu.evaluate(x, y)));
    }
    CHECK(worst <= 1e-9);
    for (double k : relu.cumulative_condition) CHECK(k <= 2.0 + 1e-9);
  }
}

TEST_CASE("trajectories") {
  const auto net = build_network(config_for("quadratic", 2, 0.25));
  const auto tr = net.trace(vec({0.95, 0.2}), 0.1);
  CHECK(tr.points.size() == net.size() + 1);
  double sum = 0.0;
  for (std::size_t i = 0; i < tr.steps.size(); ++i) {
    sum += tr.steps[i];
    CHECK((tr.points[i + 1].x - tr.points[i].x).norm() == doctest::Approx(tr.steps[i]));
  }
  CHECK(tr.path_length == doctest::Approx(sum));
  const auto end = net.forward({vec({0.95, 0.2}), 0.1});
  CHECK((end.x - tr.points.back().x).norm() <= 1e-12);
  CHECK(end.y == doctest::Approx(tr.points.back().y).epsilon(1e-12));
  for (std::size_t s = 0; s < net.stages().size(); ++s) {
    const auto& st = net.stages()[s];
    const auto mid = net.forward({vec({0.95, 0.2}), 0.1}, 0, st.first + st.count);
    CHECK(net.inside_stage(mid.x, s, 1e-12));
  }
  // Interior points are untouched.
  const auto still = net.trace(vec({0.01, 0.0}), 0.3);
  CHECK(still.path_length == 0.0);
}

TEST_CASE("serialization round trip") {
  const auto net = build_network(config_for("sinusoid", 2, 0.25));
  const auto text = serialize(net);
  const auto back = deserialize_modified(text);
  CHECK(serialize(back) == text);
  CHECK(back.size() == net.size());
  CHECK(back.stages().size() == net.stages().size());
  for (std::size_t i = 0; i < net.size(); ++i) {
    CHECK(back.layer(i).beta() == net.layer(i).beta());
    CHECK(back.layer(i).slope == net.layer(i).slope);
  }
  const auto relu = convert(net, net.meta().rho, net.meta().margin);
  const auto rtext = serialize(relu);
  const auto rback = deserialize_relu(rtext);
  CHECK(serialize(rback) == rtext);
  CHECK(rback.cumulative_condition == relu.cumulative_condition);

  CHECK(std::holds_alternative<ModifiedNetwork>(deserialize(text)));
  CHECK(std::holds_alternative<ReluNetwork>(deserialize(rtext)));
  CHECK_THROWS_AS(deserialize_relu(text), Error);

  // Replaying the parsed relu net gives the same values as the parsed modified one.
  CounterRng rng(8, 0);
  for (int i = 0; i < 200; ++i) {
    const Vector x = rng.in_ball(2, 1.0);
    CHECK(rback.evaluate(x, 0.0) == doctest::Approx(back.evaluate(x, 0.0)).epsilon(1e-9));
  }
}

TEST_CASE("decimal strings") {
  for (double v : {0.1, -1e-300, 1.0 / 3.0, 6.02214076e23, 0.0}) {
    CHECK(parse_double(format_double(v)) == v);
  }
  CHECK_THROWS_AS(format_double(std::nan("")), Error);
  CHECK_THROWS_AS(parse_double("1.5x"), Error);
  CHECK_THROWS_AS(parse_double(""), Error);
}

TEST_CASE("malformed network files") {
  const auto net = one_layer_zero();
  const auto text = serialize(net);
  CHECK(code_of("{not json") == ErrorCode::Parse);
  CHECK(code_of(R"({"format": "rsf-network", "version": 99})") == ErrorCode::Version);

  auto j = text;
  const auto pos = j.find("\"width\"");
  REQUIRE(pos != std::string::npos);
  const auto end = j.find(',', pos);
  j.replace(pos, end - pos, "\"width\": 7");
  CHECK(code_of(j) == ErrorCode::Parse);

  auto corrupt = text;
  const auto off = corrupt.find("\"0.80000000000000004\"");
  REQUIRE(off != std::string::npos);
  corrupt.replace(off, 21, "\"0.8abc\"");
  CHECK(code_of(corrupt) == ErrorCode::Parse);
}
