// Copyright 2026 The rsf Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <json.hpp>

#include <cmath>

#include "core/analysis.hpp"
#include "core/error.hpp"

using namespace rsf;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

BuildConfig config_for(const std::string& surface, int d, double delta, std::uint64_t seed = 5) {
  BuildConfig c;
  c.dim = d;
  c.delta = delta;
  c.seed = seed;
  c.surface_name = surface;
  return c;
}

SuiteOptions light() {
  SuiteOptions o;
  o.boundary_samples = 200;
  o.graph_samples = 2000;
  o.nesting_samples = 2000;
  o.coverage_samples = 20000;
  o.cap_samples = 2;
  return o;
}

}  // namespace

TEST_CASE("decision height") {
  const NetworkFn good = [](const Vector& x, double y) { return x[0] - y; };
  CHECK(decision_height(good, vec({0.3, 1})) == doctest::Approx(0.3));
  const NetworkFn flat = [](const Vector& x, double y) { return x[0] - 2 * y; };
  CHECK_THROWS_AS(decision_height(flat, vec({0.3, 1})), Error);
  const NetworkFn kinked = [](const Vector&, double y) { return -std::max(y, 0.5); };
  CHECK_THROWS_AS(decision_height(kinked, vec({0, 0})), Error);
}

TEST_CASE("sup error on flat and curved surfaces") {
  const auto zero = config_for("zero", 2, 0.25);
  const auto zn = build_network(zero);
  const auto zr = sup_error(network_fn(zn), zero.surface(), 1.0, 0.0, 51, 1);
  CHECK(zr.sup_error <= 1e-9);
  CHECK(zr.max_slope_defect <= 1e-12);

  const auto quad = config_for("quadratic", 2, 0.2);
  const auto phi = quad.surface();
  const auto net = build_network(quad);
  const double bound = error_bound(2, 1, 0.2, 1);
  std::vector<GridSample> samples;
  const auto r = sup_error(network_fn(net), phi, 1.0, bound, 61, 1, &samples);
  CHECK(r.bound == doctest::Approx(5.344).epsilon(1e-3));
  CHECK(r.within_bound());
  CHECK(r.points == samples.size());
  CHECK(r.sup_error == doctest::Approx(std::abs(r.phi_at_argmax - r.phi_hat_at_argmax)));
  CHECK(r.phi_at_argmax == doctest::Approx(phi(r.argmax)));
  CHECK(r.argmax.norm() < 1.0);
  double worst = 0.0;
  for (const auto& s : samples) worst = std::max(worst, std::abs(s.phi - s.phi_hat));
  CHECK(worst == r.sup_error);

  const auto csv = grid_csv(samples);
  CHECK(csv.rfind("x1,x2,phi,phi_hat\n", 0) == 0);
}

TEST_CASE("sup error does not depend on threads") {
  const auto quad = config_for("quadratic", 2, 0.25);
  const auto net = build_network(quad);
  const auto a = sup_error(network_fn(net), quad.surface(), 1.0, 1.0, 41, 1);
  const auto b = sup_error(network_fn(net), quad.surface(), 1.0, 1.0, 41, 4);
  CHECK(a.sup_error == b.sup_error);
  CHECK(a.argmax == b.argmax);
}

TEST_CASE("band membership") {
  const BandSpec band{[](const Vector& x) { return x[0]; }, 0.1};
  CHECK(band.contains(vec({0.5, 0}), 0.55));
  CHECK(band.contains(vec({0.5, 0}), 0.6));
  CHECK_FALSE(band_contains(band, vec({0.5, 0}), 0.7));
  CHECK_FALSE(band_contains(band, vec({0.5, 0}), 0.3));
}

TEST_CASE("sign check") {
  for (const char* name : {"quadratic", "sinusoid"}) {
    CAPTURE(name);
    const auto c = config_for(name, 2, 0.25);
    const auto phi = c.surface();
    const auto net = build_network(c);
    const double eps = error_bound(2, 1, 0.25, phi.second_derivative_bound);
    const auto s = sign_check(network_fn(net), phi, 1.0, eps, net.meta().y_extent, 100000, 3, 1);
    CHECK(s.samples == 100000);
    CHECK(s.draws >= s.samples);
    CHECK(s.errors == 0);
    CHECK(s.fraction() == 1.0);
    const auto again = sign_check(network_fn(net), phi, 1.0, eps, net.meta().y_extent, 1000, 3, 2);
    CHECK(again.errors == 0);
  }
}

TEST_CASE("sign sampler never emits band points") {
  // A network that answers wrongly only inside the band.
  const auto c = config_for("quadratic", 2, 0.25);
  const auto phi = c.surface();
  const double eps = 0.3;
  const NetworkFn lying = [&](const Vector& x, double y) {
    const double gap = phi(x) - y;
    return std::abs(gap) <= eps ? -gap : gap;
  };
  const auto s = sign_check(lying, phi, 1.0, eps, 2.0, 20000, 1, 1);
  CHECK(s.errors == 0);
  CHECK(s.draws > s.samples);
}

TEST_CASE("demo classification") {
  auto c = config_for("quadratic", 2, 0.25);
  c.surface_params.set("offset", -0.25);
  const auto phi = c.surface();
  const auto net = build_network(c);
  const auto fn = network_fn(net);
  CHECK(classify_demo(fn, {}).total() == 0);

  const double eps = error_bound(2, 1, 0.25, 1);
  // The margin exceeds what the surface reaches on the ball.
  CHECK_THROWS_AS(generate_demo_points(phi, 1.0, eps, 10, 1), Error);

  // Points farther from the surface than the measured error are all correct.
  const auto measured = sup_error(fn, phi, 1.0, eps, 101, 1);
  const double margin = measured.sup_error + 0.02;
  const auto pts = generate_demo_points(phi, 1.0, margin, 1000, 1);
  CHECK(pts.size() == 2000);
  for (const auto& p : pts) CHECK(std::abs(phi(p.x)) > margin);
  const auto conf = classify_demo(fn, pts);
  CHECK(conf.total() == 2000);
  CHECK(conf.errors() == 0);
  CHECK(conf.counts[0][1] == 1000);
  CHECK(conf.counts[1][2] == 1000);
}

TEST_CASE("invariant suite") {
  for (const char* name : {"zero", "quadratic"}) {
    CAPTURE(name);
    const auto c = config_for(name, 2, 0.25);
    const auto net = build_network(c);
    const auto report = invariant_suite(net, c.surface(), c, light());
    for (const auto& check : report.checks) {
      CAPTURE(check.name);
      CHECK(check.pass);
    }
    CHECK(report.pass());
    REQUIRE(report.find("stage_landing") != nullptr);
    CHECK(report.find("no_such_check") == nullptr);
  }
}

TEST_CASE("fault injection is caught") {
  const auto c = config_for("quadratic", 2, 0.25);
  auto net = build_network(c);
  const auto& last = net.stages().back();
  net.set_slope(last.first, net.layer(last.first).slope + 1.0);
  const auto report = invariant_suite(net, c.surface(), c, light());
  CHECK_FALSE(report.pass());
  REQUIRE(report.find("y_deviation") != nullptr);
  CHECK_FALSE(report.find("y_deviation")->pass);
  CHECK(report.find("y_deviation")->stage == last.index);
}

TEST_CASE("log-log slope") {
  CHECK(loglog_slope({1, 2, 4}, {3, 6, 12}) == doctest::Approx(1.0));
  CHECK(loglog_slope({1, 2, 4}, {1, 1.41421356, 2}) == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("verify report") {
  const auto c = config_for("quadratic", 2, 0.25);
  const auto net = build_network(c);
  VerifyOptions o;
  o.grid = 41;
  o.sign_samples = 2000;
  o.suite = light();
  const auto result = verify(AnyNetwork(net), c, o);
  CHECK(result.pass());
  const auto j = nlohmann::json::parse(to_json(result));
  CHECK(j["form"] == "modified");
  CHECK(j["pass"] == true);
  CHECK(j["failing"].empty());

  const auto relu = convert(net, net.meta().rho, net.meta().margin);
  const auto rr = verify(AnyNetwork(relu), c, o);
  CHECK(rr.pass());
  CHECK(rr.max_condition <= 2.0 + 1e-9);
  CHECK(nlohmann::json::parse(to_json(rr))["form"] == "relu");

  auto other = c;
  other.delta = 0.2;
  try {
    verify(AnyNetwork(net), other, o);
    FAIL("expected a config mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Config);
  }
}
