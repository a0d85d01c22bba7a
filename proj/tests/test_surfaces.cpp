// Copyright 2026 The rsf Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "core/error.hpp"
#include "core/random.hpp"
#include "core/surfaces.hpp"

using namespace rsf;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

SurfaceParams sinusoid_params() {
  SurfaceParams p;
  p.set("amplitude", 0.5);
  p.set("frequency", 2.0);
  p.set("offset", 0.1);
  return p;
}

}  // namespace

TEST_CASE("directional derivative") {
  const auto q = catalog("quadratic", 2, 1.0);
  CHECK(directional_derivative(q, vec({0, 0.8}), vec({0, -1})) == doctest::Approx(-0.8));
  CHECK(directional_derivative(q, vec({0.3, 0.4}), vec({1, 0})) == doctest::Approx(0.3));

  SurfaceParams p;
  p.set("w0", 0.5);
  p.set("w", std::vector<double>{1, -2, 0.25});
  const auto a = catalog("affine", 3, 1.0, p);
  CHECK(directional_derivative(a, vec({0.1, 0.2, 0.3}), vec({0, 1, 0})) ==
        doctest::Approx(-2.0));
  CHECK(a(vec({1, 1, 4})) == doctest::Approx(0.5 + 1 - 2 + 1));
}

TEST_CASE("catalog values and bounds") {
  CHECK(catalog("zero", 2, 1.0).second_derivative_bound == 0.0);
  CHECK(catalog("affine", 2, 1.0).second_derivative_bound == 0.0);
  CHECK(catalog("quadratic", 2, 1.0).second_derivative_bound == 1.0);

  SurfaceParams scaled;
  scaled.set("scale", -3.0);
  scaled.set("offset", 0.25);
  const auto q = catalog("quadratic", 2, 1.0, scaled);
  CHECK(q.second_derivative_bound == 3.0);
  CHECK(q(vec({1, 1})) == doctest::Approx(-3.0 + 0.25));

  const auto s = catalog("sinusoid", 2, 1.0, sinusoid_params());
  CHECK(s.second_derivative_bound == doctest::Approx(0.5 * 4 * 2));
  CHECK(s(vec({0, 0})) == doctest::Approx(0.1));

  const auto g = catalog("gaussian_bump", 3, 2.0);
  CHECK(g(vec({0, 0, 0})) == doctest::Approx(1.0));
  CHECK(g.second_derivative_bound == 1.0);

  for (const auto& name : catalog_names()) CHECK(catalog(name, 2, 1.0).name == name);
}

TEST_CASE("catalog errors") {
  try {
    catalog("saddle", 2, 1.0);
    FAIL("expected a config error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Config);
    CHECK(std::string(e.what()).find("saddle") != std::string::npos);
  }
  SurfaceParams bad;
  bad.set("w", std::vector<double>{1, 2, 3});
  CHECK_THROWS_AS(catalog("affine", 2, 1.0, bad), Error);
  SurfaceParams width;
  width.set("width", 0.0);
  CHECK_THROWS_AS(catalog("gaussian_bump", 2, 1.0, width), Error);
}

TEST_CASE("gradients and curvature bounds agree with finite differences") {
  SurfaceParams bump;
  bump.set("amplitude", 2.0);
  bump.set("width", 0.5);
  const std::vector<SurfaceFunction> surfaces = {
      catalog("zero", 2, 1.0),
      catalog("affine", 3, 1.5),
      catalog("quadratic", 3, 1.0),
      catalog("gaussian_bump", 2, 1.0, bump),
      catalog("sinusoid", 3, 2.0, sinusoid_params()),
  };
  const double h = 1e-5;
  const double k = 1e-3;
  for (const auto& phi : surfaces) {
    CAPTURE(phi.name);
    const int d = phi.dim;
    const double radius = phi.name == "sinusoid" ? 2.0 : (phi.name == "affine" ? 1.5 : 1.0);
    CounterRng rng(17, 0);
    double grad_err = 0.0;
    double second = 0.0;
    double value = 0.0;
    double slope = 0.0;
    for (int s = 0; s < 1000; ++s) {
      const Vector x = rng.in_ball(d, radius - 2 * k);
      const Vector g = phi.gradient(x);
      value = std::max(value, std::abs(phi(x)));
      slope = std::max(slope, g.norm());
      for (int i = 0; i < d; ++i) {
        const Vector e = Vector::Unit(d, i);
        const double fd = (phi(x + h * e) - phi(x - h * e)) / (2 * h);
        grad_err = std::max(grad_err, std::abs(fd - g[i]));
        for (int j = 0; j < d; ++j) {
          const Vector f = Vector::Unit(d, j);
          const double mixed = (phi(x + k * e + k * f) - phi(x + k * e - k * f) -
                                phi(x - k * e + k * f) + phi(x - k * e - k * f)) /
                               (4 * k * k);
          second = std::max(second, std::abs(mixed));
        }
      }
    }
    CHECK(grad_err <= 1e-6);
    CHECK(second <= phi.second_derivative_bound + 1e-4);
    CHECK(value <= phi.sup_abs + 1e-12);
    CHECK(slope <= phi.sup_grad + 1e-12);
  }
}
