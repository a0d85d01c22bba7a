// Copyright 2026 The rsf Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/surfaces.hpp"

#include <cmath>

#include "core/error.hpp"

namespace rsf {

double SurfaceParams::scalar(const std::string& key, double fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  if (it->second.size() != 1) {
    fail(ErrorCode::Config, "surface parameter '" + key + "' must be a scalar");
  }
  return it->second.front();
}

std::vector<double> SurfaceParams::list(const std::string& key) const {
  auto it = values_.find(key);
  return it == values_.end() ? std::vector<double>{} : it->second;
}

double directional_derivative(const SurfaceFunction& phi, const Vector& p,
                              const Vector& beta) {
  return beta.dot(phi.gradient(p));
}

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {"zero", "affine", "quadratic",
                                                 "gaussian_bump", "sinusoid"};
  return names;
}

namespace {

SurfaceFunction zero_surface(int dim) {
  SurfaceFunction f;
  f.value = [](const Vector&) { return 0.0; };
  f.gradient = [dim](const Vector&) { return Vector::Zero(dim).eval(); };
  return f;
}

SurfaceFunction affine_surface(int dim, double radius, const SurfaceParams& params) {
  const double w0 = params.scalar("w0", 0.0);
  Vector w = Vector::Zero(dim);
  if (params.has("w")) {
    const auto values = params.list("w");
    if (static_cast<int>(values.size()) != dim) {
      fail(ErrorCode::Config, "affine parameter 'w' must have d entries");
    }
    for (int i = 0; i < dim; ++i) w[i] = values[i];
  } else {
    w[0] = 1.0;
  }
  SurfaceFunction f;
  f.value = [w, w0](const Vector& x) { return w0 + w.dot(x); };
  f.gradient = [w](const Vector&) { return w; };
  f.sup_abs = std::abs(w0) + w.norm() * radius;
  f.sup_grad = w.norm();
  return f;
}

SurfaceFunction quadratic_surface(double radius, const SurfaceParams& params) {
  const double scale = params.scalar("scale", 1.0);
  const double offset = params.scalar("offset", 0.0);
  SurfaceFunction f;
  f.value = [scale, offset](const Vector& x) {
    return 0.5 * scale * x.squaredNorm() + offset;
  };
  f.gradient = [scale](const Vector& x) { return (scale * x).eval(); };
  f.second_derivative_bound = std::abs(scale);
  f.sup_abs = 0.5 * std::abs(scale) * radius * radius + std::abs(offset);
  f.sup_grad = std::abs(scale) * radius;
  return f;
}

SurfaceFunction gaussian_surface(const SurfaceParams& params) {
  const double a = params.scalar("amplitude", 1.0);
  const double s = params.scalar("width", 1.0);
  const double offset = params.scalar("offset", 0.0);
  if (!(s > 0.0)) fail(ErrorCode::Config, "gaussian_bump width must be positive");
  const double inv = 1.0 / (2.0 * s * s);
  SurfaceFunction f;
  f.value = [a, inv, offset](const Vector& x) {
    return a * std::exp(-x.squaredNorm() * inv) + offset;
  };
  f.gradient = [a, inv](const Vector& x) {
    return (-2.0 * inv * a * std::exp(-x.squaredNorm() * inv) * x).eval();
  };
  // Diagonal entries peak at |a|/s^2 (x = 0); off-diagonal ones at |a|/(e s^2).
  f.second_derivative_bound = std::abs(a) / (s * s);
  f.sup_abs = std::abs(a) + std::abs(offset);
  f.sup_grad = std::abs(a) * std::exp(-0.5) / s;
  return f;
}

SurfaceFunction sinusoid_surface(int dim, const SurfaceParams& params) {
  const double a = params.scalar("amplitude", 1.0);
  const double omega = params.scalar("frequency", 1.0);
  const double offset = params.scalar("offset", 0.0);
  SurfaceFunction f;
  f.value = [a, omega, offset](const Vector& x) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) sum += std::sin(omega * x[i]);
    return a * sum + offset;
  };
  f.gradient = [a, omega](const Vector& x) {
    Vector g(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) g[i] = a * omega * std::cos(omega * x[i]);
    return g;
  };
  // Conservative: row-sum bound d * max entry.
  f.second_derivative_bound = std::abs(a) * omega * omega * dim;
  f.sup_abs = std::abs(a) * dim + std::abs(offset);
  f.sup_grad = std::abs(a * omega) * std::sqrt(static_cast<double>(dim));
  return f;
}

}  // namespace

SurfaceFunction catalog(const std::string& name, int dim, double radius,
                        const SurfaceParams& params) {
  if (dim < 1) fail(ErrorCode::Config, "surface dimension must be positive");
  SurfaceFunction f;
  if (name == "zero") {
    f = zero_surface(dim);
  } else if (name == "affine") {
    f = affine_surface(dim, radius, params);
  } else if (name == "quadratic") {
    f = quadratic_surface(radius, params);
  } else if (name == "gaussian_bump") {
    f = gaussian_surface(params);
  } else if (name == "sinusoid") {
    f = sinusoid_surface(dim, params);
  } else {
    fail(ErrorCode::Config, "unknown surface '" + name + "'");
  }
  f.name = name;
  f.dim = dim;
  return f;
}

}  // namespace rsf
