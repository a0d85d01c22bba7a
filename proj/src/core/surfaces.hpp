// Copyright 2026 The rsf Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "core/geometry.hpp"

namespace rsf {

/// Named numeric parameters for a catalog surface. Scalars are stored as
/// one-element lists.
class SurfaceParams {
 public:
  SurfaceParams() = default;

  void set(const std::string& key, double value) { values_[key] = {value}; }
  void set(const std::string& key, std::vector<double> value) {
    values_[key] = std::move(value);
  }

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  double scalar(const std::string& key, double fallback) const;
  std::vector<double> list(const std::string& key) const;

  const std::map<std::string, std::vector<double>>& entries() const { return values_; }

 private:
  std::map<std::string, std::vector<double>> values_;
};

/// Level-set function phi on the ball B_R with its analytic bounds.
struct SurfaceFunction {
  std::string name;
  int dim = 0;
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
  /// Bound on |d^2 phi / dx_i dx_j| over B_R.
  double second_derivative_bound = 0.0;
  /// Bound on sup |phi| over B_R.
  double sup_abs = 0.0;
  /// Bound on sup |grad phi| over B_R.
  double sup_grad = 0.0;

  double operator()(const Vector& x) const { return value(x); }
};

/// beta . grad phi(p)
double directional_derivative(const SurfaceFunction& phi, const Vector& p,
                              const Vector& beta);

/// Known catalog names: zero, affine, quadratic, gaussian_bump, sinusoid.
const std::vector<std::string>& catalog_names();

/// Builds a catalog surface on B_R in R^d. Throws Config for unknown names
/// or malformed parameters.
///
///   zero           phi = 0
///   affine         phi = w0 + w . x                    (w0, w; w defaults to e_1)
///   quadratic      phi = scale/2 |x|^2 + offset        (scale = 1, offset = 0)
///   gaussian_bump  phi = a exp(-|x|^2 / (2 s^2)) + offset  (a = 1, s = 1)
///   sinusoid       phi = a sum_i sin(omega x_i) + offset    (a = 1, omega = 1)
SurfaceFunction catalog(const std::string& name, int dim, double radius,
                        const SurfaceParams& params = {});

}  // namespace rsf
