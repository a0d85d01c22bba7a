// Copyright 2026 The rsf Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/layers.hpp"

#include <cmath>
#include <sstream>

#include "core/error.hpp"

namespace rsf {

Vector ProjectionLayer::direction() const {
  Vector xi(dim() + 1);
  xi.head(dim()) = beta();
  xi[dim()] = slope;
  return xi;
}

LiftedPoint apply_projection_layer(const ProjectionLayer& layer,
                                   const LiftedPoint& point, double* step) {
  const double value = layer.halfspace.signed_value(point.x);
  if (value >= 0.0) {
    if (step) *step = 0.0;
    return point;
  }
  const double t = -value;
  if (step) *step = t;
  return {point.x + t * layer.beta(), point.y + t * layer.slope};
}

namespace {

/// Orthonormal basis of xi^perp from Gram-Schmidt on the standard basis,
/// skipping the coordinate where |xi| is largest.
Matrix orthogonal_complement(const Vector& xi) {
  const auto n = xi.size();
  Eigen::Index skip = 0;
  xi.cwiseAbs().maxCoeff(&skip);
  const Vector unit = xi.normalized();
  Matrix basis(n - 1, n);
  Eigen::Index row = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (i == skip) continue;
    Vector v = Vector::Unit(n, i);
    // Two passes keep the rows orthogonal to working precision.
    for (int pass = 0; pass < 2; ++pass) {
      v -= unit.dot(v) * unit;
      for (Eigen::Index k = 0; k < row; ++k) {
        v -= basis.row(k).dot(v) * basis.row(k).transpose();
      }
    }
    basis.row(row++) = v.normalized().transpose();
  }
  return basis;
}

}  // namespace

Cone realize_hyperplane_projection(const Vector& normal, double offset,
                                   const Vector& xi, double rho, double margin) {
  const auto n = normal.size();
  if (xi.size() != n) {
    fail(ErrorCode::InvalidArgument, "projection direction has the wrong dimension");
  }
  const double xi_norm = xi.norm();
  if (!(xi_norm > 0.0) || !std::isfinite(xi_norm)) {
    fail(ErrorCode::InvalidArgument, "projection direction must be a nonzero vector");
  }
  if (std::abs(normal.dot(xi)) <= 1e-12 * xi_norm * normal.norm()) {
    fail(ErrorCode::InvalidArgument, "projection direction is parallel to the hyperplane");
  }
  if (!(rho >= 0.0) || !(margin > 0.0)) {
    fail(ErrorCode::InvalidArgument, "cone realization needs rho >= 0 and margin > 0");
  }
  Matrix weights(n, n);
  Vector bias(n);
  weights.row(0) = normal.transpose();
  bias[0] = offset;
  if (n > 1) {
    weights.bottomRows(n - 1) = orthogonal_complement(xi);
    bias.tail(n - 1).setConstant(rho + margin);
  }
  return Cone(std::move(weights), std::move(bias));
}

Cone realize_cone(const ProjectionLayer& layer, double rho, double margin) {
  const int d = layer.dim();
  Vector normal = Vector::Zero(d + 1);
  normal.head(d) = layer.beta();
  return realize_hyperplane_projection(normal, layer.halfspace.offset(),
                                       layer.direction(), rho, margin);
}

ReluLayerParams to_relu_pair(const Cone& current, const Cone* previous,
                             std::size_t index) {
  ReluLayerParams params;
  if (previous == nullptr) {
    params.weights = current.weights();
    params.bias = current.bias();
    params.condition = current.condition();
    return params;
  }
  if (previous->dim() != current.dim()) {
    fail(ErrorCode::InvalidArgument, "chained cones must share a dimension");
  }
  params.weights = current.weights() * previous->dual();
  params.bias = current.bias() - params.weights * previous->bias();
  params.condition = condition_number(params.weights);
  if (!(params.condition <= kMaxCondition)) {
    std::ostringstream msg;
    msg << "layer " << index << ": composed map is ill-conditioned (cond = "
        << params.condition << ")";
    fail(ErrorCode::Conditioning, msg.str());
  }
  return params;
}

}  // namespace rsf
