// Copyright 2026 The rsf Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "core/geometry.hpp"

namespace rsf {

/// A point (x, y) of R^d x R.
struct LiftedPoint {
  Vector x;
  double y = 0.0;
};

/// One layer of the modified architecture: identity on U x R, and on the
/// complement a projection onto P x R along xi = (beta, slope).
struct ProjectionLayer {
  HalfSpace halfspace;   // beta = inward unit normal
  double slope = 0.0;    // directional derivative of phi at the tangent point
  Vector tangent_point;  // where the boundary hyperplane touches the inner ball

  int dim() const { return halfspace.dim(); }
  const Vector& beta() const { return halfspace.normal(); }

  /// xi = (beta, slope) in R^{d+1}.
  Vector direction() const;
};

/// Applies one layer. `step` (optional) receives t = dist(x, P) when x lies
/// outside U, and 0 otherwise. Inside U the point is returned unchanged.
LiftedPoint apply_projection_layer(const ProjectionLayer& layer,
                                   const LiftedPoint& point,
                                   double* step = nullptr);

/// Cone whose projection agrees, on the ball of radius rho, with the map that
/// fixes {normal . z + offset >= 0} and projects its complement along `xi`
/// onto the boundary hyperplane. Row 0 carries the half-space; the remaining
/// rows are an orthonormal basis of xi^perp with bias rho + margin.
/// Throws InvalidArgument for a zero xi or xi parallel to the hyperplane.
Cone realize_hyperplane_projection(const Vector& normal, double offset,
                                   const Vector& xi, double rho, double margin);

/// Cone realization of a projection layer lifted to R^{d+1}.
Cone realize_cone(const ProjectionLayer& layer, double rho, double margin);

/// Parameters of T(z) = relu(W z + bias).
struct ReluLayerParams {
  Matrix weights;
  Vector bias;
  double condition = 1.0;

  Vector apply(const Vector& z) const {
    return (weights * z + bias).cwiseMax(0.0);
  }
};

/// W = A_k A_{k-1}^{-1}, bias = b_k - W b_{k-1}; with no previous cone,
/// (A_k, b_k). Throws Conditioning when cond(W) > kMaxCondition; `index`
/// is only used for the message.
ReluLayerParams to_relu_pair(const Cone& current, const Cone* previous,
                             std::size_t index = 0);

}  // namespace rsf
