// Copyright 2026 The rsf Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/layers.hpp"
#include "core/surfaces.hpp"

namespace rsf {

/// Construction parameters. `delta` must satisfy 0 < delta <= R (1 - 1/sqrt 2).
struct BuildConfig {
  int dim = 2;
  double radius = 1.0;
  double delta = 0.25;
  std::uint64_t seed = 0;
  double margin = 1.0;
  std::string surface_name = "quadratic";
  SurfaceParams surface_params;

  /// Throws Config with a message naming the violated constraint.
  void validate() const;

  SurfaceFunction surface() const;
};

/// Largest admissible cap height for a ball of radius r: r (1 - 1/sqrt 2).
double max_cap_height(double radius);

/// Constants of the error analysis for a second-derivative bound D.
namespace bounds {
double c1(double D);  // 3D / sqrt 2
double c2();          // (1 + sqrt 2) / 2
double c3(double D);  // c2 c1
double c4(double D);  // 7/3 c3
double c5(double D);  // 2 c4

/// Offset bound for one projection with step t: c1 (d-1) sqrt(r delta) t.
double single_projection(int dim, double r, double delta, double D, double t);
/// |y_m - phi(x_m)| after one stage: c3 (d-1) sqrt(r) delta^{3/2}.
double stage_deviation(int dim, double r, double delta, double D);
/// Band half-width after all stages: c4 (d-1) R^{3/2} delta^{1/2}.
double band_width(int dim, double R, double delta, double D);
}  // namespace bounds

/// delta_k: delta when admissible for r_k, otherwise r_k (1 - 1/sqrt 2).
double delta_schedule(double stage_radius, double delta);

/// 7R / (3 delta).
double stage_count_bound(double R, double delta);
/// (14/3) d (32 R / delta)^{(d+1)/2}.
double layer_count_bound(int dim, double R, double delta);
/// c5 (d-1) R^{3/2} delta^{1/2}. Throws InvalidArgument for d < 2.
double error_bound(int dim, double R, double delta, double D);

/// One polytope stage: tangent half-spaces to the ball of radius
/// radius - cap_height, one per point of a net_eps-net of the sphere of
/// radius `radius`, in net order.
struct StagePlan {
  int index = 0;
  double radius = 0.0;
  double cap_height = 0.0;
  double net_eps = 0.0;
  std::vector<ProjectionLayer> layers;

  double inner_radius() const { return radius - cap_height; }
};

/// Affine head l(x) = w0 + w . x acting on (x, y) as l(x) - y.
struct FinalAffine {
  Vector w;
  double w0 = 0.0;

  double level(const Vector& x) const { return w0 + w.dot(x); }
  double evaluate(const Vector& x, double y) const { return level(x) - y; }
};

/// First-order Taylor expansion of phi at the origin.
FinalAffine final_affine(const SurfaceFunction& phi);

/// Layer for net point q on S_r: beta = -q/|q|, tangent point
/// p = (r - cap) q / r, offset r - cap, slope beta . grad phi(p).
ProjectionLayer tangent_layer(const SurfaceFunction& phi, const Vector& q, double radius,
                              double cap_height);

/// Throws InvalidArgument unless 0 < cap_height <= radius (1 - 1/sqrt 2).
StagePlan build_stage(const SurfaceFunction& phi, double radius,
                      double cap_height, std::uint64_t seed, int index = 0);

struct StageSequence {
  std::vector<StagePlan> stages;
  double final_radius = 0.0;  // r_M <= delta
  FinalAffine final;

  std::size_t layer_count() const;
};

/// Seed handed to the net generator of stage k.
std::uint64_t stage_seed(std::uint64_t seed, int stage);

/// r_0 = R, r_{k+1} = r_k - 3/4 delta_k, stopping at the first r_k <= delta.
StageSequence build_sequence(const SurfaceFunction& phi, const BuildConfig& config);

/// Enclosing radius of the intersection of a d = 2 stage's half-planes,
/// from the vertices of angularly consecutive boundary lines. Infinity when
/// the polygon is unbounded.
double exact_enclosing_radius_2d(const StagePlan& stage);

/// Height c of the sampling box B_R x [-c, c]:
/// sup|phi| + sup|grad phi| c2 delta M + error_bound + 1.
double y_extent(const SurfaceFunction& phi, const BuildConfig& config,
                std::size_t stage_count);

/// Radius of a ball in R^{d+1} holding every intermediate point reached
/// from B_R x [-c, c]: y can drift by sup|grad phi| c2 sum_k delta_k.
double bounding_radius(const SurfaceFunction& phi, const BuildConfig& config,
                       const StageSequence& sequence);

}  // namespace rsf
