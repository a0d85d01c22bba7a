// Copyright 2026 The rsf Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/construction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "core/error.hpp"
#include "core/random.hpp"

namespace rsf {

namespace {
constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
}

double max_cap_height(double radius) { return radius * (1.0 - kInvSqrt2); }

void BuildConfig::validate() const {
  std::ostringstream msg;
  if (dim < 2) {
    msg << "d = " << dim << " is not supported: the construction requires d >= 2";
    fail(ErrorCode::Config, msg.str());
  }
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    fail(ErrorCode::Config, "R must be a positive finite number");
  }
  if (!(delta > 0.0) || delta > max_cap_height(radius)) {
    msg << "delta = " << delta << " violates the delta-condition 0 < delta <= "
        << "R(1 - 1/sqrt(2)) = " << max_cap_height(radius);
    fail(ErrorCode::Config, msg.str());
  }
  if (!(margin > 0.0) || !std::isfinite(margin)) {
    fail(ErrorCode::Config, "margin must be a positive finite number");
  }
  if (std::find(catalog_names().begin(), catalog_names().end(), surface_name) ==
      catalog_names().end()) {
    fail(ErrorCode::Config, "unknown surface '" + surface_name + "'");
  }
}

SurfaceFunction BuildConfig::surface() const {
  return catalog(surface_name, dim, radius, surface_params);
}

namespace bounds {
double c1(double D) { return 3.0 * D / std::numbers::sqrt2; }
double c2() { return (1.0 + std::numbers::sqrt2) / 2.0; }
double c3(double D) { return c2() * c1(D); }
double c4(double D) { return 7.0 / 3.0 * c3(D); }
double c5(double D) { return 2.0 * c4(D); }

double single_projection(int dim, double r, double delta, double D, double t) {
  return c1(D) * (dim - 1) * std::sqrt(r * delta) * t;
}

double stage_deviation(int dim, double r, double delta, double D) {
  return c3(D) * (dim - 1) * std::sqrt(r) * std::pow(delta, 1.5);
}

double band_width(int dim, double R, double delta, double D) {
  return c4(D) * (dim - 1) * std::pow(R, 1.5) * std::sqrt(delta);
}
}  // namespace bounds

double delta_schedule(double stage_radius, double delta) {
  const double cap = max_cap_height(stage_radius);
  return delta <= cap ? delta : cap;
}

double stage_count_bound(double R, double delta) { return 7.0 * R / (3.0 * delta); }

double layer_count_bound(int dim, double R, double delta) {
  return 14.0 / 3.0 * dim * std::pow(32.0 * R / delta, (dim + 1) / 2.0);
}

double error_bound(int dim, double R, double delta, double D) {
  if (dim < 2) fail(ErrorCode::InvalidArgument, "error bound requires d >= 2");
  return bounds::c5(D) * (dim - 1) * std::pow(R, 1.5) * std::sqrt(delta);
}

FinalAffine final_affine(const SurfaceFunction& phi) {
  const Vector origin = Vector::Zero(phi.dim);
  return {phi.gradient(origin), phi.value(origin)};
}

ProjectionLayer tangent_layer(const SurfaceFunction& phi, const Vector& q, double radius,
                              double cap_height) {
  const double inner = radius - cap_height;
  const Vector beta = -q / q.norm();
  const Vector p = -inner * beta;
  return {HalfSpace(beta, inner), directional_derivative(phi, p, beta), p};
}

StagePlan build_stage(const SurfaceFunction& phi, double radius,
                      double cap_height, std::uint64_t seed, int index) {
  if (!(cap_height > 0.0) || cap_height > max_cap_height(radius) * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "stage " << index << ": cap height " << cap_height
        << " violates 0 < delta_k <= r_k(1 - 1/sqrt(2)) for r_k = " << radius;
    fail(ErrorCode::InvalidArgument, msg.str());
  }
  StagePlan stage;
  stage.index = index;
  stage.radius = radius;
  stage.cap_height = cap_height;
  stage.net_eps = std::sqrt(0.5 * cap_height * radius);

  const auto net = epsnet_sphere(phi.dim, radius, stage.net_eps, seed);
  stage.layers.reserve(net.size());
  for (const auto& q : net) stage.layers.push_back(tangent_layer(phi, q, radius, cap_height));
  return stage;
}

std::size_t StageSequence::layer_count() const {
  std::size_t n = 0;
  for (const auto& s : stages) n += s.layers.size();
  return n;
}

std::uint64_t stage_seed(std::uint64_t seed, int stage) {
  return splitmix64(seed ^ splitmix64(0x5eed0000ULL + static_cast<std::uint64_t>(stage)));
}

StageSequence build_sequence(const SurfaceFunction& phi, const BuildConfig& config) {
  config.validate();
  if (phi.dim != config.dim) {
    fail(ErrorCode::InvalidArgument, "surface dimension does not match the config");
  }
  StageSequence seq;
  const auto max_stages =
      static_cast<int>(std::ceil(stage_count_bound(config.radius, config.delta))) + 1;
  double r = config.radius;
  int k = 0;
  while (r > config.delta) {
    if (k >= max_stages) {
      fail(ErrorCode::InvalidArgument, "stage recurrence failed to terminate");
    }
    const double cap = delta_schedule(r, config.delta);
    seq.stages.push_back(build_stage(phi, r, cap, stage_seed(config.seed, k), k));
    r -= 0.75 * cap;
    ++k;
  }
  seq.final_radius = r;
  seq.final = final_affine(phi);
  return seq;
}

double exact_enclosing_radius_2d(const StagePlan& stage) {
  if (stage.layers.empty()) return std::numeric_limits<double>::infinity();
  if (stage.layers.front().dim() != 2) {
    fail(ErrorCode::InvalidArgument, "exact enclosing radius is only available for d = 2");
  }
  struct Line {
    double angle;
    const HalfSpace* h;
  };
  std::vector<Line> lines;
  lines.reserve(stage.layers.size());
  for (const auto& layer : stage.layers) {
    const auto& n = layer.beta();
    lines.push_back({std::atan2(n[1], n[0]), &layer.halfspace});
  }
  std::sort(lines.begin(), lines.end(),
            [](const Line& a, const Line& b) { return a.angle < b.angle; });

  double worst = 0.0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& a = lines[i];
    const auto& b = lines[(i + 1) % lines.size()];
    double gap = b.angle - a.angle;
    if (i + 1 == lines.size()) gap += 2.0 * std::numbers::pi;
    if (gap >= std::numbers::pi - 1e-15) return std::numeric_limits<double>::infinity();
    Eigen::Matrix2d m;
    m.row(0) = a.h->normal().transpose();
    m.row(1) = b.h->normal().transpose();
    const Eigen::Vector2d rhs(-a.h->offset(), -b.h->offset());
    const Eigen::Vector2d vertex = m.partialPivLu().solve(rhs);
    worst = std::max(worst, vertex.norm());
  }
  return worst;
}

double y_extent(const SurfaceFunction& phi, const BuildConfig& config,
                std::size_t stage_count) {
  return phi.sup_abs +
         phi.sup_grad * bounds::c2() * config.delta * static_cast<double>(stage_count) +
         error_bound(config.dim, config.radius, config.delta,
                     phi.second_derivative_bound) +
         1.0;
}

double bounding_radius(const SurfaceFunction& phi, const BuildConfig& config,
                       const StageSequence& sequence) {
  double cap_sum = 0.0;
  for (const auto& s : sequence.stages) cap_sum += s.cap_height;
  const double c = y_extent(phi, config, sequence.stages.size());
  const double drift = phi.sup_grad * bounds::c2() * cap_sum;
  return std::hypot(config.radius, c + drift);
}

}  // namespace rsf
