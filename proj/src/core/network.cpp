// Copyright 2026 The rsf Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/network.hpp"

#include <algorithm>
#include <limits>
#include <optional>

#include "core/error.hpp"

namespace rsf {

ModifiedNetwork::ModifiedNetwork(int dim, FinalAffine final, NetworkMeta meta)
    : dim_(dim), final_(std::move(final)), meta_(std::move(meta)) {
  if (dim_ < 1) fail(ErrorCode::InvalidArgument, "network dimension must be positive");
  if (final_.w.size() != dim_) {
    fail(ErrorCode::InvalidArgument, "final affine map has the wrong dimension");
  }
}

ModifiedNetwork ModifiedNetwork::assemble(const StageSequence& sequence,
                                          NetworkMeta meta) {
  ModifiedNetwork net(static_cast<int>(sequence.final.w.size()), sequence.final,
                      std::move(meta));
  for (const auto& stage : sequence.stages) {
    net.add_stage(stage.index, stage.radius, stage.cap_height, stage.net_eps,
                  stage.layers);
  }
  return net;
}

void ModifiedNetwork::add_stage(int index, double radius, double cap_height,
                                double net_eps,
                                const std::vector<ProjectionLayer>& layers) {
  StageInfo info{index, radius, cap_height, net_eps, size(), layers.size()};
  for (const auto& layer : layers) {
    if (layer.dim() != dim_ || layer.tangent_point.size() != dim_) {
      fail(ErrorCode::InvalidArgument, "layer dimension does not match the network");
    }
    const auto& n = layer.beta();
    normals_.insert(normals_.end(), n.data(), n.data() + dim_);
    tangents_.insert(tangents_.end(), layer.tangent_point.data(),
                     layer.tangent_point.data() + dim_);
    offsets_.push_back(layer.halfspace.offset());
    slopes_.push_back(layer.slope);
  }
  stages_.push_back(info);
}

ProjectionLayer ModifiedNetwork::layer(std::size_t i) const {
  const auto d = static_cast<std::size_t>(dim_);
  Vector normal = Eigen::Map<const Vector>(normals_.data() + i * d, dim_);
  Vector tangent = Eigen::Map<const Vector>(tangents_.data() + i * d, dim_);
  return {HalfSpace(std::move(normal), offsets_[i]), slopes_[i], std::move(tangent)};
}

void ModifiedNetwork::set_slope(std::size_t i, double slope) { slopes_.at(i) = slope; }

LiftedPoint ModifiedNetwork::forward(const LiftedPoint& p, std::size_t first,
                                     std::size_t last) const {
  LiftedPoint out = p;
  double* x = out.x.data();
  const auto d = static_cast<std::size_t>(dim_);
  for (std::size_t i = first; i < last; ++i) {
    const double* n = normals_.data() + i * d;
    double value = offsets_[i];
    for (std::size_t k = 0; k < d; ++k) value += n[k] * x[k];
    if (value >= 0.0) continue;
    const double t = -value;
    for (std::size_t k = 0; k < d; ++k) x[k] += t * n[k];
    out.y += t * slopes_[i];
  }
  return out;
}

double ModifiedNetwork::evaluate(const Vector& x, double y) const {
  const auto out = forward({x, y});
  return final_.evaluate(out.x, out.y);
}

Trajectory ModifiedNetwork::trace(const Vector& x, double y) const {
  return trace(x, y, 0, size());
}

Trajectory ModifiedNetwork::trace(const Vector& x, double y, std::size_t first,
                                  std::size_t last) const {
  Trajectory tr;
  tr.first_layer = first;
  tr.points.reserve(last - first + 1);
  tr.steps.reserve(last - first);
  tr.points.push_back({x, y});
  for (std::size_t i = first; i < last; ++i) {
    double t = 0.0;
    tr.points.push_back(apply_projection_layer(layer(i), tr.points.back(), &t));
    tr.steps.push_back(t);
    tr.path_length += t;
  }
  return tr;
}

double ModifiedNetwork::stage_margin(const Vector& x, std::size_t stage) const {
  const auto& info = stages_.at(stage);
  const auto d = static_cast<std::size_t>(dim_);
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = info.first; i < info.first + info.count; ++i) {
    const double* n = normals_.data() + i * d;
    double value = offsets_[i];
    for (std::size_t k = 0; k < d; ++k) value += n[k] * x[k];
    worst = std::min(worst, value);
  }
  return worst;
}

bool ModifiedNetwork::inside_stage(const Vector& x, std::size_t stage, double tol) const {
  return stage_margin(x, stage) >= -tol;
}

double ReluNetwork::evaluate(const Vector& x, double y) const {
  Vector z(dim + 1);
  z.head(dim) = x;
  z[dim] = y;
  for (const auto& layer : layers) z = layer.apply(z);
  return final_w.dot(z) + final_b;
}

ModifiedNetwork build_network(const BuildConfig& config) {
  config.validate();
  const auto phi = config.surface();
  const auto sequence = build_sequence(phi, config);
  NetworkMeta meta;
  meta.radius = config.radius;
  meta.delta = config.delta;
  meta.second_derivative_bound = phi.second_derivative_bound;
  meta.seed = config.seed;
  meta.surface = config.surface_name;
  meta.y_extent = y_extent(phi, config, sequence.stages.size());
  meta.rho = bounding_radius(phi, config, sequence);
  meta.margin = config.margin;
  return ModifiedNetwork::assemble(sequence, std::move(meta));
}

ReluNetwork convert(const ModifiedNetwork& net, double rho, double margin) {
  const int d = net.dim();
  ReluNetwork out;
  out.dim = d;
  out.meta = net.meta();
  out.meta.rho = rho;
  out.meta.margin = margin;
  out.meta.stage_radii.clear();
  for (const auto& s : net.stages()) out.meta.stage_radii.push_back(s.radius);
  out.layers.reserve(net.size());
  out.cumulative_condition.reserve(net.size());

  // Head L~(u) = v . u + w0 with v = (w, -1).
  Vector head(d + 1);
  head.head(d) = net.final().w;
  head[d] = -1.0;

  if (net.size() == 0) {
    out.final_w = head;
    out.final_b = net.final().w0;
    return out;
  }

  std::optional<Cone> previous;
  for (std::size_t i = 0; i < net.size(); ++i) {
    Cone cone = realize_cone(net.layer(i), rho, margin);
    out.layers.push_back(to_relu_pair(cone, previous ? &*previous : nullptr, i));
    out.cumulative_condition.push_back(cone.condition());
    previous = std::move(cone);
  }
  // L = L~ o A_N^{-1}: z -> v . dual (z - b_N) + w0.
  out.final_w = previous->dual().transpose() * head;
  out.final_b = net.final().w0 - out.final_w.dot(previous->bias());
  return out;
}

}  // namespace rsf
