// Copyright 2026 The rsf Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "core/construction.hpp"
#include "core/layers.hpp"

namespace rsf {

/// Build provenance carried alongside either network form.
struct NetworkMeta {
  double radius = 0.0;
  double delta = 0.0;
  double second_derivative_bound = 0.0;
  std::uint64_t seed = 0;
  std::string surface;
  double y_extent = 0.0;  // c of the evaluation box B_R x [-c, c]
  double rho = 0.0;       // radius of a ball holding every intermediate point
  double margin = 1.0;
  std::vector<double> stage_radii;  // filled for the standard form
};

/// Layer range [first, first + count) belonging to one polytope stage.
struct StageInfo {
  int index = 0;
  double radius = 0.0;
  double cap_height = 0.0;
  double net_eps = 0.0;
  std::size_t first = 0;
  std::size_t count = 0;

  double inner_radius() const { return radius - cap_height; }
};

/// Per-layer record of a point pushed through the modified network.
/// points[i] is the state after layer i-1 (points[0] is the input).
struct Trajectory {
  std::size_t first_layer = 0;
  std::vector<LiftedPoint> points;
  std::vector<double> steps;
  double path_length = 0.0;
};

/// F~ = L~ o pi_N o ... o pi_1 with layers kept in flat arrays.
class ModifiedNetwork {
 public:
  ModifiedNetwork(int dim, FinalAffine final, NetworkMeta meta = {});

  /// Flattens a stage sequence, preserving stage and net order.
  static ModifiedNetwork assemble(const StageSequence& sequence, NetworkMeta meta);

  /// Appends a stage; its layers must share the network dimension.
  void add_stage(int index, double radius, double cap_height, double net_eps,
                 const std::vector<ProjectionLayer>& layers);

  int dim() const { return dim_; }
  std::size_t size() const { return offsets_.size(); }
  ProjectionLayer layer(std::size_t i) const;
  const std::vector<StageInfo>& stages() const { return stages_; }
  const FinalAffine& final() const { return final_; }
  const NetworkMeta& meta() const { return meta_; }
  NetworkMeta& meta() { return meta_; }

  /// Replaces the y-component of layer i's projection direction.
  void set_slope(std::size_t i, double slope);

  /// Applies layers [first, last) in order.
  LiftedPoint forward(const LiftedPoint& p, std::size_t first, std::size_t last) const;
  LiftedPoint forward(const LiftedPoint& p) const { return forward(p, 0, size()); }

  /// F~(x, y) = l(x_N) - y_N.
  double evaluate(const Vector& x, double y) const;

  Trajectory trace(const Vector& x, double y) const;
  Trajectory trace(const Vector& x, double y, std::size_t first, std::size_t last) const;

  /// Whether x lies in every half-space of the given stage (within tol).
  bool inside_stage(const Vector& x, std::size_t stage, double tol) const;
  /// min over the stage's half-spaces of normal . x + offset.
  double stage_margin(const Vector& x, std::size_t stage) const;

 private:
  int dim_;
  std::vector<double> normals_;   // size() x dim_
  std::vector<double> offsets_;
  std::vector<double> slopes_;
  std::vector<double> tangents_;  // size() x dim_
  std::vector<StageInfo> stages_;
  FinalAffine final_;
  NetworkMeta meta_;
};

/// F = L o T_N o ... o T_1 with T_k(z) = relu(W_k z + b_k) of width d + 1.
struct ReluNetwork {
  int dim = 0;
  std::vector<ReluLayerParams> layers;
  Vector final_w;
  double final_b = 0.0;
  /// cond(A_k): the first k layers compose (on the cone) to A_k.
  std::vector<double> cumulative_condition;
  NetworkMeta meta;

  int width() const { return dim + 1; }
  double evaluate(const Vector& x, double y) const;
};

/// Builds phi from the config, runs the stage construction and records
/// y_extent and the bounding radius rho in the metadata.
ModifiedNetwork build_network(const BuildConfig& config);

/// Realizes each layer as a cone valid on the ball of radius rho and chains
/// them into standard ReLU layers. Throws Conditioning with the layer index.
ReluNetwork convert(const ModifiedNetwork& net, double rho, double margin);

/// Serialized network, either form.
using AnyNetwork = std::variant<ModifiedNetwork, ReluNetwork>;

/// JSON weight file with 17-significant-digit decimal strings for every
/// floating-point field (bit-exact round trip).
std::string serialize(const ModifiedNetwork& net);
std::string serialize(const ReluNetwork& net);

/// Throws Parse for malformed input and Version for an unsupported version.
AnyNetwork deserialize(const std::string& text);
ModifiedNetwork deserialize_modified(const std::string& text);
ReluNetwork deserialize_relu(const std::string& text);

/// "%.17g" and its strict inverse.
std::string format_double(double v);
double parse_double(const std::string& s);

}  // namespace rsf
