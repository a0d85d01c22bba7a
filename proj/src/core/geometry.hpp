// Copyright 2026 The rsf Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

namespace rsf {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Largest condition number accepted for a cone or a chained layer map.
inline constexpr double kMaxCondition = 1e12;

/// Closed half-space {x : normal . x + offset >= 0} with a unit normal.
class HalfSpace {
 public:
  /// Throws InvalidArgument unless |normal| = 1 within 1e-12.
  HalfSpace(Vector normal, double offset);

  /// Normalizes `direction` (and scales `offset` accordingly).
  static HalfSpace from_direction(const Vector& direction, double offset);

  int dim() const { return static_cast<int>(normal_.size()); }
  const Vector& normal() const { return normal_; }
  double offset() const { return offset_; }

  double signed_value(const Vector& x) const { return normal_.dot(x) + offset_; }
  bool contains(const Vector& x) const { return signed_value(x) >= 0.0; }
  bool on_boundary(const Vector& x, double tol) const;

 private:
  Vector normal_;
  double offset_;
};

/// Index sets I+ / I- (0-based) of a point relative to a cone.
struct PartitionLabel {
  std::vector<int> plus;
  std::vector<int> minus;
};

/// Polyhedral cone S = {x : A x + b >= 0} of one ReLU layer together with
/// its dual basis (columns of A^{-1}) and apex (A apex + b = 0).
class Cone {
 public:
  /// Throws Conditioning when A is singular or cond(A) > kMaxCondition.
  Cone(Matrix weights, Vector bias);

  static Cone orthant(int dim);

  int dim() const { return static_cast<int>(bias_.size()); }
  const Matrix& weights() const { return weights_; }
  const Vector& bias() const { return bias_; }
  const Matrix& dual() const { return dual_; }
  const Vector& apex() const { return apex_; }
  double condition() const { return condition_; }

  /// lambda = A x + b, the coefficients of x - apex in the dual basis.
  Vector coords(const Vector& x) const;

  PartitionLabel classify(const Vector& x, double tol) const;
  PartitionLabel classify(const Vector& x) const;

  /// apex + dual . relu(A x + b); returns x untouched when x already lies in S.
  Vector project(const Vector& x) const;

 private:
  Matrix weights_;
  Vector bias_;
  Matrix dual_;
  Vector apex_;
  double condition_;
};

/// Ratio of extreme singular values; infinity for singular input.
double condition_number(const Matrix& m);

/// Default partition tolerance 1e-9 (1 + |x|).
double partition_tolerance(const Vector& x);

/// Separated eps-net of the sphere of radius r in R^d (pairwise distances
/// > eps). d = 2 is a deterministic angular construction; d >= 3 is a greedy
/// maximal separation over seeded sphere samples. Throws for d < 2.
std::vector<Vector> epsnet_sphere(int dim, double radius, double eps,
                                  std::uint64_t seed);

/// 2d (1 + 2r/eps)^(d-1).
double epsnet_cardinality_bound(int dim, double radius, double eps);

/// Uniform hash grid over points in R^d for fixed-radius neighbour queries.
class NeighborGrid {
 public:
  NeighborGrid(int dim, double cell);

  void insert(const Vector& p);
  std::size_t size() const { return points_.size(); }
  const std::vector<Vector>& points() const { return points_; }

  /// True when some stored point is within `radius` (radius <= cell).
  bool any_within(const Vector& x, double radius) const;

  /// Distance to the nearest stored point (exhaustive fallback when the
  /// neighbouring cells are empty). Infinity when empty.
  double nearest_distance(const Vector& x) const;

  /// Indices of stored points within `radius` (radius <= cell), in a fixed
  /// order.
  std::vector<std::size_t> within(const Vector& x, double radius) const;

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<std::int64_t>& key) const noexcept;
  };
  std::vector<std::int64_t> key_of(const Vector& x) const;
  template <typename Fn>
  void for_each_neighbor(const Vector& x, Fn&& fn) const;

  int dim_;
  double cell_;
  std::vector<Vector> points_;
  std::unordered_map<std::vector<std::int64_t>, std::vector<std::size_t>, KeyHash>
      cells_;
};

}  // namespace rsf
