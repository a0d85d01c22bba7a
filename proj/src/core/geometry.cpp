// Copyright 2026 The rsf Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "core/error.hpp"
#include "core/random.hpp"

namespace rsf {

HalfSpace::HalfSpace(Vector normal, double offset)
    : normal_(std::move(normal)), offset_(offset) {
  if (normal_.size() == 0 || std::abs(normal_.norm() - 1.0) > 1e-12) {
    fail(ErrorCode::InvalidArgument, "half-space normal must have unit length");
  }
  if (!std::isfinite(offset_)) {
    fail(ErrorCode::InvalidArgument, "half-space offset must be finite");
  }
}

HalfSpace HalfSpace::from_direction(const Vector& direction, double offset) {
  const double n = direction.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    fail(ErrorCode::InvalidArgument, "half-space direction must be nonzero");
  }
  return HalfSpace(direction / n, offset / n);
}

bool HalfSpace::on_boundary(const Vector& x, double tol) const {
  return std::abs(signed_value(x)) <= tol;
}

double condition_number(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return std::numeric_limits<double>::infinity();
  const double smallest = s[s.size() - 1];
  if (!(smallest > 0.0)) return std::numeric_limits<double>::infinity();
  return s[0] / smallest;
}

double partition_tolerance(const Vector& x) { return 1e-9 * (1.0 + x.norm()); }

Cone::Cone(Matrix weights, Vector bias)
    : weights_(std::move(weights)), bias_(std::move(bias)) {
  const auto n = bias_.size();
  if (n == 0 || weights_.rows() != n || weights_.cols() != n) {
    fail(ErrorCode::InvalidArgument, "cone needs a square weight matrix matching the bias");
  }
  condition_ = condition_number(weights_);
  if (!(condition_ <= kMaxCondition)) {
    std::ostringstream msg;
    msg << "cone matrix is ill-conditioned (cond = " << condition_ << ")";
    fail(ErrorCode::Conditioning, msg.str());
  }
  dual_ = Eigen::PartialPivLU<Matrix>(weights_).inverse();
  apex_ = -dual_ * bias_;
}

Cone Cone::orthant(int dim) {
  return Cone(Matrix::Identity(dim, dim), Vector::Zero(dim));
}

Vector Cone::coords(const Vector& x) const { return weights_ * x + bias_; }

PartitionLabel Cone::classify(const Vector& x, double tol) const {
  const Vector lambda = coords(x);
  PartitionLabel label;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda[i] > tol) {
      label.plus.push_back(static_cast<int>(i));
    } else if (lambda[i] < -tol) {
      label.minus.push_back(static_cast<int>(i));
    }
  }
  return label;
}

PartitionLabel Cone::classify(const Vector& x) const {
  return classify(x, partition_tolerance(x));
}

Vector Cone::project(const Vector& x) const {
  const Vector lambda = coords(x);
  if ((lambda.array() >= 0.0).all()) return x;
  return apex_ + dual_ * lambda.cwiseMax(0.0);
}

double epsnet_cardinality_bound(int dim, double radius, double eps) {
  if (dim < 2) fail(ErrorCode::InvalidArgument, "eps-net bound requires d >= 2");
  if (!(eps > 0.0)) fail(ErrorCode::InvalidArgument, "eps-net bound requires eps > 0");
  return 2.0 * dim * std::pow(1.0 + 2.0 * radius / eps, dim - 1);
}

namespace {

std::vector<Vector> angular_net(double radius, double eps) {
  // Half-spacing chord <= eps (cover) while the full spacing chord stays > eps.
  const double half_angle = std::asin(std::min(eps, 2.0 * radius) / (2.0 * radius));
  const auto count = static_cast<int>(
      std::max(1.0, std::ceil(std::numbers::pi / (2.0 * half_angle) - 1e-12)));
  std::vector<Vector> net;
  net.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double theta = 2.0 * std::numbers::pi * i / count;
    Vector q(2);
    q << radius * std::cos(theta), radius * std::sin(theta);
    net.push_back(std::move(q));
  }
  return net;
}

// Point of S_r equidistant from the given sphere points (one of the two
// antipodal solutions, the one on their side). False when degenerate.
bool equidistant_point(const std::vector<const Vector*>& sites, double radius, Vector& out) {
  const auto dim = sites.front()->size();
  Matrix diff(static_cast<Eigen::Index>(sites.size()) - 1, dim);
  for (std::size_t i = 1; i < sites.size(); ++i) {
    diff.row(static_cast<Eigen::Index>(i) - 1) = (*sites[i] - *sites[0]).transpose();
  }
  Vector n;
  if (dim == 3) {
    const Eigen::Vector3d a = diff.row(0).transpose();
    const Eigen::Vector3d b = diff.row(1).transpose();
    n = a.cross(b);
  } else {
    Eigen::JacobiSVD<Matrix> svd(diff, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    if (s.size() < dim - 1 || s[s.size() - 1] < 1e-12 * s[0]) return false;
    n = svd.matrixV().col(dim - 1);
  }
  const double norm = n.norm();
  if (!(norm > 1e-14 * diff.squaredNorm())) return false;
  out = n * (radius / norm);
  if (out.dot(*sites[0]) < 0.0) out = -out;
  return true;
}

// Adds every spherical Voronoi vertex that lies farther than eps from the
// set. Vertices are enumerated from d-tuples of points pairwise within 3 eps,
// which finds every hole of radius up to 1.5 eps.
void fill_voronoi_holes(NeighborGrid& grid, int dim, double radius, double eps) {
  constexpr int kMaxPasses = 64;
  const double reach = std::min(3.0 * eps, 2.0 * radius);
  const auto tuple = static_cast<std::size_t>(dim);
  for (int pass = 0; pass < kMaxPasses; ++pass) {
    const std::vector<Vector> sites = grid.points();
    NeighborGrid near(dim, reach);
    for (const auto& p : sites) near.insert(p);
    std::vector<Vector> found;
    std::vector<std::size_t> chosen;
    std::vector<const Vector*> refs;
    Vector candidate;
    for (std::size_t i = 0; i < sites.size(); ++i) {
      std::vector<std::size_t> pool;
      for (auto j : near.within(sites[i], reach))
        if (j > i) pool.push_back(j);
      // Depth-first enumeration of (d-1)-subsets of pool, pairwise within reach.
      chosen.assign(1, i);
      auto recurse = [&](auto&& self, std::size_t start) -> void {
        if (chosen.size() == tuple) {
          refs.clear();
          for (auto c : chosen) refs.push_back(&sites[c]);
          if (!equidistant_point(refs, radius, candidate)) return;
          if (grid.any_within(candidate, eps)) return;
          grid.insert(candidate);
          found.push_back(candidate);
          return;
        }
        for (std::size_t a = start; a < pool.size(); ++a) {
          const auto& p = sites[pool[a]];
          bool close = true;
          for (std::size_t c = 1; c < chosen.size() && close; ++c) {
            close = (sites[chosen[c]] - p).norm() <= reach;
          }
          if (!close) continue;
          chosen.push_back(pool[a]);
          self(self, a + 1);
          chosen.pop_back();
        }
      };
      recurse(recurse, 0);
    }
    if (found.empty()) return;
  }
}

std::vector<Vector> greedy_net(int dim, double radius, double eps,
                               std::uint64_t seed) {
  const double bound = epsnet_cardinality_bound(dim, radius, eps);
  const auto pool = static_cast<std::uint64_t>(std::ceil(50.0 * bound));
  NeighborGrid grid(dim, eps);

  const CounterRng candidates(seed, 1);
  for (std::uint64_t i = 0; i < pool; ++i) {
    const Vector q = candidates.fork(i).on_sphere(dim, radius);
    if (!grid.any_within(q, eps)) grid.insert(q);
  }

  fill_voronoi_holes(grid, dim, radius, eps);
  return grid.points();
}

}  // namespace

std::vector<Vector> epsnet_sphere(int dim, double radius, double eps,
                                  std::uint64_t seed) {
  if (dim < 2) fail(ErrorCode::InvalidArgument, "eps-net requires d >= 2");
  if (!(radius > 0.0)) fail(ErrorCode::InvalidArgument, "eps-net requires r > 0");
  if (!(eps > 0.0)) fail(ErrorCode::InvalidArgument, "eps-net requires eps > 0");
  if (dim == 2) return angular_net(radius, eps);
  if (eps >= 2.0 * radius) {
    Vector q = Vector::Zero(dim);
    q[0] = radius;
    return {q};
  }
  return greedy_net(dim, radius, eps, seed);
}

// --- NeighborGrid ----------------------------------------------------------

NeighborGrid::NeighborGrid(int dim, double cell) : dim_(dim), cell_(cell) {
  if (dim < 1 || !(cell > 0.0)) {
    fail(ErrorCode::InvalidArgument, "neighbor grid needs d >= 1 and cell > 0");
  }
}

std::size_t NeighborGrid::KeyHash::operator()(
    const std::vector<std::int64_t>& key) const noexcept {
  std::uint64_t h = 0x84222325cbf29ce4ULL;
  for (auto k : key) h = splitmix64(h ^ static_cast<std::uint64_t>(k));
  return static_cast<std::size_t>(h);
}

std::vector<std::int64_t> NeighborGrid::key_of(const Vector& x) const {
  std::vector<std::int64_t> key(dim_);
  for (int i = 0; i < dim_; ++i) {
    key[i] = static_cast<std::int64_t>(std::floor(x[i] / cell_));
  }
  return key;
}

template <typename Fn>
void NeighborGrid::for_each_neighbor(const Vector& x, Fn&& fn) const {
  const auto base = key_of(x);
  std::vector<std::int64_t> key(base);
  std::vector<int> offset(dim_, -1);
  while (true) {
    for (int i = 0; i < dim_; ++i) key[i] = base[i] + offset[i];
    if (auto it = cells_.find(key); it != cells_.end()) {
      for (auto idx : it->second) {
        if (fn(idx)) return;
      }
    }
    int i = 0;
    while (i < dim_ && offset[i] == 1) offset[i++] = -1;
    if (i == dim_) break;
    ++offset[i];
  }
}

void NeighborGrid::insert(const Vector& p) {
  cells_[key_of(p)].push_back(points_.size());
  points_.push_back(p);
}

bool NeighborGrid::any_within(const Vector& x, double radius) const {
  const double r2 = radius * radius;
  bool found = false;
  for_each_neighbor(x, [&](std::size_t i) {
    found = (points_[i] - x).squaredNorm() <= r2;
    return found;
  });
  return found;
}

double NeighborGrid::nearest_distance(const Vector& x) const {
  double best = std::numeric_limits<double>::infinity();
  for_each_neighbor(x, [&](std::size_t i) {
    best = std::min(best, (points_[i] - x).squaredNorm());
    return false;
  });
  if (best > cell_ * cell_) {
    for (const auto& p : points_) best = std::min(best, (p - x).squaredNorm());
  }
  return std::sqrt(best);
}

std::vector<std::size_t> NeighborGrid::within(const Vector& x, double radius) const {
  const double r2 = radius * radius;
  std::vector<std::size_t> out;
  for_each_neighbor(x, [&](std::size_t i) {
    if ((points_[i] - x).squaredNorm() <= r2) out.push_back(i);
    return false;
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace rsf
