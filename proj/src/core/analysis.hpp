// Copyright 2026 The rsf Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "core/network.hpp"

namespace rsf {

/// F(x, y) for either network form.
using NetworkFn = std::function<double(const Vector&, double)>;

NetworkFn network_fn(const ModifiedNetwork& net);
NetworkFn network_fn(const ReluNetwork& net);
NetworkFn network_fn(const AnyNetwork& net);

/// |F(x, 1) - F(x, 0) + 1| allowed before the slope check fails.
inline constexpr double kSlopeTolerance = 1e-9;

/// phi_hat(x) = F(x, 0). Throws InvalidArgument when F is not affine in y
/// with slope -1 at x (checked at y = +-1).
double decision_height(const NetworkFn& net, const Vector& x,
                       double tol = kSlopeTolerance);

struct ErrorReport {
  int grid = 0;
  std::size_t points = 0;  // grid points inside the masked ball
  double sup_error = 0.0;
  double bound = 0.0;
  Vector argmax;
  double phi_at_argmax = 0.0;
  double phi_hat_at_argmax = 0.0;
  double max_slope_defect = 0.0;  // max |F(x,1) - F(x,0) + 1|
  double lipschitz = 0.0;         // max |dphi_hat| / cell over adjacent points

  bool within_bound() const { return sup_error <= bound; }
};

/// One row of the optional grid CSV.
struct GridSample {
  Vector x;
  double phi = 0.0;
  double phi_hat = 0.0;
};

/// Uniform grid of grid^d points on [-R, R]^d restricted to |x| < R - cell.
/// The maximum is taken in grid index order so ties resolve reproducibly.
ErrorReport sup_error(const NetworkFn& net, const SurfaceFunction& phi, double radius,
                      double bound, int grid, int threads = 0,
                      std::vector<GridSample>* samples = nullptr);

struct BandSpec {
  std::function<double(const Vector&)> base;
  double eps = 0.0;

  /// |f(x) - y| <= eps.
  bool contains(const Vector& x, double y) const;
};

bool band_contains(const BandSpec& band, const Vector& x, double y);

struct SignCheck {
  std::size_t samples = 0;
  std::size_t errors = 0;
  std::size_t draws = 0;  // including rejected band points
  double eps = 0.0;
  double y_extent = 0.0;

  double fraction() const {
    return samples == 0 ? 1.0 : 1.0 - static_cast<double>(errors) / samples;
  }
};

/// Samples (x, y) uniformly in B_R x [-c, c] outside the eps-band of phi and
/// compares sgn F(x, y) with sgn(phi(x) - y). Sample i uses its own stream.
SignCheck sign_check(const NetworkFn& net, const SurfaceFunction& phi, double radius,
                     double eps, double y_extent, std::size_t samples,
                     std::uint64_t seed, int threads = 0);

struct DemoPoint {
  Vector x;
  int label = 0;  // 1 where phi > 0, 2 where phi < 0
};

/// Draws n points of each class from B_R with |phi(x)| > margin.
/// Throws InvalidArgument if a class cannot be filled.
std::vector<DemoPoint> generate_demo_points(const SurfaceFunction& phi, double radius,
                                            double margin, std::size_t per_class,
                                            std::uint64_t seed);

struct Confusion {
  // counts[true label - 1][predicted]; predicted 0 means F(x, 0) == 0.
  std::size_t counts[2][3] = {{0, 0, 0}, {0, 0, 0}};

  std::size_t total() const;
  std::size_t errors() const;
};

/// Appends y = 0 to each point and classifies by sgn F(x, 0).
Confusion classify_demo(const NetworkFn& net, const std::vector<DemoPoint>& points,
                        int threads = 0);

struct Check {
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  double margin = 0.0;  // bound - measured at the tightest sample
  double tolerance = 0.0;
  std::size_t samples = 0;
  int stage = -1;  // stage of the tightest sample, -1 when global
  bool pass = true;
};

struct SuiteOptions {
  std::size_t boundary_samples = 1000;   // per stage
  std::size_t graph_samples = 10000;
  std::size_t nesting_samples = 10000;   // per stage
  std::size_t coverage_samples = 100000; // per stage
  std::size_t cap_samples = 4;           // per layer
  std::uint64_t seed = 0;
  int threads = 0;
};

struct SuiteReport {
  std::vector<Check> checks;

  bool pass() const;
  const Check* find(const std::string& name) const;
};

/// Runs every constructive check on a modified network built for phi.
SuiteReport invariant_suite(const ModifiedNetwork& net, const SurfaceFunction& phi,
                            const BuildConfig& config, const SuiteOptions& options = {});

struct ScalingPoint {
  double delta = 0.0;
  double sup_error = 0.0;
  double bound = 0.0;
  std::size_t layers = 0;
  std::size_t stages = 0;
};

struct ScalingResult {
  std::vector<ScalingPoint> points;
  double slope = 0.0;  // least-squares slope of log sup_error vs log delta
};

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Builds and measures the network at delta0, delta0/2, ... (count values).
ScalingResult scaling_sweep(const BuildConfig& base, double delta0, int count, int grid,
                            int threads = 0);

struct VerifyOptions {
  int grid = 201;
  std::size_t sign_samples = 100000;
  SuiteOptions suite;
};

struct VerifyResult {
  std::string form;
  ErrorReport error;
  SignCheck sign;
  SuiteReport checks;  // constructive checks (modified form) plus global ones
  std::size_t layers = 0;
  std::size_t stages = 0;
  double layer_bound = 0.0;
  double stage_bound = 0.0;
  double max_condition = 0.0;             // standard form only
  double max_cumulative_condition = 0.0;  // standard form only

  bool pass() const { return checks.pass(); }
};

/// Full verification of a network against the config it was built from.
/// Throws Config when the network metadata disagrees with the config.
VerifyResult verify(const AnyNetwork& net, const BuildConfig& config,
                    const VerifyOptions& options = {},
                    std::vector<GridSample>* samples = nullptr);

std::string to_json(const ErrorReport& report);
std::string to_json(const SuiteReport& report);
std::string to_json(const SignCheck& check);
std::string to_json(const VerifyResult& result);
std::string grid_csv(const std::vector<GridSample>& samples);

}  // namespace rsf
