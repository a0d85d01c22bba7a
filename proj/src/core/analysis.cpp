// Copyright 2026 The rsf Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "core/error.hpp"
#include "core/parallel.hpp"
#include "core/random.hpp"

namespace rsf {

using nlohmann::json;

NetworkFn network_fn(const ModifiedNetwork& net) {
  return [&net](const Vector& x, double y) { return net.evaluate(x, y); };
}

NetworkFn network_fn(const ReluNetwork& net) {
  return [&net](const Vector& x, double y) { return net.evaluate(x, y); };
}

NetworkFn network_fn(const AnyNetwork& net) {
  return std::visit([](const auto& n) { return network_fn(n); }, net);
}

double decision_height(const NetworkFn& net, const Vector& x, double tol) {
  const double f0 = net(x, 0.0);
  const double up = net(x, 1.0) - f0 + 1.0;
  const double down = net(x, -1.0) - f0 - 1.0;
  if (!(std::abs(up) <= tol) || !(std::abs(down) <= tol)) {
    std::ostringstream msg;
    msg << "network is not affine in y with slope -1 (defect " << std::max(std::abs(up), std::abs(down))
        << ")";
    fail(ErrorCode::InvalidArgument, msg.str());
  }
  return f0;
}

// --- sup error ---------------------------------------------------------------

ErrorReport sup_error(const NetworkFn& net, const SurfaceFunction& phi, double radius,
                      double bound, int grid, int threads,
                      std::vector<GridSample>* samples) {
  if (grid < 2) fail(ErrorCode::InvalidArgument, "grid resolution must be at least 2");
  const int d = phi.dim;
  const double cell = 2.0 * radius / (grid - 1);
  const double limit = radius - cell;
  std::size_t total = 1;
  for (int i = 0; i < d; ++i) total *= static_cast<std::size_t>(grid);

  auto coord = [&](std::size_t index) {
    Vector x(d);
    for (int i = 0; i < d; ++i) {
      x[i] = -radius + cell * static_cast<double>(index % grid);
      index /= grid;
    }
    return x;
  };

  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> height(total, nan);
  std::vector<double> error(total, nan);
  std::vector<double> defect(total, 0.0);
  parallel_for(total, threads, [&](std::size_t i) {
    const Vector x = coord(i);
    if (!(x.norm() < limit)) return;
    const double f0 = net(x, 0.0);
    defect[i] = std::abs(net(x, 1.0) - f0 + 1.0);
    height[i] = f0;
    error[i] = std::abs(phi(x) - f0);
  });

  ErrorReport report;
  report.grid = grid;
  report.bound = bound;
  report.argmax = Vector::Zero(d);
  std::size_t best = total;
  std::size_t stride = 1;
  std::vector<std::size_t> strides(d);
  for (int i = 0; i < d; ++i) {
    strides[i] = stride;
    stride *= static_cast<std::size_t>(grid);
  }
  for (std::size_t i = 0; i < total; ++i) {
    if (std::isnan(height[i])) continue;
    ++report.points;
    if (best == total || error[i] > report.sup_error) {
      best = i;
      report.sup_error = error[i];
    }
    report.max_slope_defect = std::max(report.max_slope_defect, defect[i]);
    for (int k = 0; k < d; ++k) {
      if ((i / strides[k]) % grid + 1 >= static_cast<std::size_t>(grid)) continue;
      const double next = height[i + strides[k]];
      if (std::isnan(next)) continue;
      report.lipschitz = std::max(report.lipschitz, std::abs(next - height[i]) / cell);
    }
  }
  if (best != total) {
    report.argmax = coord(best);
    report.phi_at_argmax = phi(report.argmax);
    report.phi_hat_at_argmax = height[best];
  }
  if (samples != nullptr) {
    samples->clear();
    samples->reserve(report.points);
    for (std::size_t i = 0; i < total; ++i) {
      if (std::isnan(height[i])) continue;
      Vector x = coord(i);
      const double value = phi(x);
      samples->push_back({std::move(x), value, height[i]});
    }
  }
  return report;
}

// --- band and sign check -------------------------------------------------------

bool BandSpec::contains(const Vector& x, double y) const {
  return std::abs(base(x) - y) <= eps;
}

bool band_contains(const BandSpec& band, const Vector& x, double y) {
  return band.contains(x, y);
}

namespace {
int sign_of(double v) { return (v > 0.0) - (v < 0.0); }
}  // namespace

SignCheck sign_check(const NetworkFn& net, const SurfaceFunction& phi, double radius,
                     double eps, double y_extent, std::size_t samples,
                     std::uint64_t seed, int threads) {
  constexpr int kMaxAttempts = 100000;
  const BandSpec band{phi.value, eps};
  const CounterRng base(seed, 21);
  std::vector<unsigned char> wrong(samples, 0);
  std::vector<std::size_t> draws(samples, 0);
  parallel_for(samples, threads, [&](std::size_t i) {
    auto rng = base.fork(i);
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
      const Vector x = rng.in_ball(phi.dim, radius);
      const double y = rng.uniform(-y_extent, y_extent);
      ++draws[i];
      if (band.contains(x, y)) continue;
      const int expected = sign_of(phi(x) - y);
      wrong[i] = sign_of(net(x, y)) != expected;
      return;
    }
    fail(ErrorCode::InvalidArgument, "sign check: the band covers the sampling box");
  });
  SignCheck result;
  result.samples = samples;
  result.eps = eps;
  result.y_extent = y_extent;
  for (std::size_t i = 0; i < samples; ++i) {
    result.errors += wrong[i];
    result.draws += draws[i];
  }
  return result;
}

// --- classification demo -------------------------------------------------------

std::vector<DemoPoint> generate_demo_points(const SurfaceFunction& phi, double radius,
                                            double margin, std::size_t per_class,
                                            std::uint64_t seed) {
  const CounterRng base(seed, 31);
  std::vector<DemoPoint> positive;
  std::vector<DemoPoint> negative;
  const std::uint64_t budget = 10000 * (per_class + 1);
  for (std::uint64_t i = 0; i < budget; ++i) {
    if (positive.size() == per_class && negative.size() == per_class) break;
    auto rng = base.fork(i);
    Vector x = rng.in_ball(phi.dim, radius);
    const double value = phi(x);
    if (value > margin && positive.size() < per_class) {
      positive.push_back({std::move(x), 1});
    } else if (value < -margin && negative.size() < per_class) {
      negative.push_back({std::move(x), 2});
    }
  }
  if (positive.size() < per_class || negative.size() < per_class) {
    fail(ErrorCode::InvalidArgument,
         "cannot draw enough points with |phi| above the margin on both sides");
  }
  positive.insert(positive.end(), std::make_move_iterator(negative.begin()),
                  std::make_move_iterator(negative.end()));
  return positive;
}

std::size_t Confusion::total() const {
  std::size_t n = 0;
  for (const auto& row : counts)
    for (auto c : row) n += c;
  return n;
}

std::size_t Confusion::errors() const { return total() - counts[0][1] - counts[1][2]; }

Confusion classify_demo(const NetworkFn& net, const std::vector<DemoPoint>& points,
                        int threads) {
  std::vector<int> predicted(points.size(), 0);
  parallel_for(points.size(), threads, [&](std::size_t i) {
    const double f = net(points[i].x, 0.0);
    predicted[i] = f > 0.0 ? 1 : (f < 0.0 ? 2 : 0);
  });
  Confusion c;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const int label = points[i].label;
    if (label != 1 && label != 2) fail(ErrorCode::InvalidArgument, "demo labels must be 1 or 2");
    ++c.counts[label - 1][predicted[i]];
  }
  return c;
}

// --- invariant suite -----------------------------------------------------------

bool SuiteReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const Check* SuiteReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

// Keeps the sample with the smallest margin. Lower-bound checks measure
// margin as measured - bound.
class Tracker {
 public:
  Tracker(std::string name, double tolerance, bool lower = false) : lower_(lower) {
    check_.name = std::move(name);
    check_.tolerance = tolerance;
  }

  void observe(double measured, double bound, int stage = -1) {
    double margin = lower_ ? measured - bound : bound - measured;
    if (std::isnan(margin)) margin = -std::numeric_limits<double>::infinity();
    ++check_.samples;
    if (check_.samples == 1 || margin < check_.margin) {
      check_.measured = measured;
      check_.bound = bound;
      check_.margin = margin;
      check_.stage = stage;
    }
  }

  Check done() const {
    Check c = check_;
    c.pass = c.samples == 0 || c.margin >= -c.tolerance;
    return c;
  }

 private:
  Check check_;
  bool lower_;
};

struct StageTraceSample {
  double landing = 0.0;
  double path = 0.0;
  double step_measured = 0.0;
  double step_bound = 0.0;
  bool has_step = false;
  double y_deviation = 0.0;
};

struct PairSummary {
  double min_distance = std::numeric_limits<double>::infinity();
  double angle_measured = 0.0;
  double angle_bound = 0.0;
  double angle_margin = std::numeric_limits<double>::infinity();
  std::size_t angle_pairs = 0;
};

Vector unit_orthogonal(CounterRng& rng, const Vector& beta) {
  while (true) {
    Vector v = rng.on_sphere(static_cast<int>(beta.size()), 1.0);
    v -= v.dot(beta) * beta;
    const double n = v.norm();
    if (n > 1e-8) return v / n;
  }
}

}  // namespace

SuiteReport invariant_suite(const ModifiedNetwork& net, const SurfaceFunction& phi,
                            const BuildConfig& config, const SuiteOptions& options) {
  const int d = net.dim();
  const double D = phi.second_derivative_bound;
  const double R = config.radius;
  const double delta = config.delta;
  const auto& stages = net.stages();
  const std::size_t M = stages.size();
  const int threads = options.threads;

  Tracker delta_condition("delta_condition", 1e-12);
  Tracker eps_relation("eps_relation", 1e-14);
  Tracker tangency("tangency", 1e-12 * (1.0 + R));
  Tracker landing("stage_landing", 1e-9);
  Tracker path("path_length", 1e-9);
  Tracker step("step_bound", 1e-9);
  Tracker y_deviation("y_deviation", 1e-9);
  Tracker single("single_projection", 1e-9);
  Tracker angle("hyperplane_angle", 1e-9, true);
  Tracker graph("graph_image", 1e-9);
  Tracker final_boundary("final_boundary", 1e-9);
  Tracker nesting("nesting", 1e-12);
  Tracker enclosing("enclosing_radius", 1e-12);
  Tracker enclosing_exact("enclosing_radius_exact", 1e-12);
  Tracker recurrence("radius_recurrence", 1e-12);
  Tracker stopping("stopping_rule", 0.0);
  Tracker separation("net_separation", 0.0, true);
  Tracker cardinality("net_cardinality", 0.0);
  Tracker coverage("net_coverage", 1e-12);
  Tracker stage_count("stage_count", 0.0);
  Tracker layer_count("layer_count", 0.0);

  for (std::size_t k = 0; k < M; ++k) {
    const auto& s = stages[k];
    const int sk = static_cast<int>(k);
    const double r = s.radius;
    const double cap = s.cap_height;
    const double inner = s.inner_radius();
    const std::size_t first = s.first;
    const std::size_t last = s.first + s.count;

    delta_condition.observe(cap, max_cap_height(r), sk);
    eps_relation.observe(std::abs(s.net_eps * s.net_eps - 0.5 * cap * r) / (0.5 * cap * r), 0.0,
                         sk);
    cardinality.observe(static_cast<double>(s.count), epsnet_cardinality_bound(d, r, s.net_eps),
                        sk);
    const double next = k + 1 < M ? stages[k + 1].radius : r - 0.75 * cap;
    recurrence.observe(next, r - 0.75 * cap, sk);

    std::vector<ProjectionLayer> layers;
    layers.reserve(s.count);
    for (std::size_t i = first; i < last; ++i) {
      layers.push_back(net.layer(i));
      const auto& l = layers.back();
      const double t = std::max({std::abs(l.halfspace.offset() - inner),
                                 std::abs(l.tangent_point.norm() - inner),
                                 std::abs(l.halfspace.signed_value(l.tangent_point))});
      tangency.observe(t, 0.0, sk);
    }

    // Pairs: net separation and the angle between intersecting hyperplanes.
    std::vector<PairSummary> pairs(layers.size());
    const double angle_bound = (r * r - 4.0 * r * cap + 2.0 * cap * cap) / (r * r);
    parallel_for(layers.size(), threads, [&](std::size_t i) {
      auto& out = pairs[i];
      const auto& bi = layers[i].beta();
      for (std::size_t j = i + 1; j < layers.size(); ++j) {
        const auto& bj = layers[j].beta();
        out.min_distance = std::min(out.min_distance, r * (bi - bj).norm());
        const double c = bi.dot(bj);
        const double det = 1.0 - c * c;
        if (det < 1e-14) continue;
        // Least-norm point on both hyperplanes: x = l_i b_i + l_j b_j.
        Eigen::Matrix2d gram;
        gram << 1.0, c, c, 1.0;
        const Eigen::Vector2d rhs(-layers[i].halfspace.offset(), -layers[j].halfspace.offset());
        const Eigen::Vector2d lambda = gram.ldlt().solve(rhs);
        const Vector x = lambda[0] * bi + lambda[1] * bj;
        if (x.norm() > r) continue;
        ++out.angle_pairs;
        if (c - angle_bound < out.angle_margin) {
          out.angle_margin = c - angle_bound;
          out.angle_measured = c;
          out.angle_bound = angle_bound;
        }
      }
    });
    double min_distance = std::numeric_limits<double>::infinity();
    for (const auto& p : pairs) {
      min_distance = std::min(min_distance, p.min_distance);
      if (p.angle_pairs > 0) angle.observe(p.angle_measured, p.angle_bound, sk);
    }
    if (layers.size() > 1) separation.observe(min_distance, s.net_eps, sk);

    // Coverage of the sphere by the net.
    NeighborGrid grid(d, s.net_eps);
    for (const auto& l : layers) grid.insert(-r * l.beta());
    std::vector<double> nearest(options.coverage_samples);
    const CounterRng cover_rng = CounterRng(options.seed, 41).fork(k);
    parallel_for(nearest.size(), threads, [&](std::size_t i) {
      auto rng = cover_rng.fork(i);
      nearest[i] = grid.nearest_distance(rng.on_sphere(d, r));
    });
    double worst_cover = 0.0;
    for (double v : nearest) worst_cover = std::max(worst_cover, v);
    if (!nearest.empty()) coverage.observe(worst_cover, s.net_eps, sk);

    // Boundary starts on S_r traced through this stage only.
    std::vector<StageTraceSample> traces(options.boundary_samples);
    const CounterRng trace_rng = CounterRng(options.seed, 11).fork(k);
    const double path_bound = bounds::c2() * cap;
    const double y_bound = bounds::stage_deviation(d, r, cap, D);
    parallel_for(traces.size(), threads, [&](std::size_t i) {
      auto rng = trace_rng.fork(i);
      const Vector x0 = rng.on_sphere(d, r);
      const auto tr = net.trace(x0, phi(x0), first, last);
      auto& out = traces[i];
      const auto& end = tr.points.back();
      out.landing = std::abs(net.stage_margin(end.x, k));
      out.path = tr.path_length;
      out.y_deviation = std::abs(end.y - phi(end.x));
      double worst = std::numeric_limits<double>::infinity();
      for (std::size_t n = 0; n < tr.steps.size(); ++n) {
        const double t = tr.steps[n];
        if (!(t > 0.0)) continue;
        const double bound = (tr.points[n].x.squaredNorm() - tr.points[n + 1].x.squaredNorm()) /
                             (2.0 * inner);
        if (!out.has_step || bound - t < worst) {
          worst = bound - t;
          out.step_measured = t;
          out.step_bound = bound;
          out.has_step = true;
        }
      }
    });
    for (const auto& t : traces) {
      landing.observe(t.landing, 0.0, sk);
      path.observe(t.path, path_bound, sk);
      if (t.has_step) step.observe(t.step_measured, t.step_bound, sk);
      y_deviation.observe(t.y_deviation, y_bound, sk);
    }

    // One projection of sampled cap points.
    const std::size_t per_layer = options.cap_samples;
    std::vector<double> cap_measured(layers.size() * per_layer);
    std::vector<double> cap_bound(cap_measured.size());
    const CounterRng cap_rng = CounterRng(options.seed, 51).fork(k);
    parallel_for(cap_measured.size(), threads, [&](std::size_t n) {
      const auto& l = layers[n / per_layer];
      auto rng = cap_rng.fork(n);
      const Vector& beta = l.beta();
      const double h = r - cap * rng.uniform();
      const double spread = std::sqrt(std::max(r * r - h * h, 0.0));
      const Vector x = -h * beta + std::sqrt(rng.uniform()) * spread * unit_orthogonal(rng, beta);
      const double t = -l.halfspace.signed_value(x);
      cap_measured[n] = std::abs(phi(x) + t * l.slope - phi(x + t * beta));
      cap_bound[n] = bounds::single_projection(d, r, cap, D, std::max(t, 0.0));
    });
    for (std::size_t n = 0; n < cap_measured.size(); ++n) {
      single.observe(cap_measured[n], cap_bound[n], sk);
    }

    // The stage polytope lies inside the next radius.
    std::vector<double> outside(options.nesting_samples);
    const CounterRng sphere_rng = CounterRng(options.seed, 61).fork(k);
    parallel_for(outside.size(), threads, [&](std::size_t i) {
      auto rng = sphere_rng.fork(i);
      outside[i] = net.stage_margin(rng.on_sphere(d, next), k);
    });
    for (double v : outside) enclosing.observe(v, 0.0, sk);
    if (d == 2) {
      StagePlan plan;
      plan.radius = r;
      plan.cap_height = cap;
      plan.layers = layers;
      enclosing_exact.observe(exact_enclosing_radius_2d(plan), r - 0.75 * cap, sk);
    }

    // Membership in this polytope implies membership in the previous one.
    if (k > 0) {
      std::vector<double> prev(options.nesting_samples, -std::numeric_limits<double>::infinity());
      std::vector<unsigned char> inside(options.nesting_samples, 0);
      const CounterRng ball_rng = CounterRng(options.seed, 71).fork(k);
      parallel_for(prev.size(), threads, [&](std::size_t i) {
        auto rng = ball_rng.fork(i);
        const Vector x = rng.in_ball(d, r);
        if (net.stage_margin(x, k) < 0.0) return;
        inside[i] = 1;
        prev[i] = net.stage_margin(x, k - 1);
      });
      for (std::size_t i = 0; i < prev.size(); ++i) {
        if (inside[i]) nesting.observe(-prev[i], 0.0, sk);
      }
    }
  }

  if (M > 0) {
    const auto& tail = stages.back();
    stopping.observe(tail.radius - 0.75 * tail.cap_height, delta);
  }
  stage_count.observe(static_cast<double>(M), stage_count_bound(R, delta));
  layer_count.observe(static_cast<double>(net.size()), layer_count_bound(d, R, delta));

  // Graph samples pushed through every stage.
  struct GraphSample {
    bool moved = false;
    double deviation = 0.0;
    double boundary = 0.0;
  };
  std::vector<GraphSample> pushed(options.graph_samples);
  const double band = bounds::band_width(d, R, delta, D);
  const CounterRng graph_rng(options.seed, 81);
  parallel_for(pushed.size(), threads, [&](std::size_t i) {
    auto rng = graph_rng.fork(i);
    const Vector x0 = rng.in_ball(d, R);
    const auto out = net.forward({x0, phi(x0)});
    auto& g = pushed[i];
    g.moved = (out.x.array() != x0.array()).any();
    g.deviation = std::abs(out.y - phi(out.x));
    if (g.moved && M > 0) g.boundary = std::abs(net.stage_margin(out.x, M - 1));
  });
  for (const auto& g : pushed) {
    graph.observe(g.deviation, g.moved ? band : 0.0);
    if (g.moved) final_boundary.observe(g.boundary, 0.0);
  }

  SuiteReport report;
  for (const auto* t : {&delta_condition, &eps_relation, &tangency, &landing, &path, &step,
                        &y_deviation, &single, &angle, &graph, &final_boundary, &nesting,
                        &enclosing, &recurrence, &stopping, &separation, &cardinality,
                        &coverage, &stage_count, &layer_count}) {
    report.checks.push_back(t->done());
  }
  if (d == 2) report.checks.push_back(enclosing_exact.done());
  return report;
}

// --- scaling sweep ---------------------------------------------------------------

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    fail(ErrorCode::InvalidArgument, "slope fit needs at least two matching points");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      fail(ErrorCode::InvalidArgument, "slope fit needs positive values");
    }
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ScalingResult scaling_sweep(const BuildConfig& base, double delta0, int count, int grid,
                            int threads) {
  ScalingResult result;
  std::vector<double> deltas;
  std::vector<double> errors;
  for (int i = 0; i < count; ++i) {
    BuildConfig config = base;
    config.delta = delta0 / std::pow(2.0, i);
    const auto net = build_network(config);
    const auto phi = config.surface();
    const double bound =
        error_bound(config.dim, config.radius, config.delta, phi.second_derivative_bound);
    const auto report = sup_error(network_fn(net), phi, config.radius, bound, grid, threads);
    result.points.push_back(
        {config.delta, report.sup_error, bound, net.size(), net.stages().size()});
    deltas.push_back(config.delta);
    errors.push_back(report.sup_error);
  }
  result.slope = loglog_slope(deltas, errors);
  return result;
}

// --- verify ------------------------------------------------------------------------

namespace {

void require_match(const NetworkMeta& meta, int dim, const BuildConfig& config) {
  std::ostringstream msg;
  if (dim != config.dim) {
    msg << "network has d = " << dim << " but the config has d = " << config.dim;
  } else if (meta.radius != config.radius) {
    msg << "network was built with R = " << meta.radius << " but the config has R = "
        << config.radius;
  } else if (meta.delta != config.delta) {
    msg << "network was built with delta = " << meta.delta << " but the config has delta = "
        << config.delta;
  } else if (meta.surface != config.surface_name) {
    msg << "network was built for surface '" << meta.surface << "' but the config names '"
        << config.surface_name << "'";
  } else {
    return;
  }
  fail(ErrorCode::Config, msg.str());
}

}  // namespace

VerifyResult verify(const AnyNetwork& any, const BuildConfig& config,
                    const VerifyOptions& options, std::vector<GridSample>* samples) {
  config.validate();
  const auto phi = config.surface();
  VerifyResult result;
  const NetworkMeta* meta = nullptr;
  if (const auto* net = std::get_if<ModifiedNetwork>(&any)) {
    require_match(net->meta(), net->dim(), config);
    result.form = "modified";
    result.layers = net->size();
    result.stages = net->stages().size();
    meta = &net->meta();
    result.checks = invariant_suite(*net, phi, config, options.suite);
  } else {
    const auto& relu = std::get<ReluNetwork>(any);
    require_match(relu.meta, relu.dim, config);
    result.form = "relu";
    result.layers = relu.layers.size();
    result.stages = relu.meta.stage_radii.size();
    meta = &relu.meta;
    for (std::size_t i = 0; i < relu.layers.size(); ++i) {
      result.max_condition = std::max(result.max_condition, relu.layers[i].condition);
      result.max_cumulative_condition =
          std::max(result.max_cumulative_condition, relu.cumulative_condition[i]);
    }
    Tracker stage_count("stage_count", 0.0);
    Tracker layer_count("layer_count", 0.0);
    stage_count.observe(static_cast<double>(result.stages),
                        stage_count_bound(config.radius, config.delta));
    layer_count.observe(static_cast<double>(result.layers),
                        layer_count_bound(config.dim, config.radius, config.delta));
    result.checks.checks.push_back(stage_count.done());
    result.checks.checks.push_back(layer_count.done());
  }
  result.layer_bound = layer_count_bound(config.dim, config.radius, config.delta);
  result.stage_bound = stage_count_bound(config.radius, config.delta);

  const auto fn = network_fn(any);
  const double bound =
      error_bound(config.dim, config.radius, config.delta, phi.second_derivative_bound);
  result.error = sup_error(fn, phi, config.radius, bound, options.grid, options.suite.threads,
                           samples);
  result.sign = sign_check(fn, phi, config.radius, bound, meta->y_extent, options.sign_samples,
                           options.suite.seed, options.suite.threads);

  // Float residue when the bound collapses to zero (D = 0).
  Tracker sup("sup_error", 1e-9);
  sup.observe(result.error.sup_error, bound);
  Tracker slope("slope", kSlopeTolerance);
  slope.observe(result.error.max_slope_defect, 0.0);
  Tracker sign("sign_check", 0.0);
  sign.observe(static_cast<double>(result.sign.errors), 0.0);
  result.checks.checks.push_back(sup.done());
  result.checks.checks.push_back(slope.done());
  result.checks.checks.push_back(sign.done());
  return result;
}

// --- JSON --------------------------------------------------------------------------

namespace {

json vector_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json error_json(const ErrorReport& r) {
  return {{"grid", r.grid},
          {"points", r.points},
          {"sup_error", r.sup_error},
          {"bound", r.bound},
          {"within_bound", r.within_bound()},
          {"argmax", vector_json(r.argmax)},
          {"phi_at_argmax", r.phi_at_argmax},
          {"phi_hat_at_argmax", r.phi_hat_at_argmax},
          {"max_slope_defect", r.max_slope_defect},
          {"lipschitz", r.lipschitz}};
}

json suite_json(const SuiteReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json entry = {{"name", c.name},       {"measured", c.measured}, {"bound", c.bound},
                  {"margin", c.margin},   {"tolerance", c.tolerance},
                  {"samples", c.samples}, {"pass", c.pass}};
    if (c.stage >= 0) entry["stage"] = c.stage;
    checks.push_back(std::move(entry));
  }
  return {{"pass", r.pass()}, {"checks", checks}};
}

json sign_json(const SignCheck& s) {
  return {{"samples", s.samples}, {"errors", s.errors},     {"draws", s.draws},
          {"eps", s.eps},         {"y_extent", s.y_extent}, {"fraction", s.fraction()}};
}

}  // namespace

std::string to_json(const ErrorReport& report) { return error_json(report).dump(2) + "\n"; }
std::string to_json(const SuiteReport& report) { return suite_json(report).dump(2) + "\n"; }
std::string to_json(const SignCheck& check) { return sign_json(check).dump(2) + "\n"; }

std::string to_json(const VerifyResult& result) {
  json failing = json::array();
  for (const auto& c : result.checks.checks)
    if (!c.pass) failing.push_back(c.name);
  json j = {{"form", result.form},
            {"pass", result.pass()},
            {"failing", failing},
            {"layers", result.layers},
            {"stages", result.stages},
            {"layer_bound", result.layer_bound},
            {"stage_bound", result.stage_bound},
            {"sup_error", error_json(result.error)},
            {"sign_check", sign_json(result.sign)},
            {"checks", suite_json(result.checks)["checks"]}};
  if (result.form == "relu") {
    j["conditioning"] = {{"max_layer", result.max_condition},
                         {"max_cumulative", result.max_cumulative_condition}};
  }
  return j.dump(2) + "\n";
}

std::string grid_csv(const std::vector<GridSample>& samples) {
  std::string out;
  if (samples.empty()) return out;
  const auto d = samples.front().x.size();
  for (Eigen::Index i = 0; i < d; ++i) out += "x" + std::to_string(i + 1) + ",";
  out += "phi,phi_hat\n";
  char buf[64];
  for (const auto& s : samples) {
    for (Eigen::Index i = 0; i < d; ++i) {
      std::snprintf(buf, sizeof buf, "%.17g,", s.x[i]);
      out += buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", s.phi, s.phi_hat);
    out += buf;
  }
  return out;
}

}  // namespace rsf
