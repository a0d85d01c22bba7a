// Copyright 2026 The rsf Authors
// SPDX-License-Identifier: Apache-2.0

#include "rsf/rsf.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "core/analysis.hpp"
#include "core/config.hpp"
#include "core/error.hpp"
#include "core/network.hpp"

struct rsf_config {
  rsf::BuildConfig config;
};

struct rsf_network {
  rsf::AnyNetwork net;
};

namespace {

thread_local std::string g_last_error;

rsf_status status_of(rsf::ErrorCode code) {
  switch (code) {
    case rsf::ErrorCode::InvalidArgument: return RSF_ERR_INVALID_ARGUMENT;
    case rsf::ErrorCode::Config: return RSF_ERR_CONFIG;
    case rsf::ErrorCode::Parse: return RSF_ERR_PARSE;
    case rsf::ErrorCode::Version: return RSF_ERR_VERSION;
    case rsf::ErrorCode::Conditioning: return RSF_ERR_CONDITIONING;
    case rsf::ErrorCode::Io: return RSF_ERR_IO;
  }
  return RSF_ERR_INTERNAL;
}

rsf_status set_error(rsf_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <typename Fn>
rsf_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return RSF_OK;
  } catch (const rsf::Error& e) {
    return set_error(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(RSF_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(RSF_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(RSF_ERR_INTERNAL, "unknown error");
  }
}

void require(bool ok, const char* what) {
  if (!ok) rsf::fail(rsf::ErrorCode::InvalidArgument, what);
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

std::string read_file(const char* path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) rsf::fail(rsf::ErrorCode::Io, std::string("cannot read '") + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const char* path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) rsf::fail(rsf::ErrorCode::Io, std::string("cannot write '") + path + "'");
  out << text;
  out.close();
  if (!out) rsf::fail(rsf::ErrorCode::Io, std::string("failed writing '") + path + "'");
}

rsf::Vector to_vector(const double* x, size_t dim, int expected) {
  require(x != nullptr, "x must not be null");
  if (static_cast<int>(dim) != expected) {
    rsf::fail(rsf::ErrorCode::InvalidArgument, "x has " + std::to_string(dim) +
                                                   " coordinates, the network expects " +
                                                   std::to_string(expected));
  }
  rsf::Vector v(static_cast<Eigen::Index>(dim));
  for (size_t i = 0; i < dim; ++i) v[static_cast<Eigen::Index>(i)] = x[i];
  return v;
}

int dim_of(const rsf::AnyNetwork& net) {
  if (const auto* m = std::get_if<rsf::ModifiedNetwork>(&net)) return m->dim();
  return std::get<rsf::ReluNetwork>(net).dim;
}

const rsf::NetworkMeta& meta_of(const rsf::AnyNetwork& net) {
  if (const auto* m = std::get_if<rsf::ModifiedNetwork>(&net)) return m->meta();
  return std::get<rsf::ReluNetwork>(net).meta;
}

const rsf::ModifiedNetwork& modified_of(const rsf_network* net) {
  const auto* m = std::get_if<rsf::ModifiedNetwork>(&net->net);
  if (m == nullptr) rsf::fail(rsf::ErrorCode::InvalidArgument, "operation needs the modified form");
  return *m;
}

std::string format(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

extern "C" {

const char* rsf_version(void) { return "0.1.0"; }

const char* rsf_status_name(rsf_status status) {
  switch (status) {
    case RSF_OK: return "ok";
    case RSF_ERR_INVALID_ARGUMENT: return "invalid argument";
    case RSF_ERR_CONFIG: return "config error";
    case RSF_ERR_PARSE: return "parse error";
    case RSF_ERR_VERSION: return "version mismatch";
    case RSF_ERR_CONDITIONING: return "conditioning failure";
    case RSF_ERR_IO: return "i/o error";
    case RSF_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* rsf_last_error(void) { return g_last_error.c_str(); }

void rsf_string_free(char* s) { std::free(s); }

rsf_status rsf_config_parse(const char* json, rsf_config** out) {
  return guarded([&] {
    require(json != nullptr && out != nullptr, "null argument");
    *out = new rsf_config{rsf::parse_build_config(json)};
  });
}

rsf_status rsf_config_load(const char* path, rsf_config** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new rsf_config{rsf::load_build_config(path)};
  });
}

void rsf_config_free(rsf_config* config) { delete config; }

rsf_status rsf_config_set_seed(rsf_config* config, uint64_t seed) {
  return guarded([&] {
    require(config != nullptr, "null config");
    config->config.seed = seed;
  });
}

rsf_status rsf_config_seed(const rsf_config* config, uint64_t* seed) {
  return guarded([&] {
    require(config != nullptr && seed != nullptr, "null argument");
    *seed = config->config.seed;
  });
}

rsf_status rsf_config_dim(const rsf_config* config, int* dim) {
  return guarded([&] {
    require(config != nullptr && dim != nullptr, "null argument");
    *dim = config->config.dim;
  });
}

rsf_status rsf_config_to_json(const rsf_config* config, char** out) {
  return guarded([&] {
    require(config != nullptr && out != nullptr, "null argument");
    *out = copy_string(rsf::build_config_to_json(config->config));
  });
}

rsf_status rsf_build(const rsf_config* config, rsf_network** out) {
  return guarded([&] {
    require(config != nullptr && out != nullptr, "null argument");
    *out = new rsf_network{rsf::build_network(config->config)};
  });
}

rsf_status rsf_convert(const rsf_network* modified, double rho, double margin,
                       rsf_network** out) {
  return guarded([&] {
    require(modified != nullptr && out != nullptr, "null argument");
    const auto& net = modified_of(modified);
    const double r = rho > 0.0 ? rho : net.meta().rho;
    const double m = margin > 0.0 ? margin : net.meta().margin;
    *out = new rsf_network{rsf::convert(net, r, m)};
  });
}

void rsf_network_free(rsf_network* net) { delete net; }

rsf_status rsf_network_parse(const char* text, rsf_network** out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "null argument");
    *out = new rsf_network{rsf::deserialize(text)};
  });
}

rsf_status rsf_network_load(const char* path, rsf_network** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new rsf_network{rsf::deserialize(read_file(path))};
  });
}

rsf_status rsf_network_to_json(const rsf_network* net, char** out) {
  return guarded([&] {
    require(net != nullptr && out != nullptr, "null argument");
    *out = copy_string(std::visit([](const auto& n) { return rsf::serialize(n); }, net->net));
  });
}

rsf_status rsf_network_save(const rsf_network* net, const char* path) {
  return guarded([&] {
    require(net != nullptr && path != nullptr, "null argument");
    write_file(path, std::visit([](const auto& n) { return rsf::serialize(n); }, net->net));
  });
}

rsf_status rsf_network_info_get(const rsf_network* net, rsf_network_info* info) {
  return guarded([&] {
    require(net != nullptr && info != nullptr, "null argument");
    const auto& meta = meta_of(net->net);
    rsf_network_info out{};
    out.dim = dim_of(net->net);
    if (const auto* m = std::get_if<rsf::ModifiedNetwork>(&net->net)) {
      out.form = RSF_FORM_MODIFIED;
      out.layers = m->size();
      out.stages = m->stages().size();
    } else {
      const auto& r = std::get<rsf::ReluNetwork>(net->net);
      out.form = RSF_FORM_RELU;
      out.layers = r.layers.size();
      out.stages = r.meta.stage_radii.size();
    }
    out.radius = meta.radius;
    out.delta = meta.delta;
    out.second_derivative_bound = meta.second_derivative_bound;
    out.seed = meta.seed;
    out.y_extent = meta.y_extent;
    out.rho = meta.rho;
    out.margin = meta.margin;
    if (out.dim >= 2 && meta.delta > 0.0) {
      out.error_bound =
          rsf::error_bound(out.dim, meta.radius, meta.delta, meta.second_derivative_bound);
      out.layer_bound = rsf::layer_count_bound(out.dim, meta.radius, meta.delta);
      out.stage_bound = rsf::stage_count_bound(meta.radius, meta.delta);
    }
    *info = out;
  });
}

rsf_status rsf_network_eval(const rsf_network* net, const double* x, size_t dim, double y,
                            double* out) {
  return guarded([&] {
    require(net != nullptr && out != nullptr, "null argument");
    const auto v = to_vector(x, dim, dim_of(net->net));
    *out = rsf::network_fn(net->net)(v, y);
  });
}

rsf_status rsf_network_height(const rsf_network* net, const double* x, size_t dim,
                              double* out) {
  return guarded([&] {
    require(net != nullptr && out != nullptr, "null argument");
    const auto v = to_vector(x, dim, dim_of(net->net));
    *out = rsf::decision_height(rsf::network_fn(net->net), v);
  });
}

rsf_status rsf_network_layer_slope(const rsf_network* net, size_t layer, double* slope) {
  return guarded([&] {
    require(net != nullptr && slope != nullptr, "null argument");
    const auto& m = modified_of(net);
    require(layer < m.size(), "layer index out of range");
    *slope = m.layer(layer).slope;
  });
}

rsf_status rsf_network_set_layer_slope(rsf_network* net, size_t layer, double slope) {
  return guarded([&] {
    require(net != nullptr, "null network");
    auto* m = std::get_if<rsf::ModifiedNetwork>(&net->net);
    require(m != nullptr, "operation needs the modified form");
    require(layer < m->size(), "layer index out of range");
    m->set_slope(layer, slope);
  });
}

void rsf_verify_options_default(rsf_verify_options* options) {
  if (options == nullptr) return;
  const rsf::VerifyOptions d;
  options->grid = d.grid;
  options->seed = d.suite.seed;
  options->threads = d.suite.threads;
  options->sign_samples = d.sign_samples;
  options->boundary_samples = d.suite.boundary_samples;
  options->graph_samples = d.suite.graph_samples;
  options->nesting_samples = d.suite.nesting_samples;
  options->coverage_samples = d.suite.coverage_samples;
  options->cap_samples = d.suite.cap_samples;
}

rsf_status rsf_verify(const rsf_network* net, const rsf_config* config,
                      const rsf_verify_options* options, int* passed, char** report_json,
                      char** grid_csv) {
  return guarded([&] {
    require(net != nullptr && config != nullptr && passed != nullptr, "null argument");
    rsf_verify_options o;
    if (options != nullptr) {
      o = *options;
    } else {
      rsf_verify_options_default(&o);
    }
    require(o.grid >= 2, "grid must be at least 2");
    rsf::VerifyOptions v;
    v.grid = o.grid;
    v.sign_samples = o.sign_samples;
    v.suite.seed = o.seed;
    v.suite.threads = o.threads;
    v.suite.boundary_samples = o.boundary_samples;
    v.suite.graph_samples = o.graph_samples;
    v.suite.nesting_samples = o.nesting_samples;
    v.suite.coverage_samples = o.coverage_samples;
    v.suite.cap_samples = o.cap_samples;
    std::vector<rsf::GridSample> samples;
    const auto result =
        rsf::verify(net->net, config->config, v, grid_csv != nullptr ? &samples : nullptr);
    std::string report = rsf::to_json(result);
    std::string csv = grid_csv != nullptr ? rsf::grid_csv(samples) : std::string();
    char* report_out = report_json != nullptr ? copy_string(report) : nullptr;
    char* csv_out = nullptr;
    if (grid_csv != nullptr) {
      try {
        csv_out = copy_string(csv);
      } catch (...) {
        std::free(report_out);
        throw;
      }
    }
    *passed = result.pass() ? 1 : 0;
    if (report_json != nullptr) *report_json = report_out;
    if (grid_csv != nullptr) *grid_csv = csv_out;
  });
}

rsf_status rsf_trace_csv(const rsf_network* net, const double* x, size_t dim, double y,
                         char** csv) {
  return guarded([&] {
    require(net != nullptr && csv != nullptr, "null argument");
    const auto& m = modified_of(net);
    const auto v = to_vector(x, dim, m.dim());
    const auto tr = m.trace(v, y);

    std::vector<int> stage_of(m.size(), 0);
    for (const auto& s : m.stages()) {
      for (std::size_t i = s.first; i < s.first + s.count; ++i) stage_of[i] = s.index;
    }
    std::string out = "layer,stage,t";
    for (size_t i = 0; i < dim; ++i) out += ",x" + std::to_string(i + 1);
    out += ",y,norm,path_length\n";
    auto row = [&](long layer, int stage, double t, const rsf::LiftedPoint& p, double path) {
      out += std::to_string(layer) + "," + std::to_string(stage) + "," + format(t);
      for (Eigen::Index i = 0; i < p.x.size(); ++i) out += "," + format(p.x[i]);
      out += "," + format(p.y) + "," + format(p.x.norm()) + "," + format(path) + "\n";
    };
    row(0, -1, 0.0, tr.points.front(), 0.0);
    double path = 0.0;
    for (std::size_t i = 0; i < tr.steps.size(); ++i) {
      if (!(tr.steps[i] > 0.0)) continue;
      path += tr.steps[i];
      row(static_cast<long>(i + 1), stage_of[i], tr.steps[i], tr.points[i + 1], path);
    }
    *csv = copy_string(out);
  });
}

}  // extern "C"
