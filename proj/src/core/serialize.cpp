// Copyright 2026 The rsf Authors
// SPDX-License-Identifier: Apache-2.0

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include <json.hpp>

#include "core/error.hpp"
#include "core/network.hpp"

namespace rsf {

using nlohmann::json;

namespace {

constexpr int kFormatVersion = 1;
constexpr const char* kFormatName = "rsf-network";

json encode(double v) { return format_double(v); }

json encode(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(format_double(v[i]));
  return out;
}

json encode(const Matrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(encode(Vector(m.row(r).transpose())));
  return out;
}

json encode_meta(const NetworkMeta& meta, const std::vector<double>& stage_radii,
                 const std::vector<double>& cumulative, const ReluNetwork* relu) {
  json radii = json::array();
  for (double r : stage_radii) radii.push_back(format_double(r));
  json cond = json::array();
  if (relu != nullptr) {
    for (std::size_t i = 0; i < relu->layers.size(); ++i) {
      cond.push_back({{"layer", i},
                      {"condition", format_double(relu->layers[i].condition)},
                      {"cumulative", format_double(cumulative[i])}});
    }
  }
  return {{"R", encode(meta.radius)},
          {"delta", encode(meta.delta)},
          {"D", encode(meta.second_derivative_bound)},
          {"seed", meta.seed},
          {"surface", meta.surface},
          {"y_extent", encode(meta.y_extent)},
          {"rho", encode(meta.rho)},
          {"margin", encode(meta.margin)},
          {"stage_radii", radii},
          {"cond_diag", cond}};
}

[[noreturn]] void malformed(const std::string& what) {
  fail(ErrorCode::Parse, "malformed network file: " + what);
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing '") + key + "'");
  return j.at(key);
}

double decode_double(const json& j) {
  if (!j.is_string()) malformed("expected a decimal string");
  try {
    return parse_double(j.get<std::string>());
  } catch (const Error&) {
    malformed("bad decimal '" + j.get<std::string>() + "'");
  }
}

Vector decode_vector(const json& j, Eigen::Index expected) {
  if (!j.is_array()) malformed("expected an array");
  if (expected >= 0 && static_cast<Eigen::Index>(j.size()) != expected) {
    malformed("vector of length " + std::to_string(j.size()) + ", expected " +
              std::to_string(expected));
  }
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = decode_double(j[i]);
  return v;
}

Matrix decode_matrix(const json& j, Eigen::Index n) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != n) {
    malformed("weight matrix must be " + std::to_string(n) + " x " + std::to_string(n));
  }
  Matrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) m.row(r) = decode_vector(j[r], n).transpose();
  return m;
}

NetworkMeta decode_meta(const json& j) {
  NetworkMeta meta;
  meta.radius = decode_double(field(j, "R"));
  meta.delta = decode_double(field(j, "delta"));
  meta.second_derivative_bound = decode_double(field(j, "D"));
  const auto& seed = field(j, "seed");
  if (!seed.is_number_unsigned()) malformed("seed must be an unsigned integer");
  meta.seed = seed.get<std::uint64_t>();
  const auto& surface = field(j, "surface");
  if (!surface.is_string()) malformed("surface must be a string");
  meta.surface = surface.get<std::string>();
  meta.y_extent = decode_double(field(j, "y_extent"));
  meta.rho = decode_double(field(j, "rho"));
  meta.margin = decode_double(field(j, "margin"));
  const auto& radii = field(j, "stage_radii");
  if (!radii.is_array()) malformed("stage_radii must be an array");
  for (const auto& r : radii) meta.stage_radii.push_back(decode_double(r));
  return meta;
}

std::size_t decode_size(const json& j) {
  if (!j.is_number_unsigned()) malformed("expected an unsigned integer");
  return j.get<std::size_t>();
}

struct Header {
  std::string form;
  int dim;
};

Header decode_header(const json& j) {
  if (!j.is_object()) malformed("top level must be an object");
  if (field(j, "format") != kFormatName) malformed("unknown format tag");
  const auto& version = field(j, "version");
  if (!version.is_number_integer()) malformed("version must be an integer");
  if (version.get<int>() != kFormatVersion) {
    fail(ErrorCode::Version, "unsupported network file version " +
                                 std::to_string(version.get<int>()) + " (expected " +
                                 std::to_string(kFormatVersion) + ")");
  }
  const auto& form = field(j, "form");
  if (!form.is_string()) malformed("form must be a string");
  const auto& d = field(j, "d");
  if (!d.is_number_integer() || d.get<int>() < 1) malformed("d must be a positive integer");
  const auto& width = field(j, "width");
  if (!width.is_number_integer() || width.get<int>() != d.get<int>() + 1) {
    malformed("width must equal d + 1");
  }
  return {form.get<std::string>(), d.get<int>()};
}

ModifiedNetwork decode_modified(const json& j, int d) {
  const auto& final = field(j, "final");
  FinalAffine head{decode_vector(field(final, "w"), d), decode_double(field(final, "w0"))};
  auto meta = decode_meta(field(j, "meta"));
  meta.stage_radii.clear();
  ModifiedNetwork net(d, head, std::move(meta));

  const auto& layers = field(j, "layers");
  const auto& stages = field(j, "stages");
  if (!layers.is_array() || !stages.is_array()) malformed("layers and stages must be arrays");
  std::size_t next = 0;
  for (const auto& s : stages) {
    const std::size_t first = decode_size(field(s, "first"));
    const std::size_t count = decode_size(field(s, "count"));
    if (first != next || first + count > layers.size()) malformed("stage ranges are inconsistent");
    std::vector<ProjectionLayer> group;
    group.reserve(count);
    for (std::size_t i = first; i < first + count; ++i) {
      const auto& l = layers[i];
      try {
        group.push_back({HalfSpace(decode_vector(field(l, "normal"), d),
                                   decode_double(field(l, "offset"))),
                         decode_double(field(l, "slope")),
                         decode_vector(field(l, "tangent_point"), d)});
      } catch (const Error& e) {
        if (e.code() != ErrorCode::InvalidArgument) throw;
        malformed("layer " + std::to_string(i) + ": " + e.what());
      }
    }
    const auto& index = field(s, "index");
    if (!index.is_number_integer()) malformed("stage index must be an integer");
    net.add_stage(index.get<int>(), decode_double(field(s, "radius")),
                  decode_double(field(s, "cap_height")),
                  decode_double(field(s, "net_eps")), group);
    next = first + count;
  }
  if (next != layers.size()) malformed("layers not covered by stages");
  return net;
}

ReluNetwork decode_relu(const json& j, int d) {
  ReluNetwork net;
  net.dim = d;
  net.meta = decode_meta(field(j, "meta"));
  const auto& layers = field(j, "layers");
  if (!layers.is_array()) malformed("layers must be an array");
  for (const auto& l : layers) {
    ReluLayerParams p;
    p.weights = decode_matrix(field(l, "weights"), d + 1);
    p.bias = decode_vector(field(l, "bias"), d + 1);
    p.condition = decode_double(field(l, "condition"));
    net.layers.push_back(std::move(p));
  }
  const auto& diag = field(field(j, "meta"), "cond_diag");
  if (!diag.is_array() || diag.size() != net.layers.size()) {
    malformed("cond_diag must have one entry per layer");
  }
  for (const auto& entry : diag) net.cumulative_condition.push_back(decode_double(field(entry, "cumulative")));
  const auto& final = field(j, "final");
  net.final_w = decode_vector(field(final, "w"), d + 1);
  net.final_b = decode_double(field(final, "b"));
  return net;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::Parse, std::string("network file is not valid JSON: ") + e.what());
  }
}

}  // namespace

std::string format_double(double v) {
  if (!std::isfinite(v)) fail(ErrorCode::InvalidArgument, "cannot serialize a non-finite value");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s) {
  if (s.empty()) fail(ErrorCode::Parse, "empty decimal string");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) {
    fail(ErrorCode::Parse, "invalid decimal string '" + s + "'");
  }
  return v;
}

std::string serialize(const ModifiedNetwork& net) {
  json layers = json::array();
  json stages = json::array();
  std::vector<double> radii;
  for (const auto& s : net.stages()) {
    radii.push_back(s.radius);
    stages.push_back({{"index", s.index},
                      {"radius", encode(s.radius)},
                      {"cap_height", encode(s.cap_height)},
                      {"net_eps", encode(s.net_eps)},
                      {"first", s.first},
                      {"count", s.count}});
    for (std::size_t i = s.first; i < s.first + s.count; ++i) {
      const auto layer = net.layer(i);
      layers.push_back({{"stage", s.index},
                        {"normal", encode(layer.beta())},
                        {"offset", encode(layer.halfspace.offset())},
                        {"slope", encode(layer.slope)},
                        {"tangent_point", encode(layer.tangent_point)}});
    }
  }
  json j = {{"format", kFormatName},
            {"version", kFormatVersion},
            {"form", "modified"},
            {"d", net.dim()},
            {"width", net.dim() + 1},
            {"layers", layers},
            {"stages", stages},
            {"final", {{"w", encode(net.final().w)}, {"w0", encode(net.final().w0)}}},
            {"meta", encode_meta(net.meta(), radii, {}, nullptr)}};
  return j.dump(1) + "\n";
}

std::string serialize(const ReluNetwork& net) {
  json layers = json::array();
  for (const auto& l : net.layers) {
    layers.push_back({{"weights", encode(l.weights)},
                      {"bias", encode(l.bias)},
                      {"condition", encode(l.condition)}});
  }
  json j = {{"format", kFormatName},
            {"version", kFormatVersion},
            {"form", "relu"},
            {"d", net.dim},
            {"width", net.width()},
            {"layers", layers},
            {"final", {{"w", encode(net.final_w)}, {"b", encode(net.final_b)}}},
            {"meta", encode_meta(net.meta, net.meta.stage_radii, net.cumulative_condition, &net)}};
  return j.dump(1) + "\n";
}

AnyNetwork deserialize(const std::string& text) {
  const json j = parse_json(text);
  const auto header = decode_header(j);
  try {
    if (header.form == "modified") return decode_modified(j, header.dim);
    if (header.form == "relu") return decode_relu(j, header.dim);
  } catch (const json::exception& e) {
    malformed(e.what());
  }
  malformed("unknown form '" + header.form + "'");
}

ModifiedNetwork deserialize_modified(const std::string& text) {
  auto any = deserialize(text);
  if (auto* net = std::get_if<ModifiedNetwork>(&any)) return std::move(*net);
  fail(ErrorCode::Parse, "expected a modified-form network");
}

ReluNetwork deserialize_relu(const std::string& text) {
  auto any = deserialize(text);
  if (auto* net = std::get_if<ReluNetwork>(&any)) return std::move(*net);
  fail(ErrorCode::Parse, "expected a relu-form network");
}

}  // namespace rsf
