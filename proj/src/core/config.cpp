// Copyright 2026 The rsf Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "core/error.hpp"

namespace rsf {

using nlohmann::json;

namespace {

template <typename T>
T required(const json& j, const char* key) {
  if (!j.contains(key)) fail(ErrorCode::Config, std::string("config is missing '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    fail(ErrorCode::Config, std::string("config field '") + key + "' has the wrong type");
  }
}

SurfaceParams parse_params(const json& params) {
  SurfaceParams out;
  if (params.is_null()) return out;
  if (!params.is_object()) fail(ErrorCode::Config, "surface.params must be an object");
  for (const auto& [key, value] : params.items()) {
    if (value.is_number()) {
      out.set(key, value.get<double>());
    } else if (value.is_array()) {
      std::vector<double> list;
      for (const auto& v : value) {
        if (!v.is_number()) fail(ErrorCode::Config, "surface.params." + key + " must hold numbers");
        list.push_back(v.get<double>());
      }
      out.set(key, std::move(list));
    } else {
      fail(ErrorCode::Config, "surface.params." + key + " must be a number or a list");
    }
  }
  return out;
}

}  // namespace

BuildConfig parse_build_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::Parse, std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorCode::Config, "config must be a JSON object");

  BuildConfig config;
  config.dim = required<int>(j, "d");
  config.radius = required<double>(j, "R");
  config.delta = required<double>(j, "delta");
  if (j.contains("seed")) config.seed = required<std::uint64_t>(j, "seed");
  if (j.contains("margin")) config.margin = required<double>(j, "margin");
  if (!j.contains("surface") || !j["surface"].is_object()) {
    fail(ErrorCode::Config, "config is missing the 'surface' object");
  }
  const auto& surface = j["surface"];
  config.surface_name = required<std::string>(surface, "name");
  config.surface_params = parse_params(surface.value("params", json()));
  config.validate();
  // Surface parameters are checked by building the catalog entry once.
  (void)config.surface();
  return config;
}

BuildConfig load_build_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_build_config(buffer.str());
}

std::string build_config_to_json(const BuildConfig& config) {
  json params = json::object();
  for (const auto& [key, values] : config.surface_params.entries()) {
    params[key] = values.size() == 1 ? json(values.front()) : json(values);
  }
  json j = {{"d", config.dim},
            {"R", config.radius},
            {"delta", config.delta},
            {"seed", config.seed},
            {"margin", config.margin},
            {"surface", {{"name", config.surface_name}, {"params", params}}}};
  return j.dump(2);
}

}  // namespace rsf
