// Copyright 2026 The rsf Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>
#include <rsf/rsf.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace {

const char* kQuadratic = R"({
  "d": 2, "R": 1.0, "delta": 0.25, "seed": 7, "margin": 1.0,
  "surface": {"name": "quadratic", "params": {"scale": 1.0}}
})";

rsf_config* parse_config(const char* text) {
  rsf_config* c = nullptr;
  REQUIRE(rsf_config_parse(text, &c) == RSF_OK);
  return c;
}

rsf_verify_options light_options() {
  rsf_verify_options o;
  rsf_verify_options_default(&o);
  o.grid = 41;
  o.threads = 1;
  o.sign_samples = 2000;
  o.boundary_samples = 100;
  o.graph_samples = 1000;
  o.nesting_samples = 1000;
  o.coverage_samples = 10000;
  o.cap_samples = 1;
  return o;
}

std::string take(char* s) {
  std::string out = s != nullptr ? s : "";
  rsf_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("status names") {
  CHECK(std::string(rsf_version()) == "0.1.0");
  CHECK(std::string(rsf_status_name(RSF_OK)) == "ok");
  CHECK(std::string(rsf_status_name(RSF_ERR_VERSION)) == "version mismatch");
  CHECK(std::string(rsf_status_name(static_cast<rsf_status>(42))) == "unknown status");
}

TEST_CASE("build, convert, evaluate and verify") {
  rsf_config* config = parse_config(kQuadratic);
  int dim = 0;
  CHECK(rsf_config_dim(config, &dim) == RSF_OK);
  CHECK(dim == 2);

  rsf_network* net = nullptr;
  REQUIRE(rsf_build(config, &net) == RSF_OK);
  rsf_network_info info;
  REQUIRE(rsf_network_info_get(net, &info) == RSF_OK);
  CHECK(info.dim == 2);
  CHECK(info.form == RSF_FORM_MODIFIED);
  CHECK(info.seed == 7);
  CHECK(info.layers > 0);
  CHECK(static_cast<double>(info.layers) <= info.layer_bound);
  CHECK(static_cast<double>(info.stages) <= info.stage_bound);
  CHECK(info.error_bound == doctest::Approx(5.975).epsilon(1e-3));

  const double origin[2] = {0.0, 0.0};
  double h = -1;
  CHECK(rsf_network_height(net, origin, 2, &h) == RSF_OK);
  CHECK(h == 0.0);
  double f = 0;
  CHECK(rsf_network_eval(net, origin, 2, 0.5, &f) == RSF_OK);
  CHECK(f == doctest::Approx(-0.5));

  rsf_network* relu = nullptr;
  REQUIRE(rsf_convert(net, 0.0, 0.0, &relu) == RSF_OK);
  rsf_network_info rinfo;
  REQUIRE(rsf_network_info_get(relu, &rinfo) == RSF_OK);
  CHECK(rinfo.form == RSF_FORM_RELU);
  CHECK(rinfo.rho == info.rho);
  CHECK(rinfo.layers == info.layers);
  const double x[2] = {0.7, -0.4};
  double a = 0, b = 0;
  CHECK(rsf_network_height(net, x, 2, &a) == RSF_OK);
  CHECK(rsf_network_height(relu, x, 2, &b) == RSF_OK);
  CHECK(std::abs(a - b) <= 1e-9);

  const auto opts = light_options();
  int passed = 0;
  char* report = nullptr;
  char* csv = nullptr;
  REQUIRE(rsf_verify(net, config, &opts, &passed, &report, &csv) == RSF_OK);
  CHECK(passed == 1);
  CHECK(take(report).find("\"pass\": true") != std::string::npos);
  CHECK(take(csv).rfind("x1,x2,phi,phi_hat", 0) == 0);
  REQUIRE(rsf_verify(relu, config, &opts, &passed, nullptr, nullptr) == RSF_OK);
  CHECK(passed == 1);

  // Round trip through text.
  char* text = nullptr;
  REQUIRE(rsf_network_to_json(net, &text) == RSF_OK);
  const std::string saved = take(text);
  rsf_network* back = nullptr;
  REQUIRE(rsf_network_parse(saved.c_str(), &back) == RSF_OK);
  REQUIRE(rsf_network_to_json(back, &text) == RSF_OK);
  CHECK(take(text) == saved);

  // Fault injection through the slope setter.
  double slope = 0;
  REQUIRE(rsf_network_layer_slope(back, info.layers - 1, &slope) == RSF_OK);
  REQUIRE(rsf_network_set_layer_slope(back, info.layers - 1, slope + 1.0) == RSF_OK);
  REQUIRE(rsf_verify(back, config, &opts, &passed, &report, nullptr) == RSF_OK);
  CHECK(passed == 0);
  CHECK(take(report).find("y_deviation") != std::string::npos);

  CHECK(rsf_network_layer_slope(relu, 0, &slope) == RSF_ERR_INVALID_ARGUMENT);
  CHECK(rsf_network_layer_slope(net, info.layers, &slope) == RSF_ERR_INVALID_ARGUMENT);

  rsf_network_free(back);
  rsf_network_free(relu);
  rsf_network_free(net);
  rsf_config_free(config);
}

TEST_CASE("trace") {
  rsf_config* config = parse_config(kQuadratic);
  rsf_network* net = nullptr;
  REQUIRE(rsf_build(config, &net) == RSF_OK);
  char* csv = nullptr;
  const double inside[2] = {0.01, 0.0};
  REQUIRE(rsf_trace_csv(net, inside, 2, 0.0, &csv) == RSF_OK);
  const std::string one = take(csv);
  CHECK(one.rfind("layer,stage,t,x1,x2,y,norm,path_length\n", 0) == 0);
  CHECK(std::count(one.begin(), one.end(), '\n') == 2);

  const double outside[2] = {0.99, 0.0};
  REQUIRE(rsf_trace_csv(net, outside, 2, 0.0, &csv) == RSF_OK);
  const std::string moved = take(csv);
  CHECK(std::count(moved.begin(), moved.end(), '\n') > 2);

  CHECK(rsf_trace_csv(net, outside, 3, 0.0, &csv) == RSF_ERR_INVALID_ARGUMENT);
  CHECK(std::string(rsf_last_error()).find("network expects 2") != std::string::npos);
  rsf_network_free(net);
  rsf_config_free(config);
}

TEST_CASE("errors") {
  rsf_config* c = nullptr;
  CHECK(rsf_config_parse("{", &c) == RSF_ERR_PARSE);
  CHECK(c == nullptr);
  CHECK(std::string(rsf_last_error()).size() > 0);
  CHECK(rsf_config_parse(R"({"d": 2, "R": 1, "delta": 0.25})", &c) == RSF_ERR_CONFIG);
  CHECK(std::string(rsf_last_error()).find("surface") != std::string::npos);
  CHECK(rsf_config_parse(nullptr, &c) == RSF_ERR_INVALID_ARGUMENT);
  CHECK(rsf_config_load("/nonexistent.json", &c) == RSF_ERR_IO);

  CHECK(rsf_config_parse(R"({"d": 2, "R": 1, "delta": 0.5, "surface": {"name": "zero"}})", &c) ==
        RSF_ERR_CONFIG);
  CHECK(std::string(rsf_last_error()).find("delta-condition") != std::string::npos);
  CHECK(rsf_build(nullptr, nullptr) == RSF_ERR_INVALID_ARGUMENT);

  rsf_network* n = nullptr;
  CHECK(rsf_network_parse("{\"format\": \"rsf-network\", \"version\": 2}", &n) == RSF_ERR_VERSION);
  CHECK(rsf_network_parse("[]", &n) == RSF_ERR_PARSE);
  CHECK(rsf_network_load("/nonexistent.json", &n) == RSF_ERR_IO);
  CHECK(rsf_network_info_get(nullptr, nullptr) == RSF_ERR_INVALID_ARGUMENT);
  CHECK(rsf_verify(nullptr, nullptr, nullptr, nullptr, nullptr, nullptr) ==
        RSF_ERR_INVALID_ARGUMENT);

  rsf_network_free(nullptr);
  rsf_config_free(nullptr);
  rsf_string_free(nullptr);
}

TEST_CASE("seed override and config text") {
  rsf_config* c = parse_config(kQuadratic);
  CHECK(rsf_config_set_seed(c, 99) == RSF_OK);
  std::uint64_t seed = 0;
  CHECK(rsf_config_seed(c, &seed) == RSF_OK);
  CHECK(seed == 99);
  char* text = nullptr;
  REQUIRE(rsf_config_to_json(c, &text) == RSF_OK);
  CHECK(take(text).find("99") != std::string::npos);
  rsf_config_free(c);
}
