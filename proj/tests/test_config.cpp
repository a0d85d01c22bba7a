// Copyright 2026 The rsf Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "core/config.hpp"
#include "core/error.hpp"

using namespace rsf;

namespace {

ErrorCode code_of(const std::string& text) {
  try {
    parse_build_config(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("parse a full config") {
  const auto c = parse_build_config(R"({
    "d": 3, "R": 2.0, "delta": 0.25, "seed": 12, "margin": 0.5,
    "surface": {"name": "affine", "params": {"w0": 0.5, "w": [1, -2, 0.25]}}
  })");
  CHECK(c.dim == 3);
  CHECK(c.radius == 2.0);
  CHECK(c.delta == 0.25);
  CHECK(c.seed == 12);
  CHECK(c.margin == 0.5);
  CHECK(c.surface_name == "affine");
  CHECK(c.surface_params.list("w") == std::vector<double>{1, -2, 0.25});
  CHECK(c.surface().second_derivative_bound == 0.0);
}

TEST_CASE("config round trip") {
  const auto c = parse_build_config(
      R"({"d": 2, "R": 1, "delta": 0.2, "seed": 11,
          "surface": {"name": "sinusoid", "params": {"amplitude": 1, "frequency": 1}}})");
  const auto text = build_config_to_json(c);
  const auto again = parse_build_config(text);
  CHECK(build_config_to_json(again) == text);
  CHECK(again.seed == 11);
}

TEST_CASE("config errors") {
  CHECK(code_of(R"({"d": 2, "R": 1, "delta": 0.2})") == ErrorCode::Config);
  CHECK(code_of(R"({"d": 2, "R": 1, "delta": 0.2, "surface": {)") == ErrorCode::Parse);
  CHECK(code_of(R"({"d": "two", "R": 1, "delta": 0.2, "surface": {"name": "zero"}})") ==
        ErrorCode::Config);
  CHECK(code_of(R"({"d": 2, "R": 1, "delta": 0.2,
                    "surface": {"name": "zero", "params": {"a": "x"}}})") == ErrorCode::Config);
  CHECK(code_of("[1, 2]") == ErrorCode::Config);
  try {
    load_build_config("/nonexistent/config.json");
    FAIL("expected an io error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Io);
  }
}
