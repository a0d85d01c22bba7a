// Copyright 2026 The rsf Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "core/construction.hpp"

namespace rsf {

/// Parses a JSON build config:
///   { "d": 2, "R": 1.0, "delta": 0.25, "seed": 7, "margin": 1.0,
///     "surface": { "name": "quadratic", "params": { "scale": 1.0 } } }
/// Throws Parse for malformed JSON and Config for missing or invalid fields.
BuildConfig parse_build_config(const std::string& text);

BuildConfig load_build_config(const std::string& path);

/// Canonical JSON text of a config (stable key order).
std::string build_config_to_json(const BuildConfig& config);

}  // namespace rsf
