// Copyright 2026 The rsf Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace rsf {

enum class ErrorCode {
  InvalidArgument = 1,
  Config = 2,
  Parse = 3,
  Version = 4,
  Conditioning = 5,
  Io = 6,
};

/// Exception carrying a stable error category; the C API maps it to a status code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace rsf
