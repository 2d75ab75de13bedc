// Copyright 2026 The VISTA Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef VISTA_COMMON_HPP_
#define VISTA_COMMON_HPP_

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace vista {

inline constexpr const char* kVersion = "0.1.0";

/// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ShapeError : Error {
  using Error::Error;
};
struct ValueError : Error {
  using Error::Error;
};
struct IndexError : Error {
  using Error::Error;
};
struct ConfigError : Error {
  using Error::Error;
};
struct FormatError : Error {
  using Error::Error;
};
struct IoError : Error {
  using Error::Error;
};
struct ZeroVarianceSequence : Error {
  using Error::Error;
};
struct CheckpointMismatch : Error {
  using Error::Error;
};
struct NonFiniteLoss : Error {
  using Error::Error;
};
struct DivergenceError : Error {
  using Error::Error;
};
struct SpecError : Error {
  using Error::Error;
};
struct UnknownVariant : Error {
  using Error::Error;
};
struct EmptyInput : Error {
  using Error::Error;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw ValueError(msg);
}

}  // namespace vista

#endif  // VISTA_COMMON_HPP_
