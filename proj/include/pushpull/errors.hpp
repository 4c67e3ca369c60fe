#pragma once

#include <stdexcept>
#include <string>

namespace pushpull {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ShapeError : Error { using Error::Error; };
struct DegreeRangeError : Error { using Error::Error; };
struct ArgumentError : Error { using Error::Error; };
struct NumericError : Error { using Error::Error; };
struct MetricError : Error { using Error::Error; };
struct OrientationError : Error { using Error::Error; };
struct DegenerateMapError : Error { using Error::Error; };
struct EmptySupportError : Error { using Error::Error; };
struct NotImplementedError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace pushpull
