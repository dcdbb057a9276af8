#pragma once

// Exception types shared across the library.

#include <stdexcept>

namespace zenobat {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// linear algebra kernel
struct DimensionMismatch : Error { using Error::Error; };
struct NotHermitian : Error { using Error::Error; };
struct NotUnitary : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };

// engine
struct ScheduleEmpty : Error { using Error::Error; };
struct InvalidSchedule : Error { using Error::Error; };
struct RegimeMismatch : Error { using Error::Error; };

// analysis
struct TooFewSamples : Error { using Error::Error; };
struct TooFewPoints : Error { using Error::Error; };
struct TooFewValleys : Error { using Error::Error; };

// generic
struct InvalidArgument : Error { using Error::Error; };
struct NumericalError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

}  // namespace zenobat
