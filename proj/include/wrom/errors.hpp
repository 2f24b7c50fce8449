#pragma once

#include <stdexcept>
#include <string>

namespace wrom {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidMeasureError : Error { using Error::Error; };
struct GridMismatchError : Error { using Error::Error; };
struct DomainViolationError : Error { using Error::Error; };
struct InvalidWeightsError : Error { using Error::Error; };
struct TangentOutsideDomainError : Error { using Error::Error; };
struct SolverFailureError : Error { using Error::Error; };
struct NeighborhoodFailureError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

}  // namespace wrom
