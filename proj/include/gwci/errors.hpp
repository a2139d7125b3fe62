#pragma once

#include <stdexcept>
#include <string>

namespace gwci {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct NegativeEntryError : Error { using Error::Error; };
struct AllZeroError : Error { using Error::Error; };
struct UnknownAxisError : Error { using Error::Error; };
struct OverlappingGroupsError : Error { using Error::Error; };
struct ShapeMismatchError : Error { using Error::Error; };
struct MarginalMismatchError : Error { using Error::Error; };
struct TooLargeError : Error { using Error::Error; };
struct InfeasibleError : Error { using Error::Error; };
struct InsufficientPointsError : Error { using Error::Error; };
struct EmptyCurveError : Error { using Error::Error; };
struct UnsupportedDistortionError : Error { using Error::Error; };
struct NonPositiveDistortionError : Error { using Error::Error; };
struct RegimeMismatchError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct BadParameterError : Error { using Error::Error; };

}  // namespace gwci
