#pragma once

#include <stdexcept>
#include <string>

namespace polycat {

struct TypeMismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OccurrenceOutOfRange : std::out_of_range {
    using std::out_of_range::out_of_range;
};

/// A hom query exceeded the presentation's declared arity bound.
struct ArityBoundError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OracleTimeout : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotStarAutonomous : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace polycat
