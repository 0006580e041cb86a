#pragma once
#include <stdexcept>
#include <string>

namespace beamopt {

// An input violated a hard model invariant.
class validation_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A numeric routine exhausted its budget before converging. Carries the
// partial estimate and the error bound it reached.
class numerical_error : public std::runtime_error {
public:
    numerical_error(const std::string& what, double partial, double bound)
        : std::runtime_error(what), partial_estimate(partial), error_bound(bound) {}

    double partial_estimate;
    double error_bound;
};

}  // namespace beamopt
