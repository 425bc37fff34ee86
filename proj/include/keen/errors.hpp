#pragma once

#include <stdexcept>

namespace keen {

/// Non-finite values appeared in f, rho or E.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid run configuration or command-line input.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace keen
