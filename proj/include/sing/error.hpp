#pragma once

#include <stdexcept>
#include <string>

namespace sing {

// Base class for every failure raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad or inconsistent user input (config keys, grid parameters, ...).
class ConfigError : public Error {
public:
    using Error::Error;
};

// The grid or quadrature cannot resolve the requested scale.
class ResolutionError : public Error {
public:
    using Error::Error;
};

}  // namespace sing
