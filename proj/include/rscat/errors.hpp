#pragma once

#include <stdexcept>
#include <string>

namespace rscat {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A constructor or operation received an argument outside its domain.
struct InvalidParameter : Error {
    explicit InvalidParameter(const std::string& what) : Error(what) {}
};

/// Zero-detuning evaluation requested while the dipole is detuned from the cavity.
struct DipoleCavityDetuned : Error {
    explicit DipoleCavityDetuned(const std::string& what) : Error(what) {}
};

/// The loss rate alone already exceeds the total linewidth the design requires.
struct InfeasibleLoss : Error {
    explicit InfeasibleLoss(const std::string& what) : Error(what) {}
};

/// Strong-coupling threshold undefined because g does not exceed gamma.
struct NoStrongCoupling : Error {
    explicit NoStrongCoupling(const std::string& what) : Error(what) {}
};

/// Malformed or incomplete run configuration (CLI / config file).
struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(what) {}
};

}  // namespace rscat
