#pragma once

#include <stdexcept>
#include <string>

namespace rci {

/// Argument outside the mathematical domain of an operation.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Invalid configuration (precision too low, bad retry count, ...).
class config_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical result did not meet its tolerance at the working precision.
class precision_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Adaptive precision loop exhausted its retries.
class nonconvergence_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Class number > 1 and no Galois data is available for the field.
class unsupported_field_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operation excluded for this field (e.g. Q(sqrt(-1)), Q(sqrt(-3))).
class not_applicable_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace rci
