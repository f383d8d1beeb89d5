#ifndef ISOTROPY_ERRORS_HPP
#define ISOTROPY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace isotropy {

/// Base class for all library errors.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed or schema-violating input (CLI exit code 2).
struct spec_error : error {
    explicit spec_error(const std::string& msg) : error(msg) {}
};

/// Violated mathematical precondition: parity, nonsingularity, shape (CLI exit code 3).
struct domain_error : error {
    explicit domain_error(const std::string& msg) : error(msg) {}
};

/// Problem size exceeds the configured safety limit (CLI exit code 4).
struct resource_error : error {
    explicit resource_error(const std::string& msg) : error(msg) {}
};

} // namespace isotropy

#endif
