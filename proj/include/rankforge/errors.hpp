#ifndef RANKFORGE_ERRORS_HPP
#define RANKFORGE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rankforge {

// Input data failed a structural check (bad rank multiset, duplicate name, ...).
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Input text could not be read at all; carries row/column context in the message.
struct ParseError : ValidationError {
    explicit ParseError(const std::string& what) : ValidationError(what) {}
};

// A requested operation needs context the caller did not supply
// (e.g. count-back without reference standings).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace rankforge

#endif
