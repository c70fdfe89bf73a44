#pragma once

#include <stdexcept>
#include <string>

namespace tripeda {

// Base for every failure raised by the library. Messages are meant to be
// shown to the user as-is.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid generator configuration; the message names the offending field.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace tripeda
