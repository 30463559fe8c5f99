#pragma once

#include <stdexcept>
#include <string>

namespace expsum {

/// Bad input: out-of-range argument, invalid family parameter, malformed request.
/// CLI maps this to exit code 1.
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A computed quantity violated a bound it is guaranteed to satisfy
/// (Weil cap, realness, accuracy budget, corrupt cache).
/// CLI maps this to exit code 2.
struct integrity_error : std::runtime_error {
    explicit integrity_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace expsum
