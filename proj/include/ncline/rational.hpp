#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ncline {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Raised on malformed or mathematically invalid input (CLI exit code 2).
struct InvalidInput : std::runtime_error {
    explicit InvalidInput(const std::string& m) : std::runtime_error(m) {}
};

/// Raised when a computation exceeds a configured cap (CLI exit code 3).
struct ResourceLimit : std::runtime_error {
    explicit ResourceLimit(const std::string& m) : std::runtime_error(m) {}
};

/// Raised when an internal consistency check fails; indicates a bug.
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& m) : std::logic_error(m) {}
};

inline bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline Rat parse_rational(const std::string& s) {
    if (s.empty()) throw InvalidInput("empty rational literal");
    try {
        Rat r(s);
        return r;
    } catch (const std::exception&) {
        throw InvalidInput("bad rational literal: '" + s + "'");
    }
}

inline std::string rational_to_string(const Rat& r) { return r.str(); }

}  // namespace ncline
