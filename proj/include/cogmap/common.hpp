#ifndef COGMAP_COMMON_HPP
#define COGMAP_COMMON_HPP

#include <cmath>
#include <stdexcept>
#include <string>

namespace cogmap {

// Bad or inconsistent user-facing settings (config keys, landscape specs,
// unresolved kernels). Maps to CLI exit code 1.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// A solver failed to converge or detected a structural problem (non-monotone
// inner map, missing sign change, iteration cap). Maps to CLI exit code 2.
class solver_error : public std::runtime_error {
public:
    explicit solver_error(const std::string& what) : std::runtime_error(what) {}
};

// The time stepper detected NaN or unbounded growth. Maps to CLI exit code 3.
class blowup_error : public std::runtime_error {
public:
    explicit blowup_error(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

inline bool is_finite(double x) { return std::isfinite(x); }

} // namespace cogmap

#endif
