#ifndef UAVOPT_ERRORS_HPP
#define UAVOPT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace uavopt {

// Malformed or out-of-range configuration input.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A trajectory or scenario that violates the flight constraints.
class InfeasibleError : public std::runtime_error {
public:
    explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure inside one of the solvers, or invalid solver input.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace uavopt

#endif // UAVOPT_ERRORS_HPP
