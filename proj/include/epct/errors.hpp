#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace epct {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-finite or otherwise unusable state. Integrators attach the last
/// accepted sample so callers can report where things went wrong.
class InvalidStateError : public Error {
public:
    explicit InvalidStateError(const std::string& what, double last_t = 0.0,
                               std::vector<double> last_state = {})
        : Error(what), last_t_(last_t), last_state_(std::move(last_state)) {}

    double last_t() const noexcept { return last_t_; }
    const std::vector<double>& last_state() const noexcept { return last_state_; }

private:
    double last_t_;
    std::vector<double> last_state_;
};

/// A coefficient model queried outside the range where it is defined.
class CoefficientDomainError : public Error {
public:
    using Error::Error;
};

/// rho0 <= 0 where a strictly positive initial density is required.
class NonVacuumError : public Error {
public:
    using Error::Error;
};

/// Argument outside the domain of a closed-form expression.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Step size collapsed without the solution growing.
class StiffnessError : public Error {
public:
    explicit StiffnessError(const std::string& what, double t) : Error(what), t_(t) {}
    double t() const noexcept { return t_; }

private:
    double t_;
};

/// Inputs violate the hypotheses of the comparison machinery.
class AdmissibilityError : public Error {
public:
    using Error::Error;
};

/// Time step exceeds the advective stability bound.
class StepSizeError : public Error {
public:
    using Error::Error;
};

/// Density went negative beyond the hard tolerance.
class PositivityError : public Error {
public:
    explicit PositivityError(const std::string& what, double t, double min_rho)
        : Error(what), t_(t), min_rho_(min_rho) {}
    double t() const noexcept { return t_; }
    double min_rho() const noexcept { return min_rho_; }

private:
    double t_;
    double min_rho_;
};

/// Schema violations in a run configuration; one entry per offending JSON path.
class ConfigError : public Error {
public:
    explicit ConfigError(std::vector<std::string> issues)
        : Error(join(issues)), issues_(std::move(issues)) {}

    const std::vector<std::string>& issues() const noexcept { return issues_; }

private:
    static std::string join(const std::vector<std::string>& issues) {
        std::string out = "invalid configuration";
        for (const auto& s : issues) {
            out += "\n  ";
            out += s;
        }
        return out;
    }
    std::vector<std::string> issues_;
};

}  // namespace epct
