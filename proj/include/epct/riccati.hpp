#pragma once

// Domain types and right-hand sides of the Riccati systems along a
// characteristic of the 2D pressureless Euler-Poisson equations.
//
//   closed system:     d'   = -d^2/2 + A(t) rho^2 + k (rho - c_b)
//                      rho' = -rho d
//
//   auxiliary system:  b'   = -b^2/2 - B a^2 - a + 1
//                      a'   = -b a
//                      B'   = B
//
// A(t) absorbs every nonlocal term; CoefficientModel describes it.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace epct {

/// Forcing sign/strength and background density. k < 0 is attractive.
class PhysicalParams {
public:
    PhysicalParams() = default;
    PhysicalParams(double k, double c_b);

    double k() const noexcept { return k_; }
    double c_b() const noexcept { return c_b_; }
    bool attractive() const noexcept { return k_ < 0.0; }

private:
    double k_ = -1.0;
    double c_b_ = 1.0;
};

/// Phase point (rho, d) of the closed system.
struct State2 {
    double rho = 0.0;
    double d = 0.0;
};

/// Phase point (a, b, B) of the auxiliary system.
struct AuxState3 {
    double a = 0.0;
    double b = 0.0;
    double B = 1.0;
};

struct Deriv2 {
    double rho_dot = 0.0;
    double d_dot = 0.0;
};

struct Deriv3 {
    double a_dot = 0.0;
    double b_dot = 0.0;
    double B_dot = 0.0;
};

/// Initial data at the foot of a characteristic. Construction rejects
/// rho0 <= 0 (vacuum) with NonVacuumError.
class FlowInvariants {
public:
    FlowInvariants(double rho0, double omega0, double eta0, double xi0);

    double rho0() const noexcept { return rho0_; }
    double omega0() const noexcept { return omega0_; }
    double eta0() const noexcept { return eta0_; }
    double xi0() const noexcept { return xi0_; }

private:
    double rho0_;
    double omega0_;
    double eta0_;
    double xi0_;
};

/// The nonlocal coefficient A(t).
///
/// Variants: a constant, the exponential envelope -alpha e^{beta t}, a
/// piecewise-linear table (no extrapolation), or an arbitrary callback.
/// An optional upper clamp gamma caps every evaluated value. Instances are
/// immutable and cheap to copy.
class CoefficientModel {
public:
    struct Constant {
        double value;
    };
    struct ExponentialEnvelope {
        double alpha;
        double beta;
    };
    struct Tabulated {
        std::shared_ptr<const std::vector<double>> times;
        std::shared_ptr<const std::vector<double>> values;
    };
    struct Callback {
        std::function<double(double)> fn;
        std::string label;
    };
    using Variant = std::variant<Constant, ExponentialEnvelope, Tabulated, Callback>;

    static CoefficientModel constant(double value);
    static CoefficientModel exponential_envelope(double alpha = 1.0, double beta = 1.0);
    static CoefficientModel tabulated(std::vector<double> times, std::vector<double> values);
    static CoefficientModel callback(std::function<double(double)> fn, std::string label = "callback");

    CoefficientModel with_upper_clamp(double gamma) const;

    double operator()(double t) const;

    const Variant& variant() const noexcept { return variant_; }
    std::optional<double> upper_clamp() const noexcept { return upper_clamp_; }

    /// Closed interval on which the model is defined; nullopt means [0, inf).
    std::optional<std::pair<double, double>> domain() const;

    std::string describe() const;

private:
    explicit CoefficientModel(Variant v) : variant_(std::move(v)) {}

    Variant variant_;
    std::optional<double> upper_clamp_;
};

double eval_A(const CoefficientModel& A, double t);

/// gamma = (omega0/rho0)^2 / 2, the uniform upper bound of A(t).
double gamma_upper_bound(const FlowInvariants& inv);

/// A(0) = ((omega0/rho0)^2 - (eta0/rho0)^2 - (xi0/rho0)^2) / 2.
double eval_A0(const FlowInvariants& inv);

/// Closed system right-hand side. Throws InvalidStateError on non-finite input.
Deriv2 eval_rhs_ep(const State2& s, double t, const CoefficientModel& A, const PhysicalParams& p);

/// Auxiliary system right-hand side. Throws InvalidStateError on non-finite input.
Deriv3 eval_rhs_aux(const AuxState3& s);

}  // namespace epct
