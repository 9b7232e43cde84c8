#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace rigidity::num {

// Which endpoint of the integration interval carries an inverse-square-root
// singularity, i.e. the integrand behaves like (distance to endpoint)^(-1/2).
enum class Singularity { none, left, right, both };

struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_subdivisions = 4000;
    Singularity singularity = Singularity::none;
};

// Thrown when the error bound cannot be pushed below tolerance within the
// subdivision budget. Carries the best estimate obtained so far.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& msg, double estimate, double error_bound)
        : std::runtime_error(msg), estimate_(estimate), error_bound_(error_bound) {}
    double estimate() const { return estimate_; }
    double error_bound() const { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

struct IntegralResult {
    double value = 0.0;
    double error_bound = 0.0;
    int subdivisions = 0;
};

// Adaptive Gauss-Kronrod 7-15 integration of f over (a, b), a < b.
// Flagged inverse-square-root endpoint singularities are removed exactly by
// the substitution x = a + u^2 (resp. x = b - u^2) before subdividing, so the
// transformed integrand is bounded. Endpoints are never evaluated.
// Deterministic for fixed inputs.
IntegralResult integrate_ex(const std::function<double(double)>& f, double a, double b,
                            const QuadratureSpec& spec = {});

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec = {});

}  // namespace rigidity::num
