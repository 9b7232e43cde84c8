#pragma once

#include <string>
#include <vector>

#include "rigidity/rational.hpp"

#include "json.hpp"

namespace rigidity::minoo {

// Dense polynomial in one variable with exact rational coefficients,
// coeffs[k] * t^k. Trailing zeros are trimmed.
struct Poly {
    std::vector<Rational> coeffs;

    static Poly zero() { return Poly{}; }
    static Poly monomial(const Rational& c, int power);
    Rational coeff(int power) const;
    int degree() const;
    Poly derivative() const;
    double eval(double t) const;
    Rational eval_exact(const Rational& t) const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly scaled(const Rational& c) const;
};

// The equator seed function
//   eta = -c - 1 + (n-1)/2 t^2 + (n-1)(n+1)/24 t^4 + (n-1)(n+1)(n+3)/240 t^6
// on t in [-1, 1], t the distinguished ambient coordinate of S^(n-1).
struct EtaProfile {
    int n = 3;
    Rational c;
    Rational a0, a2, a4, a6;

    static EtaProfile make(int n, const Rational& c);
    Poly poly() const;       // full eta including the offset
    Poly base_poly() const;  // eta at c = 0 (constant term -1)
};

double eta_eval(const EtaProfile& profile, double t);
Rational eta_eval_exact(const EtaProfile& profile, const Rational& t);

// Laplacian on S^(n-1) of a function of the ambient height coordinate:
//   (1 - t^2) f''(t) - (n-1) t f'(t), exact in the coefficients.
Poly sphere_laplacian_height(const Poly& f, int n);

struct JacobiValue {
    Poly poly;             // Delta eta + (n-1) eta
    Rational const_coeff;  // -(n-1) c
    Rational t6_coeff;     // -(n-1)(n+1)(n+3)(n+5)/48
    double max_value;      // max over [-1, 1], attained at t = 0
};

// Computes Delta eta + (n-1) eta and asserts the exact cancellation of the
// t^2 and t^4 coefficients; the closed form is
//   -(n-1) c - (n-1)(n+1)(n+3)(n+5)/48 t^6.
JacobiValue jacobi_value(const EtaProfile& profile);

struct StabilityResult {
    int n = 0;
    double c = 0.0;
    double integral = 0.0;      // I(c), normalized 1-D integral (S^(n-2) factor dropped)
    double jacobi_max = 0.0;    // -(n-1) c
    double c_max = 0.0;         // largest c with I(c) > 0; 0 if none
    Rational I0, L, Q;          // I(c) = pi^p (I0 + L c - Q c^2)
    int pi_power = 0;           // p: 1 for even n, 0 for odd n
    double quadrature_integral = 0.0;  // independent adaptive-quadrature value
};

// Stability integral
//   I(c) = int_{-1}^{1} [ (1 - t^2) eta'(t)^2 - (n-1) eta(t)^2 ] (1 - t^2)^((n-3)/2) dt,
// computed exactly from rational weight moments and cross-checked by adaptive
// quadrature after the substitution t = sin(theta). The exact quadratic in c
// also yields c_max.
StabilityResult stability_integral(const EtaProfile& profile);

struct DimensionTwoReport {
    std::vector<double> c_values;
    std::vector<double> integrals;
    double max_integral = 0.0;
    bool all_nonpositive = false;
};

// Evaluates I(c) for n = 2 over a grid of positive offsets. The construction
// is expected to fail in this dimension: all values nonpositive.
DimensionTwoReport dimension_two_check(const std::vector<double>& c_grid);

// min over the equator of the first-order mean curvature
//   -t_param (Delta eta + (n-1) eta) = t_param (n-1) c, attained at t = 0.
double mean_curvature_first_order(const EtaProfile& profile, double t_param);

nlohmann::ordered_json stability_certificate(const StabilityResult& result);

}  // namespace rigidity::minoo
