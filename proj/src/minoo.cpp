#include "rigidity/minoo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "rigidity/quadrature.hpp"

namespace rigidity::minoo {

namespace {

constexpr double kPi = std::numbers::pi;

void trim(std::vector<Rational>& c) {
    while (!c.empty() && c.back() == Rational(0)) c.pop_back();
}

long long double_factorial(int k) {
    // (-1)!! = 0!! = 1
    long long r = 1;
    for (int v = k; v > 1; v -= 2) r *= v;
    return r;
}

// Moments mu_k = int_{-1}^{1} t^(2k) (1 - t^2)^((n-3)/2) dt = pi^p * rational,
// p = 1 for even n and 0 for odd n. Seeded at k = 0 and advanced with the
// Beta-function ratio mu_k / mu_{k-1} = (2k - 1) / (2k + n - 2).
std::vector<Rational> weight_moments(int n, int k_max) {
    std::vector<Rational> mu(k_max + 1);
    if (n % 2 == 0)
        mu[0] = Rational(double_factorial(n - 3), double_factorial(n - 2));
    else
        mu[0] = Rational(2 * double_factorial(n - 3), double_factorial(n - 2));
    for (int k = 1; k <= k_max; ++k)
        mu[k] = mu[k - 1] * Rational(2 * k - 1, 2 * k + n - 2);
    return mu;
}

// Exact integral of an even polynomial against the weight, rational part only.
Rational weighted_integral(const Poly& p, const std::vector<Rational>& mu) {
    Rational total(0);
    for (int k = 0; 2 * k <= p.degree(); ++k) total += p.coeff(2 * k) * mu[k];
    // Odd coefficients integrate to zero against the even weight; the eta
    // machinery only produces even polynomials here.
    for (int j = 1; j <= p.degree(); j += 2)
        if (!(p.coeff(j) == Rational(0)))
            throw std::logic_error("weighted_integral: unexpected odd coefficient");
    return total;
}

struct QuadraticParts {
    Rational I0, L, Q;  // I(c) = pi^p (I0 + L c - Q c^2)
    int pi_power = 0;
};

QuadraticParts stability_quadratic(int n) {
    if (n < 2) throw std::invalid_argument("stability integral: n must be >= 2");
    const EtaProfile base = EtaProfile::make(n, Rational(0));
    const Poly eta0 = base.base_poly();
    const Poly etap = eta0.derivative();
    Poly one_minus_t2;
    one_minus_t2.coeffs = {Rational(1), Rational(0), Rational(-1)};

    const std::vector<Rational> mu = weight_moments(n, 7);
    const Rational a = weighted_integral(one_minus_t2 * etap * etap, mu);
    const Rational b0 = weighted_integral(eta0 * eta0, mu);
    const Rational l_eta = weighted_integral(eta0, mu);

    QuadraticParts parts;
    parts.I0 = a - Rational(n - 1) * b0;
    parts.L = Rational(2 * (n - 1)) * l_eta;
    parts.Q = Rational(n - 1) * mu[0];
    parts.pi_power = (n % 2 == 0) ? 1 : 0;
    return parts;
}

double pi_factor(int p) { return (p == 1) ? kPi : 1.0; }

double quadratic_at(const QuadraticParts& parts, double c) {
    return pi_factor(parts.pi_power) *
           (parts.I0.to_double() + parts.L.to_double() * c - parts.Q.to_double() * c * c);
}

// Adaptive-quadrature route: t = sin(theta) removes the n = 2 endpoint
// singularity exactly; the integrand becomes P(sin theta) cos^(n-2)(theta).
double stability_by_quadrature(const EtaProfile& profile) {
    const int n = profile.n;
    const Poly eta = profile.poly();
    const Poly etap = eta.derivative();
    auto integrand = [&eta, &etap, n](double theta) {
        const double t = std::sin(theta);
        const double ct = std::cos(theta);
        const double ep = etap.eval(t);
        const double ev = eta.eval(t);
        const double core = (1.0 - t * t) * ep * ep - (n - 1) * ev * ev;
        return core * std::pow(ct, n - 2);
    };
    num::QuadratureSpec qs;
    qs.rel_tol = 1e-12;
    qs.abs_tol = 1e-13;
    return num::integrate(integrand, -0.5 * kPi, 0.5 * kPi, qs);
}

}  // namespace

Poly Poly::monomial(const Rational& c, int power) {
    Poly p;
    p.coeffs.assign(power + 1, Rational(0));
    p.coeffs[power] = c;
    trim(p.coeffs);
    return p;
}

Rational Poly::coeff(int power) const {
    if (power < 0 || power >= static_cast<int>(coeffs.size())) return Rational(0);
    return coeffs[power];
}

int Poly::degree() const { return static_cast<int>(coeffs.size()) - 1; }

Poly Poly::derivative() const {
    Poly d;
    if (coeffs.size() <= 1) return d;
    d.coeffs.resize(coeffs.size() - 1);
    for (std::size_t k = 1; k < coeffs.size(); ++k)
        d.coeffs[k - 1] = coeffs[k] * Rational(static_cast<long long>(k));
    trim(d.coeffs);
    return d;
}

double Poly::eval(double t) const {
    double acc = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * t + coeffs[k].to_double();
    return acc;
}

Rational Poly::eval_exact(const Rational& t) const {
    Rational acc(0);
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * t + coeffs[k];
    return acc;
}

Poly operator+(const Poly& a, const Poly& b) {
    Poly r;
    r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), Rational(0));
    for (std::size_t k = 0; k < r.coeffs.size(); ++k)
        r.coeffs[k] = a.coeff(static_cast<int>(k)) + b.coeff(static_cast<int>(k));
    trim(r.coeffs);
    return r;
}

Poly operator-(const Poly& a, const Poly& b) {
    Poly r;
    r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), Rational(0));
    for (std::size_t k = 0; k < r.coeffs.size(); ++k)
        r.coeffs[k] = a.coeff(static_cast<int>(k)) - b.coeff(static_cast<int>(k));
    trim(r.coeffs);
    return r;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    if (a.coeffs.empty() || b.coeffs.empty()) return r;
    r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs.size(); ++j)
            r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    trim(r.coeffs);
    return r;
}

Poly Poly::scaled(const Rational& c) const {
    Poly r = *this;
    for (auto& v : r.coeffs) v *= c;
    trim(r.coeffs);
    return r;
}

EtaProfile EtaProfile::make(int n, const Rational& c) {
    if (n < 2) throw std::invalid_argument("EtaProfile: n must be >= 2");
    if (c < Rational(0)) throw std::invalid_argument("EtaProfile: offset c must be >= 0");
    EtaProfile p;
    p.n = n;
    p.c = c;
    p.a0 = -c - Rational(1);
    p.a2 = Rational(n - 1, 2);
    p.a4 = Rational(static_cast<long long>(n - 1) * (n + 1), 24);
    p.a6 = Rational(static_cast<long long>(n - 1) * (n + 1) * (n + 3), 240);
    return p;
}

Poly EtaProfile::poly() const {
    Poly p;
    p.coeffs = {a0, Rational(0), a2, Rational(0), a4, Rational(0), a6};
    trim(p.coeffs);
    return p;
}

Poly EtaProfile::base_poly() const {
    Poly p;
    p.coeffs = {Rational(-1), Rational(0), a2, Rational(0), a4, Rational(0), a6};
    trim(p.coeffs);
    return p;
}

double eta_eval(const EtaProfile& profile, double t) {
    if (std::fabs(t) > 1.0 + 1e-12)
        throw std::domain_error("eta_eval: |t| must be <= 1");
    return profile.poly().eval(t);
}

Rational eta_eval_exact(const EtaProfile& profile, const Rational& t) {
    return profile.poly().eval_exact(t);
}

Poly sphere_laplacian_height(const Poly& f, int n) {
    if (n < 2) throw std::invalid_argument("sphere_laplacian_height: n must be >= 2");
    const Poly fp = f.derivative();
    const Poly fpp = fp.derivative();
    Poly one_minus_t2;
    one_minus_t2.coeffs = {Rational(1), Rational(0), Rational(-1)};
    const Poly t_poly = Poly::monomial(Rational(1), 1);
    return one_minus_t2 * fpp - (t_poly * fp).scaled(Rational(n - 1));
}

JacobiValue jacobi_value(const EtaProfile& profile) {
    const int n = profile.n;
    const Poly eta = profile.poly();
    const Poly jac = sphere_laplacian_height(eta, n) + eta.scaled(Rational(n - 1));

    const Rational want_const = -Rational(n - 1) * profile.c;
    const Rational want_t6 =
        -Rational(static_cast<long long>(n - 1) * (n + 1) * (n + 3) * (n + 5), 48);
    for (int k = 0; k <= jac.degree(); ++k) {
        const Rational got = jac.coeff(k);
        const Rational want = (k == 0) ? want_const : (k == 6 ? want_t6 : Rational(0));
        if (!(got == want))
            throw std::logic_error("jacobi_value: closed-form identity violated at power " +
                                   std::to_string(k) + " (got " + got.to_string() + ")");
    }

    JacobiValue jv;
    jv.poly = jac;
    jv.const_coeff = want_const;
    jv.t6_coeff = want_t6;
    jv.max_value = want_const.to_double();  // t^6 coefficient is negative
    return jv;
}

StabilityResult stability_integral(const EtaProfile& profile) {
    const QuadraticParts parts = stability_quadratic(profile.n);
    const double c = profile.c.to_double();

    StabilityResult result;
    result.n = profile.n;
    result.c = c;
    result.I0 = parts.I0;
    result.L = parts.L;
    result.Q = parts.Q;
    result.pi_power = parts.pi_power;

    // Exact rational evaluation when the offset allows it, double otherwise.
    try {
        const Rational exact = parts.I0 + parts.L * profile.c - parts.Q * profile.c * profile.c;
        result.integral = pi_factor(parts.pi_power) * exact.to_double();
    } catch (const std::overflow_error&) {
        result.integral = quadratic_at(parts, c);
    }

    result.jacobi_max = jacobi_value(profile).max_value;

    const double i0 = parts.I0.to_double();
    const double l = parts.L.to_double();
    const double q = parts.Q.to_double();
    result.c_max = (i0 > 0.0) ? (l + std::sqrt(l * l + 4.0 * q * i0)) / (2.0 * q) : 0.0;

    result.quadrature_integral = stability_by_quadrature(profile);
    const double scale = std::max(1.0, std::fabs(result.integral));
    if (std::fabs(result.quadrature_integral - result.integral) > 1e-10 * scale)
        throw std::logic_error("stability_integral: quadrature disagrees with exact value");
    return result;
}

DimensionTwoReport dimension_two_check(const std::vector<double>& c_grid) {
    for (double c : c_grid)
        if (!(c > 0.0))
            throw std::invalid_argument("dimension_two_check: offsets must be positive");
    const QuadraticParts parts = stability_quadratic(2);

    DimensionTwoReport report;
    report.c_values = c_grid;
    report.integrals.reserve(c_grid.size());
    report.max_integral = -std::numeric_limits<double>::infinity();
    for (double c : c_grid) {
        const double val = quadratic_at(parts, c);
        report.integrals.push_back(val);
        report.max_integral = std::max(report.max_integral, val);
    }
    report.all_nonpositive = report.max_integral <= 0.0;
    return report;
}

double mean_curvature_first_order(const EtaProfile& profile, double t_param) {
    if (!(t_param > 0.0))
        throw std::invalid_argument("mean_curvature_first_order: t_param must be positive");
    return -t_param * jacobi_value(profile).max_value;
}

nlohmann::ordered_json stability_certificate(const StabilityResult& result) {
    nlohmann::ordered_json j;
    j["n"] = result.n;
    j["c"] = result.c;
    j["jacobi_max"] = result.jacobi_max;
    j["stability_integral"] = result.integral;
    j["c_max"] = result.c_max;
    j["conditions_hold"] = (result.jacobi_max < 0.0) && (result.integral > 0.0);
    return j;
}

}  // namespace rigidity::minoo
