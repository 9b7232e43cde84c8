#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rigidity/interp.hpp"
#include "rigidity/ode.hpp"
#include "rigidity/profile_samples.hpp"
#include "rigidity/quadrature.hpp"

namespace rigidity::comparison {

struct EpsilonParam {
    double value;
    explicit EpsilonParam(double v);
};

struct ZParam {
    double value;
    explicit ZParam(double v);
};

// z* = 4*pi / (3 - 2*eps): below it the comparison curve runs on a single
// slope branch, above it the slope field switches branch at level y(z).
double regime_boundary(const EpsilonParam& eps);

// y(z) = z^(1/2) (4*pi - z) / (2 (1 - eps))
double y_of_z(const ZParam& z, const EpsilonParam& eps);

// Closed form (pi / (4 sqrt(eps))) z, valid for z <= z*.
double gamma_closed_small_z(const ZParam& z, const EpsilonParam& eps);

// Half-domain length of the comparison curve, by endpoint-singular
// quadrature. Dispatches on the regime of z.
double gamma(const ZParam& z, const EpsilonParam& eps, const num::QuadratureSpec& spec = {});

// Regime-forced variants, exposed so the continuity of the two formulas at
// z = z* can be checked directly.
double gamma_small_regime(const ZParam& z, const EpsilonParam& eps,
                          const num::QuadratureSpec& spec = {});
double gamma_large_regime(const ZParam& z, const EpsilonParam& eps,
                          const num::QuadratureSpec& spec = {});

struct EpsilonReport {
    double eps = 0.0;
    bool pass = false;
    double min_margin = 0.0;   // pi^2 minus the largest sampled left-hand side
    double argmin_z = 0.0;     // z attaining the smallest margin
    int grid_size = 0;
    double guard = 0.0;
    double endpoint_limit = 0.0;  // analytic value of the left side at z = 4*pi
    std::vector<double> z_values;
    std::vector<double> lhs_values;
};

// Samples the admissibility condition's left-hand side on a grid of z in
// [z*, 4*pi - guard] clustered toward 4*pi, with y tied to z by
// 2 (1 - eps) y = z^(1/2) (4*pi - z). Passes iff every sampled value stays
// strictly below pi^2; the z = 4*pi endpoint is reported via its analytic
// limit pi^2 and is not itself sampled.
EpsilonReport check_epsilon_condition(const EpsilonParam& eps, int grid = 256,
                                      double guard = 1e-4);

struct CurveSample {
    double s;
    double f;
    double fp;
};

// A comparison curve f on (-gamma, gamma): even, strictly decreasing on
// (0, gamma), f(0) = z^(3/2), f -> 0 at the endpoints. beta is the abscissa
// where the slope field switches branch (beta = gamma when z <= z* or the
// switch level is zero).
class ComparisonCurve {
public:
    double z = 0.0;
    double eps = 0.0;
    double gamma = 0.0;
    double beta = 0.0;
    double switch_level = 0.0;  // level y(z) clamped to [0, z^(3/2)]
    bool gamma_extrapolated = false;
    std::string method;           // "closed" or "ode"
    double ode_switch_abscissa = -1.0;  // branch-switch event seen by the ODE run, if any

    double scale() const { return top_; }
    bool contains(double s) const;
    double value(double s) const;
    double derivative(double s) const;
    const std::vector<CurveSample>& samples() const { return samples_; }

private:
    friend ComparisonCurve build_comparison_closed(const ZParam&, const EpsilonParam&, int);
    friend ComparisonCurve build_comparison_ode(const ZParam&, const EpsilonParam&,
                                                const num::OdeSpec&);
    double clamped_abs(double s) const;

    double top_ = 0.0;  // z^(3/2)
    num::HermiteSpline spline_;
    bool has_spline_ = false;
    std::vector<std::shared_ptr<const num::OdeSolution>> legs_;
    double ode_t_end_ = 0.0;
    std::vector<CurveSample> samples_;
};

// Builds the curve by inverting s(h) = int_h^{z^(3/2)} dx / |h'(x)| with the
// regime-appropriate first-integral slope field.
ComparisonCurve build_comparison_closed(const ZParam& z, const EpsilonParam& eps,
                                        int base_samples = 320);

// Builds the curve by direct integration of
//   f'' = min{ (36 pi - f'^2) / (6 f) - (9/2) f^(-1/3), -3 eps f^(-1/3) }
// from f(0) = z^(3/2), f'(0) = 0, stopping at the floor f = 1e-6 z^(3/2) and
// completing the remaining arc length from the first-integral relation.
ComparisonCurve build_comparison_ode(const ZParam& z, const EpsilonParam& eps,
                                     const num::OdeSpec& spec = {});

class ConditioningError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SeriesFit {
    double a1 = 0.0;
    double a2 = 0.0;
    int points = 0;
};

// Least-squares fit of f(gamma - sigma) / (6 sqrt(pi) sigma) - 1 against
// {(3 sigma / 4 pi)^(2/3), (3 sigma / 4 pi)^(4/3)} using the curve's own
// samples with sigma in [window_lo, window_hi]. The curve must be built for
// z = 4*pi.
SeriesFit series_fit_f4pi(const ComparisonCurve& curve, double window_lo = 5e-4,
                          double window_hi = 0.025);

struct GammaScan {
    double eps = 0.0;
    int grid = 0;
    std::vector<double> z_values;
    std::vector<double> margins;  // pi^2 - gamma(z)
    double min_margin = 0.0;
    double argmin_z = 0.0;
};

// Margins pi^2 - gamma(z) over a z-grid in (0, 4*pi) clustered toward 4*pi.
GammaScan scan_gamma_bound(const EpsilonParam& eps, int grid = 256, double z_lo = 0.05,
                           double z_hi = -1.0 /* default 4*pi - 1e-4 */);

struct DominanceReport {
    double z = 0.0;
    double eps = 0.0;
    double lambda = 1.0;
    double min_gap = 0.0;   // min over sampled s of F(s) - lambda f_z((s - pi^2)/lambda)
    double argmin_s = 0.0;
    int samples_in_domain = 0;
};

// Scans F(s) - lambda f_z((s - pi^2) / lambda) over the profile samples whose
// rescaled abscissa falls inside the curve domain. A negative min_gap is a
// violation certificate.
DominanceReport dominance_scan(const profiles::ProfileSamples& profile, const ZParam& z,
                               const EpsilonParam& eps, double lambda = 1.0);

}  // namespace rigidity::comparison
