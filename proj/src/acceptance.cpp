#include "rigidity/acceptance.hpp"

#include <cmath>
#include <numbers>

#include "rigidity/ball.hpp"
#include "rigidity/comparison.hpp"
#include "rigidity/minoo.hpp"
#include "rigidity/profiles.hpp"

namespace rigidity::acceptance {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFourPi = 4.0 * kPi;

using report::CheckResult;
using namespace comparison;

bool want(const std::string& only, const char* group) { return only.empty() || only == group; }

CheckResult bounded(const std::string& name, const std::string& group, double value,
                    double expected, double tolerance) {
    CheckResult c;
    c.name = name;
    c.group = group;
    c.value = value;
    c.expected = expected;
    c.tolerance = tolerance;
    c.pass = std::isfinite(value) && std::fabs(value - expected) <= tolerance;
    return c;
}

CheckResult positive(const std::string& name, const std::string& group, double value) {
    CheckResult c;
    c.name = name;
    c.group = group;
    c.value = value;
    c.expected = 0.0;
    c.tolerance = 0.0;
    c.pass = std::isfinite(value) && value > 0.0;
    return c;
}

CheckResult boolean(const std::string& name, const std::string& group, bool ok) {
    CheckResult c;
    c.name = name;
    c.group = group;
    c.value = ok ? 1.0 : 0.0;
    c.expected = 1.0;
    c.tolerance = 0.0;
    c.pass = ok;
    return c;
}

void gamma_checks(std::vector<CheckResult>& out) {
    const double pi2 = kPi * kPi;

    out.push_back(bounded("01_gamma_at_4pi", "gamma",
                          gamma(ZParam(kFourPi), EpsilonParam(0.5)), pi2, 1e-8));

    double worst2 = 0.0;
    for (double e : {0.25, 0.5}) {
        const EpsilonParam eps(e);
        const double zstar = regime_boundary(eps);
        for (int k = 1; k <= 5; ++k) {
            const ZParam z(zstar * k / 5.0);
            const double quad = gamma(z, eps);
            const double closed = gamma_closed_small_z(z, eps);
            worst2 = std::max(worst2, std::fabs(quad - closed));
        }
    }
    out.push_back(bounded("02_gamma_small_z_closed_form", "gamma", worst2, 0.0, 1e-8));

    double worst3 = 0.0;
    for (double e : {0.3, 0.5, 0.7}) {
        const EpsilonParam eps(e);
        const ZParam zstar(regime_boundary(eps));
        const double large = gamma_large_regime(zstar, eps);
        const double closed = gamma_closed_small_z(zstar, eps);
        worst3 = std::max(worst3, std::fabs(large - closed));
    }
    out.push_back(bounded("03_gamma_regime_continuity", "gamma", worst3, 0.0, 1e-8));
}

void gamma_scan_check(std::vector<CheckResult>& out) {
    const GammaScan scan = scan_gamma_bound(EpsilonParam(0.5), 256);
    out.push_back(positive("05_gamma_bound_grid", "gamma", scan.min_margin));
}

void eps_check(std::vector<CheckResult>& out) {
    const EpsilonReport rep = check_epsilon_condition(EpsilonParam(0.5), 256, 1e-4);
    CheckResult c = positive("04_epsilon_half_admissibility", "eps", rep.min_margin);
    c.pass = c.pass && rep.pass;
    out.push_back(c);
}

void curve_checks(std::vector<CheckResult>& out) {
    double worst = 0.0;
    for (double zv : {kFourPi, 2.0 * kPi, kPi}) {
        for (double ev : {0.5, 0.25}) {
            const ZParam z(zv);
            const EpsilonParam eps(ev);
            const ComparisonCurve closed = build_comparison_closed(z, eps);
            const ComparisonCurve ode = build_comparison_ode(z, eps);
            const double s_hi = 0.99 * closed.gamma;
            double dev = 0.0;
            for (int j = 0; j < 200; ++j) {
                const double s = s_hi * j / 199.0;
                dev = std::max(dev, std::fabs(ode.value(s) - closed.value(s)));
            }
            worst = std::max(worst, dev / closed.scale());
        }
    }
    out.push_back(bounded("06_curve_cross_validation", "curves", worst, 0.0, 1e-6));

    // Branch matching at the switch level for z = 3*pi, eps = 1/2: the two
    // min-arguments of the curve ODE evaluated with the first-integral slope.
    {
        const ZParam z(3.0 * kPi);
        const EpsilonParam eps(0.5);
        const double y = y_of_z(z, eps);
        const double y13 = std::cbrt(y);
        const double y23 = y13 * y13;
        const double fp_sq = 36.0 * kPi - 18.0 * (1.0 - eps.value) * y23 - 9.0 * y23;
        const double g1 = (36.0 * kPi - fp_sq) / (6.0 * y) - 4.5 / y13;
        const double g2 = -3.0 * eps.value / y13;
        out.push_back(bounded("07_branch_c1_matching", "curves", std::fabs(g1 - g2), 0.0, 1e-10));
    }
}

SeriesFit fit_endpoint_series() {
    const ComparisonCurve curve = build_comparison_closed(ZParam(kFourPi), EpsilonParam(0.5));
    return series_fit_f4pi(curve);
}

void series_checks(std::vector<CheckResult>& out, const SeriesFit& fit) {
    out.push_back(bounded("08a_series_a1", "series", fit.a1, -3.0 / 10.0, 1e-3 * (3.0 / 10.0)));
    out.push_back(bounded("08b_series_a2", "series", fit.a2, -3.0 / 280.0, 1e-2 * (3.0 / 280.0)));
}

void profile_checks(std::vector<CheckResult>& out) {
    const profiles::ProfileSamples profile = profiles::round_sphere_profile(200);
    const ComparisonCurve curve = build_comparison_closed(ZParam(kFourPi), EpsilonParam(0.5));
    out.push_back(bounded("09a_round_sphere_saturation", "profile",
                          profiles::verify_profile_equality(profile, curve), 0.0, 1e-6));

    const profiles::ViscosityPoint pt =
        profiles::viscosity_point(profile, EpsilonParam(0.5), kPi * kPi, 1e-3);
    out.push_back(bounded("09b_viscosity_equality_at_equator", "profile", pt.upp,
                          -1.0 / (2.0 * kPi), 1e-4));
}

void coeff_checks(std::vector<CheckResult>& out, const SeriesFit& fit) {
    const ball::PointCurvature pc{Rational(6), Rational(12), Rational(0)};
    const auto coeff = ball::coefficients_from_curvature(pc);
    out.push_back(boolean("10a_curvature_coefficients_exact", "coeff",
                          coeff.c1 == Rational(1, 5) && coeff.c2 == Rational(-2, 105)));
    const auto ub = ball::f_upper_bound_coefficients(coeff);
    out.push_back(boolean("10b_upper_bound_coefficients_exact", "coeff",
                          ub.b1 == Rational(-3, 10) && ub.b2 == Rational(-3, 280)));
    // The analytic chain closing the equality case: curvature coefficients
    // reproduce the fitted endpoint series.
    const bool chain_ok = std::fabs(fit.a1 - ub.b1.to_double()) <= 1e-3 * (3.0 / 10.0) &&
                          std::fabs(fit.a2 - ub.b2.to_double()) <= 1e-2 * (3.0 / 280.0);
    out.push_back(boolean("10c_chain_matches_series_fit", "coeff", chain_ok));
}

void rigidity_checks(std::vector<CheckResult>& out) {
    {
        const ball::RigidityVerdict v =
            ball::rigidity_chain({Rational(6), Rational(12), Rational(0)});
        bool forced_ric = false;
        for (const auto& s : v.forced)
            if (s == "Ric = 2g pointwise") forced_ric = true;
        out.push_back(boolean("11a_rigidity_verdict_round", "rigidity",
                              v.consistent && forced_ric));
    }
    {
        // R = 6.6 with the Cauchy-Schwarz-minimal |Ric|^2 = R^2/3.
        const ball::RigidityVerdict v =
            ball::rigidity_chain({Rational(33, 5), Rational(363, 25), Rational(0)});
        out.push_back(boolean("11b_rigidity_verdict_scalar_excess", "rigidity",
                              !v.consistent && !v.inequalities[0].satisfied));
    }
    {
        const ball::RigidityVerdict v =
            ball::rigidity_chain({Rational(6), Rational(13), Rational(0)});
        out.push_back(boolean("11c_rigidity_verdict_ricci_excess", "rigidity",
                              !v.consistent && !v.inequalities[1].satisfied));
    }
}

void minoo_checks(std::vector<CheckResult>& out) {
    bool jacobi_ok = true;
    for (int n = 2; n <= 10; ++n) {
        try {
            minoo::jacobi_value(minoo::EtaProfile::make(n, Rational(1, 10)));
        } catch (const std::logic_error&) {
            jacobi_ok = false;
        }
    }
    out.push_back(boolean("12_jacobi_identity_exact", "minoo", jacobi_ok));

    bool witnesses_ok = true;
    for (int n = 3; n <= 8; ++n) {
        const auto base = minoo::stability_integral(minoo::EtaProfile::make(n, Rational(0)));
        if (!(base.c_max > 0.0)) {
            witnesses_ok = false;
            continue;
        }
        const auto at_half = minoo::stability_integral(
            minoo::EtaProfile::make(n, Rational::from_double(0.5 * base.c_max)));
        if (!(at_half.jacobi_max < 0.0) || !(at_half.integral > 0.0)) witnesses_ok = false;
    }
    out.push_back(boolean("13a_minoo_witnesses_n3_to_n8", "minoo", witnesses_ok));

    const auto n3 = minoo::stability_integral(minoo::EtaProfile::make(3, Rational(0)));
    out.push_back(bounded("13b_minoo_stability_at_zero_offset_n3", "minoo", n3.integral,
                          0.2231, 1e-3));
    out.push_back(bounded("13c_minoo_cmax_n3", "minoo", n3.c_max, 0.0469, 1e-3));

    std::vector<double> grid;
    grid.reserve(100);
    for (int k = 1; k <= 100; ++k) grid.push_back(2.0 * k / 100.0);
    const auto dim2 = minoo::dimension_two_check(grid);
    CheckResult c;
    c.name = "14_dimension_two_failure";
    c.group = "minoo";
    c.value = dim2.max_integral;
    c.expected = 0.0;
    c.tolerance = 0.0;
    c.pass = dim2.all_nonpositive;
    out.push_back(c);
}

}  // namespace

std::vector<report::CheckResult> run_checks(const std::string& only) {
    std::vector<CheckResult> out;
    if (want(only, "gamma")) gamma_checks(out);
    if (want(only, "eps")) eps_check(out);
    if (want(only, "gamma")) gamma_scan_check(out);
    if (want(only, "curves")) curve_checks(out);
    const bool need_fit = want(only, "series") || want(only, "coeff");
    SeriesFit fit;
    if (need_fit) fit = fit_endpoint_series();
    if (want(only, "series")) series_checks(out, fit);
    if (want(only, "profile")) profile_checks(out);
    if (want(only, "coeff")) coeff_checks(out, fit);
    if (want(only, "rigidity")) rigidity_checks(out);
    if (want(only, "minoo")) minoo_checks(out);
    return out;
}

nlohmann::ordered_json make_report(const std::vector<report::CheckResult>& checks,
                                   const std::string& only) {
    nlohmann::ordered_json params;
    params["only"] = only.empty() ? "all" : only;
    return report::report_json(params, checks);
}

std::vector<report::CheckResult> run_with_determinism(const std::string& only) {
    std::vector<CheckResult> first = run_checks(only);
    if (only.empty() || only == "determinism") {
        const std::vector<CheckResult> second = run_checks(only);
        const std::string dump1 = make_report(first, only).dump(2);
        const std::string dump2 = make_report(second, only).dump(2);
        first.push_back(boolean("15_report_determinism", "determinism", dump1 == dump2));
    }
    return first;
}

}  // namespace rigidity::acceptance
