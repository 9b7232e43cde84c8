#include "rigidity/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace rigidity::comparison {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFourPi = 4.0 * kPi;

double pow23(double x) {  // x^(2/3) for x >= 0
    const double c = std::cbrt(x);
    return c * c;
}

// First-integral slope field |h'| as a function of the curve level
// x in (0, z^(3/2)]. Two branches above/below the switch level y; a single
// formula in the small-z regime.
struct SlopeField {
    double z = 0.0;
    double eps = 0.0;
    double b = 0.0;  // z^(3/2)
    double y = 0.0;  // switch level; b in the single-branch regime
    bool single_branch = false;

    double small_sq(double x) const { return 9.0 * eps * z - 9.0 * eps * pow23(x); }
    double branch1_sq(double x) const {
        const double pull = (y > 0.0) ? 18.0 * (1.0 - eps) * y / std::cbrt(x) : 0.0;
        return 36.0 * kPi - pull - 9.0 * pow23(x);
    }
    double branch2_sq(double x) const {
        return 36.0 * kPi - 27.0 * (1.0 - eps) * pow23(y) - 9.0 * eps * pow23(x);
    }
    double radicand(double x) const {
        if (single_branch) return small_sq(x);
        return (x >= y) ? branch1_sq(x) : branch2_sq(x);
    }
    double slope(double x) const { return std::sqrt(std::max(0.0, radicand(x))); }
};

SlopeField make_field(const ZParam& z, const EpsilonParam& eps) {
    SlopeField f;
    f.z = z.value;
    f.eps = eps.value;
    f.b = std::pow(z.value, 1.5);
    const double zstar = regime_boundary(eps);
    if (z.value <= zstar * (1.0 + 1e-14)) {
        f.single_branch = true;
        f.y = f.b;
        return f;
    }
    f.y = y_of_z(z, eps);
    if (f.y >= f.b * (1.0 - 1e-12)) {
        // Right at the regime boundary the branch-1 range is empty and the
        // branch-2 formula coincides with the small-z one.
        f.single_branch = true;
        f.y = f.b;
    } else if (f.y < 1e-300) {
        f.y = 0.0;  // z = 4*pi
    }
    return f;
}

num::QuadratureSpec curve_quad_spec() {
    num::QuadratureSpec qs;
    qs.rel_tol = 1e-11;
    qs.abs_tol = 1e-14;
    qs.max_subdivisions = 8000;
    return qs;
}

// Arc length from level h up to the top level b:
//   s(h) = int_h^b dx / |h'(x)|, singular at x = b.
double s_from_top(const SlopeField& field, double h, const num::QuadratureSpec& qs,
                  double beta) {
    auto inv = [&field](double x) { return 1.0 / field.slope(x); };
    num::QuadratureSpec sing = qs;
    sing.singularity = num::Singularity::right;
    if (!field.single_branch && field.y > 0.0 && h < field.y) {
        num::QuadratureSpec plain = qs;
        plain.singularity = num::Singularity::none;
        return beta + num::integrate(inv, h, field.y, plain);
    }
    return num::integrate(inv, h, field.b, sing);
}

// Arc length below level h: sigma(h) = int_0^h dx / |h'(x)| (regular).
double sigma_from_bottom(const SlopeField& field, double h, const num::QuadratureSpec& qs) {
    if (h <= 0.0) return 0.0;
    auto inv = [&field](double x) { return 1.0 / field.slope(x); };
    num::QuadratureSpec plain = qs;
    plain.singularity = num::Singularity::none;
    if (!field.single_branch && field.y > 0.0 && h > field.y) {
        return num::integrate(inv, 0.0, field.y, plain) +
               num::integrate(inv, field.y, h, plain);
    }
    return num::integrate(inv, 0.0, h, plain);
}

// Level grid for the closed-form construction, descending from b to 0:
// quadratically graded near the singular top, uniform through the middle,
// geometric near the bottom so the interpolant stays accurate as f -> 0.
std::vector<double> level_grid(const SlopeField& field, int base_samples) {
    const double b = field.b;
    std::vector<double> hs;
    hs.reserve(static_cast<std::size_t>(3 * base_samples));

    const double mid = 0.5 * b;
    for (int k = 0; k <= base_samples; ++k) {
        const double w = static_cast<double>(k) / base_samples;
        hs.push_back(b - (b - mid) * w * w);
    }
    const double ladder_start = 0.02 * b;
    const int n_mid = base_samples;
    for (int k = 1; k <= n_mid; ++k)
        hs.push_back(mid - (mid - ladder_start) * static_cast<double>(k) / n_mid);
    const double floor_level = 1e-12 * b;
    for (double lvl = ladder_start * 0.85; lvl > floor_level; lvl *= 0.85) hs.push_back(lvl);
    hs.push_back(0.0);
    if (!field.single_branch && field.y > floor_level && field.y < b * (1.0 - 1e-15))
        hs.push_back(field.y);

    std::sort(hs.begin(), hs.end(), std::greater<double>());
    std::vector<double> out;
    out.reserve(hs.size());
    for (double h : hs) {
        if (!out.empty()) {
            const double gap = out.back() - h;
            if (gap < 1e-14 * b && h != field.y) continue;
            if (gap <= 0.0) continue;
        }
        out.push_back(h);
    }
    // Drop grid points crowding the exact switch level.
    if (!field.single_branch && field.y > floor_level && field.y < b * (1.0 - 1e-15)) {
        std::vector<double> pruned;
        pruned.reserve(out.size());
        for (double h : out) {
            if (h != field.y && std::fabs(h - field.y) < 1e-9 * b) continue;
            pruned.push_back(h);
        }
        out.swap(pruned);
    }
    return out;
}

}  // namespace

EpsilonParam::EpsilonParam(double v) : value(v) {
    if (!(v > 0.0) || !(v < 1.0))
        throw std::invalid_argument("eps must lie in (0, 1), got " + std::to_string(v));
}

ZParam::ZParam(double v) : value(v) {
    if (!(v > 0.0) || !(v <= kFourPi))
        throw std::invalid_argument("z must lie in (0, 4*pi], got " + std::to_string(v));
}

double regime_boundary(const EpsilonParam& eps) { return kFourPi / (3.0 - 2.0 * eps.value); }

double y_of_z(const ZParam& z, const EpsilonParam& eps) {
    return std::sqrt(z.value) * (kFourPi - z.value) / (2.0 * (1.0 - eps.value));
}

double gamma_closed_small_z(const ZParam& z, const EpsilonParam& eps) {
    if (z.value > regime_boundary(eps) * (1.0 + 1e-14))
        throw std::invalid_argument("gamma_closed_small_z: z exceeds 4*pi/(3-2*eps)");
    return kPi / (4.0 * std::sqrt(eps.value)) * z.value;
}

double gamma_small_regime(const ZParam& z, const EpsilonParam& eps,
                          const num::QuadratureSpec& spec) {
    if (z.value > regime_boundary(eps) * (1.0 + 1e-14))
        throw std::invalid_argument("gamma_small_regime: z exceeds 4*pi/(3-2*eps)");
    const double zz = z.value;
    const double e = eps.value;
    const double b = std::pow(zz, 1.5);
    num::QuadratureSpec qs = spec;
    qs.singularity = num::Singularity::right;
    return num::integrate(
        [zz, e](double x) { return 1.0 / std::sqrt(std::max(0.0, 9.0 * e * zz - 9.0 * e * pow23(x))); },
        0.0, b, qs);
}

double gamma_large_regime(const ZParam& z, const EpsilonParam& eps,
                          const num::QuadratureSpec& spec) {
    if (z.value < regime_boundary(eps) * (1.0 - 1e-14))
        throw std::invalid_argument("gamma_large_regime: z below 4*pi/(3-2*eps)");
    const double e = eps.value;
    const double b = std::pow(z.value, 1.5);
    double y = y_of_z(z, eps);
    if (y > b) y = b;  // exact regime boundary up to roundoff

    double total = 0.0;
    if (y > 0.0) {
        const double cap = 36.0 * kPi - 27.0 * (1.0 - e) * pow23(y);
        num::QuadratureSpec qs = spec;
        qs.singularity =
            (y >= b * (1.0 - 1e-12)) ? num::Singularity::right : num::Singularity::none;
        total += num::integrate(
            [cap, e](double x) { return 1.0 / std::sqrt(std::max(0.0, cap - 9.0 * e * pow23(x))); },
            0.0, y, qs);
    }
    if (y < b * (1.0 - 1e-15)) {
        const double ycoef = 18.0 * (1.0 - e) * y;
        num::QuadratureSpec qs = spec;
        qs.singularity = num::Singularity::right;
        total += num::integrate(
            [ycoef](double x) {
                const double pull = (ycoef > 0.0) ? ycoef / std::cbrt(x) : 0.0;
                return 1.0 / std::sqrt(std::max(0.0, 36.0 * kPi - pull - 9.0 * pow23(x)));
            },
            y, b, qs);
    }
    return total;
}

double gamma(const ZParam& z, const EpsilonParam& eps, const num::QuadratureSpec& spec) {
    if (z.value <= regime_boundary(eps) * (1.0 + 1e-14)) return gamma_small_regime(z, eps, spec);
    return gamma_large_regime(z, eps, spec);
}

EpsilonReport check_epsilon_condition(const EpsilonParam& eps, int grid, double guard) {
    if (grid < 16) throw std::invalid_argument("check_epsilon_condition: grid must be >= 16");
    const double zstar = regime_boundary(eps);
    if (!(guard > 0.0) || !(guard < kFourPi - zstar))
        throw std::invalid_argument("check_epsilon_condition: guard must lie in (0, 4*pi - z*)");

    EpsilonReport report;
    report.eps = eps.value;
    report.grid_size = grid;
    report.guard = guard;
    report.endpoint_limit = kPi * kPi;
    report.z_values.reserve(grid);
    report.lhs_values.reserve(grid);

    const double d_hi = kFourPi - zstar;
    double worst_lhs = -1.0;
    double worst_z = zstar;
    for (int k = 0; k < grid; ++k) {
        const double frac = static_cast<double>(k) / (grid - 1);
        const double d = d_hi * std::pow(guard / d_hi, frac);
        const double zk = kFourPi - d;
        double lhs;
        try {
            lhs = gamma(ZParam(zk), eps);
        } catch (const num::QuadratureError& err) {
            throw num::QuadratureError("epsilon condition quadrature failed at z = " +
                                           std::to_string(zk) + ": " + err.what(),
                                       err.estimate(), err.error_bound());
        }
        report.z_values.push_back(zk);
        report.lhs_values.push_back(lhs);
        if (lhs > worst_lhs) {
            worst_lhs = lhs;
            worst_z = zk;
        }
    }
    report.min_margin = kPi * kPi - worst_lhs;
    report.argmin_z = worst_z;
    report.pass = report.min_margin > 0.0;
    return report;
}

bool ComparisonCurve::contains(double s) const {
    return std::fabs(s) <= gamma * (1.0 + 1e-12);
}

double ComparisonCurve::clamped_abs(double s) const {
    const double a = std::fabs(s);
    if (a > gamma * (1.0 + 1e-12))
        throw std::domain_error("ComparisonCurve: abscissa outside (-gamma, gamma)");
    return std::min(a, gamma);
}

double ComparisonCurve::value(double s) const {
    const double a = clamped_abs(s);
    for (std::size_t i = 0; i < legs_.size(); ++i) {
        if (a <= legs_[i]->t_back()) {
            if (a >= legs_[i]->t_front()) return legs_[i]->eval_component(a, 0);
        }
    }
    if (has_spline_) return spline_.value(std::min(a, spline_.x_back()));
    throw std::logic_error("ComparisonCurve: no backend covers abscissa");
}

double ComparisonCurve::derivative(double s) const {
    const double a = clamped_abs(s);
    double d = 0.0;
    bool found = false;
    for (std::size_t i = 0; i < legs_.size(); ++i) {
        if (a <= legs_[i]->t_back() && a >= legs_[i]->t_front()) {
            d = legs_[i]->eval_component(a, 1);
            found = true;
            break;
        }
    }
    if (!found) {
        if (!has_spline_) throw std::logic_error("ComparisonCurve: no backend covers abscissa");
        d = spline_.derivative(std::min(a, spline_.x_back()));
    }
    return (s < 0.0) ? -d : d;
}

ComparisonCurve build_comparison_closed(const ZParam& z, const EpsilonParam& eps,
                                        int base_samples) {
    if (base_samples < 32)
        throw std::invalid_argument("build_comparison_closed: base_samples too small");
    const SlopeField field = make_field(z, eps);
    const num::QuadratureSpec qs = curve_quad_spec();

    double beta = 0.0;
    double gamma_val = 0.0;
    if (field.single_branch || field.y == 0.0) {
        gamma_val = s_from_top(field, 0.0, qs, 0.0);
        beta = gamma_val;
    } else {
        beta = s_from_top(field, field.y, qs, 0.0);
        gamma_val = beta + sigma_from_bottom(field, field.y, qs);
    }

    const double sigma_cut = std::min(0.05 * field.b, (field.single_branch || field.y == 0.0)
                                                          ? 0.05 * field.b
                                                          : field.y);
    const std::vector<double> levels = level_grid(field, base_samples);

    std::vector<CurveSample> samples;
    samples.reserve(levels.size());
    for (double h : levels) {
        CurveSample cs;
        cs.f = h;
        if (h == field.b) {
            cs.s = 0.0;
            cs.fp = 0.0;
        } else {
            cs.fp = -field.slope(h);
            if (h == 0.0) {
                cs.s = gamma_val;
            } else if (!field.single_branch && field.y > 0.0 && h == field.y) {
                cs.s = beta;
            } else if (h >= sigma_cut) {
                cs.s = s_from_top(field, h, qs, beta);
            } else {
                cs.s = gamma_val - sigma_from_bottom(field, h, qs);
            }
        }
        samples.push_back(cs);
    }

    // Quadrature noise must not break strict monotonicity of the knots.
    std::vector<CurveSample> clean;
    clean.reserve(samples.size());
    for (const CurveSample& cs : samples) {
        if (!clean.empty() && !(cs.s > clean.back().s)) continue;
        clean.push_back(cs);
    }

    std::vector<double> xs, ys, ds;
    xs.reserve(clean.size());
    ys.reserve(clean.size());
    ds.reserve(clean.size());
    for (const CurveSample& cs : clean) {
        xs.push_back(cs.s);
        ys.push_back(cs.f);
        ds.push_back(cs.fp);
    }

    ComparisonCurve curve;
    curve.z = z.value;
    curve.eps = eps.value;
    curve.gamma = gamma_val;
    curve.beta = (field.single_branch || field.y <= 0.0 || field.y >= field.b) ? gamma_val : beta;
    curve.switch_level = field.single_branch ? field.b : field.y;
    curve.method = "closed";
    curve.top_ = field.b;
    curve.spline_ = num::HermiteSpline(std::move(xs), std::move(ys), std::move(ds), true);
    curve.has_spline_ = true;
    curve.samples_ = std::move(clean);
    return curve;
}

ComparisonCurve build_comparison_ode(const ZParam& z, const EpsilonParam& eps,
                                     const num::OdeSpec& spec) {
    const SlopeField field = make_field(z, eps);
    const double b = field.b;
    const double e = eps.value;
    const double f_floor = 1e-6 * b;

    auto rhs = [e](double, const num::State& y, num::State& dydt) {
        dydt.resize(2);
        const double f = y[0];
        if (!(f > 0.0)) {
            dydt[0] = std::numeric_limits<double>::quiet_NaN();
            dydt[1] = std::numeric_limits<double>::quiet_NaN();
            return;
        }
        const double inv3 = 1.0 / std::cbrt(f);
        const double g1 = (36.0 * kPi - y[1] * y[1]) / (6.0 * f) - 4.5 * inv3;
        const double g2 = -3.0 * e * inv3;
        dydt[0] = y[1];
        dydt[1] = std::min(g1, g2);
    };
    auto floor_event = [f_floor](double, const num::State& y) { return y[0] - f_floor; };
    auto switch_event = [e](double, const num::State& y) {
        const double f = y[0];
        if (!(f > 0.0)) return std::numeric_limits<double>::quiet_NaN();
        const double inv3 = 1.0 / std::cbrt(f);
        const double g1 = (36.0 * kPi - y[1] * y[1]) / (6.0 * f) - 4.5 * inv3;
        const double g2 = -3.0 * e * inv3;
        return g1 - g2;
    };

    const double horizon = 1.5 * kPi * kPi;
    num::OdeSpec os = spec;
    if (os.max_step <= 0.0) os.max_step = 0.05;

    ComparisonCurve curve;
    curve.z = z.value;
    curve.eps = eps.value;
    curve.switch_level = field.single_branch ? field.b : field.y;
    curve.method = "ode";
    curve.top_ = b;

    double t_end = 0.0;
    num::State y_end;
    bool aborted = false;
    try {
        auto leg1 = std::make_shared<num::OdeSolution>(num::integrate_ode(
            rhs, 0.0, num::State{b, 0.0}, {floor_event, switch_event}, horizon, os));
        if (!leg1->terminal_event())
            throw num::OdeError("comparison ODE reached horizon without hitting the floor");
        curve.legs_.push_back(leg1);
        if (leg1->terminal_event()->event_id == 1) {
            curve.ode_switch_abscissa = leg1->terminal_event()->t;
            const auto& last = leg1->samples().back();
            auto leg2 = std::make_shared<num::OdeSolution>(
                integrate_ode(rhs, last.t, last.y, {floor_event}, horizon, os));
            if (!leg2->terminal_event())
                throw num::OdeError("comparison ODE reached horizon without hitting the floor");
            curve.legs_.push_back(leg2);
        }
        const auto& tail = curve.legs_.back()->samples().back();
        t_end = tail.t;
        y_end = tail.y;
    } catch (const num::SingularityAbort& ab) {
        // Complete gamma from the first-integral relation at the last state.
        t_end = ab.t_last();
        y_end = ab.y_last();
        aborted = true;
        if (curve.legs_.empty())
            throw;  // nothing integrated at all; give up
    }

    curve.ode_t_end_ = t_end;
    const num::QuadratureSpec qs = curve_quad_spec();
    const double f_end = y_end[0];
    const double tail_arc = sigma_from_bottom(field, f_end, qs);
    curve.gamma = t_end + tail_arc;
    curve.gamma_extrapolated = aborted;
    if (field.single_branch || field.y <= 0.0 || field.y >= b)
        curve.beta = curve.gamma;
    else
        curve.beta = curve.gamma - sigma_from_bottom(field, field.y, qs);

    // Samples: accepted ODE steps, then a geometric tail down to f = 0.
    for (const auto& leg : curve.legs_)
        for (const auto& smp : leg->samples())
            if (curve.samples_.empty() || smp.t > curve.samples_.back().s)
                curve.samples_.push_back({smp.t, smp.y[0], smp.y[1]});

    std::vector<double> xs{t_end}, ys{f_end}, ds{y_end[1]};
    for (double lvl = f_end * 0.85; lvl > 1e-12 * b; lvl *= 0.85) {
        const double s = curve.gamma - sigma_from_bottom(field, lvl, qs);
        if (s <= xs.back()) continue;
        xs.push_back(s);
        ys.push_back(lvl);
        ds.push_back(-field.slope(lvl));
    }
    if (curve.gamma > xs.back()) {
        xs.push_back(curve.gamma);
        ys.push_back(0.0);
        ds.push_back(-field.slope(0.0));
    }
    curve.spline_ = num::HermiteSpline(xs, ys, ds, true);
    curve.has_spline_ = true;
    for (std::size_t i = 1; i < xs.size(); ++i) curve.samples_.push_back({xs[i], ys[i], ds[i]});
    return curve;
}

SeriesFit series_fit_f4pi(const ComparisonCurve& curve, double window_lo, double window_hi) {
    if (std::fabs(curve.z - kFourPi) > 1e-9)
        throw std::invalid_argument("series_fit_f4pi: curve must be built for z = 4*pi");
    if (!(window_lo > 0.0) || !(window_lo < window_hi) || !(window_hi <= 0.1 * kPi * kPi))
        throw std::invalid_argument(
            "series_fit_f4pi: window must satisfy 0 < lo < hi <= 0.1*pi^2");

    const double six_sqrt_pi = 6.0 * std::sqrt(kPi);
    double s11 = 0.0, s12 = 0.0, s22 = 0.0, t1 = 0.0, t2 = 0.0;
    int npts = 0;
    for (const CurveSample& cs : curve.samples()) {
        const double sigma = curve.gamma - cs.s;
        if (sigma < window_lo || sigma > window_hi) continue;
        const double g = cs.f / (six_sqrt_pi * sigma) - 1.0;
        const double u = pow23(3.0 * sigma / kFourPi);
        s11 += u * u;
        s12 += u * u * u;
        s22 += u * u * u * u;
        t1 += u * g;
        t2 += u * u * g;
        ++npts;
    }
    if (npts < 8)
        throw ConditioningError("series_fit_f4pi: fewer than 8 samples in the fit window");
    const double det = s11 * s22 - s12 * s12;
    if (!(det > 1e-6 * s11 * s22))
        throw ConditioningError("series_fit_f4pi: normal equations nearly singular");
    SeriesFit fit;
    fit.a1 = (t1 * s22 - t2 * s12) / det;
    fit.a2 = (s11 * t2 - s12 * t1) / det;
    fit.points = npts;
    return fit;
}

GammaScan scan_gamma_bound(const EpsilonParam& eps, int grid, double z_lo, double z_hi) {
    if (grid < 16) throw std::invalid_argument("scan_gamma_bound: grid must be >= 16");
    if (z_hi < 0.0) z_hi = kFourPi - 1e-4;
    if (!(z_lo > 0.0) || !(z_lo < z_hi) || !(z_hi < kFourPi))
        throw std::invalid_argument("scan_gamma_bound: need 0 < z_lo < z_hi < 4*pi");

    GammaScan scan;
    scan.eps = eps.value;
    scan.grid = grid;
    scan.z_values.reserve(grid);
    scan.margins.reserve(grid);
    scan.min_margin = std::numeric_limits<double>::infinity();
    const double d_hi = kFourPi - z_lo;
    const double d_lo = kFourPi - z_hi;
    for (int k = 0; k < grid; ++k) {
        const double frac = static_cast<double>(k) / (grid - 1);
        const double d = d_hi * std::pow(d_lo / d_hi, frac);
        const double zk = kFourPi - d;
        const double margin = kPi * kPi - gamma(ZParam(zk), eps);
        scan.z_values.push_back(zk);
        scan.margins.push_back(margin);
        if (margin < scan.min_margin) {
            scan.min_margin = margin;
            scan.argmin_z = zk;
        }
    }
    return scan;
}

DominanceReport dominance_scan(const profiles::ProfileSamples& profile, const ZParam& z,
                               const EpsilonParam& eps, double lambda) {
    if (!(lambda >= 1.0)) throw std::invalid_argument("dominance_scan: lambda must be >= 1");
    profile.validate();
    const ComparisonCurve curve = build_comparison_closed(z, eps);
    const double pi2 = kPi * kPi;

    DominanceReport report;
    report.z = z.value;
    report.eps = eps.value;
    report.lambda = lambda;
    report.min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < profile.s.size(); ++i) {
        const double arg = (profile.s[i] - pi2) / lambda;
        if (!curve.contains(arg)) continue;
        const double a = profile.A[i];
        const double gap = a * std::sqrt(a) - lambda * curve.value(arg);
        ++report.samples_in_domain;
        if (gap < report.min_gap) {
            report.min_gap = gap;
            report.argmin_s = profile.s[i];
        }
    }
    if (report.samples_in_domain == 0)
        throw std::domain_error("dominance_scan: no profile sample falls inside the curve domain");
    return report;
}

}  // namespace rigidity::comparison
