#include "rigidity/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace rigidity::profiles {

namespace {

constexpr double kPi = std::numbers::pi;

double volume_of_radius(double r) { return 2.0 * kPi * r - kPi * std::sin(2.0 * r); }

// Inverts s = 2 pi r - pi sin(2r) on (0, pi). ds/dr = 4 pi sin^2(r) vanishes
// at the endpoints, so Newton is safeguarded by a bisection bracket.
double radius_of_volume(double s) {
    if (!(s > 0.0) || !(s < 2.0 * kPi * kPi))
        throw std::domain_error("round sphere profile: s outside (0, 2*pi^2)");
    double lo = 0.0, hi = kPi;
    double r = std::cbrt(3.0 * s / (4.0 * kPi));  // small-radius behavior s ~ (4pi/3) r^3
    r = std::clamp(r, 1e-12, kPi - 1e-12);
    for (int it = 0; it < 200; ++it) {
        const double m = volume_of_radius(r) - s;
        if (m > 0.0)
            hi = r;
        else
            lo = r;
        const double dm = 4.0 * kPi * std::sin(r) * std::sin(r);
        double r_next = (dm > 0.0) ? r - m / dm : 0.5 * (lo + hi);
        if (!(r_next > lo) || !(r_next < hi)) r_next = 0.5 * (lo + hi);
        if (std::fabs(r_next - r) < 1e-16 * kPi) {
            r = r_next;
            break;
        }
        r = r_next;
    }
    return r;
}

}  // namespace

ProfileSamples round_sphere_profile(int grid) {
    if (grid < 3) throw std::invalid_argument("round_sphere_profile: grid must be >= 3");
    ProfileSamples profile;
    profile.label = "round-S3";
    profile.s.reserve(grid);
    profile.A.reserve(grid);
    for (int i = 1; i <= grid; ++i) {
        const double r = kPi * static_cast<double>(i) / (grid + 1);
        const double si = std::sin(r);
        profile.s.push_back(volume_of_radius(r));
        profile.A.push_back(4.0 * kPi * si * si);
    }
    profile.area_eval = [](double s) {
        const double r = radius_of_volume(s);
        const double si = std::sin(r);
        return 4.0 * kPi * si * si;
    };
    profile.validate();
    return profile;
}

double verify_profile_equality(const ProfileSamples& profile,
                               const comparison::ComparisonCurve& curve) {
    if (std::fabs(curve.z - 4.0 * kPi) > 1e-9)
        throw std::invalid_argument("verify_profile_equality: curve must be built for z = 4*pi");
    profile.validate();
    const double pi2 = kPi * kPi;
    double worst = 0.0;
    for (std::size_t i = 0; i < profile.s.size(); ++i) {
        const double arg = profile.s[i] - pi2;
        if (!curve.contains(arg))
            throw std::domain_error("verify_profile_equality: profile sample outside curve domain");
        const double a = profile.A[i];
        const double gap = std::fabs(a * std::sqrt(a) - curve.value(arg));
        worst = std::max(worst, gap);
    }
    return worst;
}

ViscosityPoint viscosity_point(const ProfileSamples& profile, const comparison::EpsilonParam& eps,
                               double s0, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("viscosity_point: h must be positive");
    auto u_at = [&profile](double s) { return profile.area(s); };

    const double u = u_at(s0);
    const double up_h = (u_at(s0 + h) - u_at(s0 - h)) / (2.0 * h);
    const double up_h2 = (u_at(s0 + 0.5 * h) - u_at(s0 - 0.5 * h)) / h;
    const double up = (4.0 * up_h2 - up_h) / 3.0;

    const double d2_h = (u_at(s0 + h) - 2.0 * u + u_at(s0 - h)) / (h * h);
    const double d2_h2 = (u_at(s0 + 0.5 * h) - 2.0 * u + u_at(s0 - 0.5 * h)) / (0.25 * h * h);
    const double upp = (4.0 * d2_h2 - d2_h) / 3.0;

    ViscosityPoint pt;
    pt.s = s0;
    pt.u = u;
    pt.up = up;
    pt.upp = upp;
    pt.bound1 = 4.0 * kPi / (u * u) - 3.0 * up * up / (4.0 * u) - 3.0 / u;
    pt.bound2 = -up * up / (2.0 * u) - 2.0 * eps.value / u;
    pt.slack = std::min(pt.bound1, pt.bound2) - upp;
    return pt;
}

ViscosityReport viscosity_inequality_check(const ProfileSamples& profile,
                                           const comparison::EpsilonParam& eps, double h) {
    profile.validate();
    const bool exact = static_cast<bool>(profile.area_eval);
    const double lo = exact ? 1e-9 : profile.s_min();
    const double hi = exact ? 2.0 * kPi * kPi - 1e-9 : profile.s_max();

    ViscosityReport report;
    report.min_slack = std::numeric_limits<double>::infinity();
    for (double s0 : profile.s) {
        if (!(s0 - h > lo) || !(s0 + h < hi)) continue;
        const ViscosityPoint pt = viscosity_point(profile, eps, s0, h);
        ++report.samples_used;
        if (pt.slack < report.min_slack) {
            report.min_slack = pt.slack;
            report.argmin_s = s0;
        }
        const double gap = std::fabs(pt.upp - pt.bound1);
        if (gap > report.max_first_branch_gap) {
            report.max_first_branch_gap = gap;
            report.argmax_s = s0;
        }
    }
    if (report.samples_used < 3)
        throw std::domain_error("viscosity_inequality_check: insufficient usable samples");
    return report;
}

}  // namespace rigidity::profiles
