#pragma once

#include "rigidity/comparison.hpp"
#include "rigidity/profile_samples.hpp"

namespace rigidity::profiles {

// Exact isoperimetric profile of the round 3-sphere, parameterized by
// geodesic radius r in (0, pi): s = 2 pi r - pi sin(2r), A = 4 pi sin^2(r).
// Evaluation between samples inverts s(r) to machine precision.
ProfileSamples round_sphere_profile(int grid);

// Max over profile samples of |F(s) - f(s - pi^2)| against a curve built for
// z = 4*pi.
double verify_profile_equality(const ProfileSamples& profile,
                               const comparison::ComparisonCurve& curve);

struct ViscosityPoint {
    double s = 0.0;
    double u = 0.0;
    double up = 0.0;
    double upp = 0.0;
    double bound1 = 0.0;  // 4 pi / u^2 - 3 u'^2 / (4 u) - 3 / u
    double bound2 = 0.0;  // -u'^2 / (2 u) - 2 eps / u
    double slack = 0.0;   // min(bound1, bound2) - u''
};

// Centered finite differences with one Richardson refinement at a single
// abscissa of the profile.
ViscosityPoint viscosity_point(const ProfileSamples& profile, const comparison::EpsilonParam& eps,
                               double s0, double h = 1e-3);

struct ViscosityReport {
    double min_slack = 0.0;
    double argmin_s = 0.0;
    double max_first_branch_gap = 0.0;  // max |u'' - bound1| (saturation measure)
    double argmax_s = 0.0;
    int samples_used = 0;
};

// Evaluates the differential inequality at every profile sample whose
// finite-difference stencil fits inside the profile domain.
ViscosityReport viscosity_inequality_check(const ProfileSamples& profile,
                                           const comparison::EpsilonParam& eps, double h = 1e-3);

}  // namespace rigidity::profiles
