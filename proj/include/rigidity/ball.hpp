#pragma once

#include <string>
#include <vector>

#include "rigidity/rational.hpp"

#include "json.hpp"

namespace rigidity::ball {

// Pointwise curvature data of a 3-manifold: scalar curvature R, squared
// Ricci norm |Ric|^2, and the Laplacian of R. Kept as exact rationals so the
// coefficient inequalities downstream are bit-exact.
struct PointCurvature {
    Rational R;
    Rational ric2;
    Rational lapR;

    PointCurvature(Rational r, Rational ric_sq, Rational lap);
};

struct ExpansionCoefficients {
    Rational c1;  // R / 30
    Rational c2;  // (lap R + 2 |Ric|^2 - 4 R^2) / 6300
};

ExpansionCoefficients coefficients_from_curvature(const PointCurvature& pc);

struct BallValues {
    double volume = 0.0;
    double area = 0.0;
};

// Truncated geodesic-ball expansions:
//   vol  = (4 pi / 3) r^3 (1 - c1 r^2 - c2 r^4)
//   area = 4 pi r^2 (1 - (5/3) c1 r^2 - (7/3) c2 r^4)
BallValues ball_expansions(const ExpansionCoefficients& coeff, double r);

struct UpperBoundCoefficients {
    Rational b1;  // -(3/2) c1
    Rational b2;  // -(35/24 c1^2 + 5/2 c2)
};

UpperBoundCoefficients f_upper_bound_coefficients(const ExpansionCoefficients& coeff);

struct RigidityVerdict {
    struct Inequality {
        std::string name;
        Rational lhs;
        bool satisfied = false;
    };
    bool consistent = false;
    std::vector<std::string> forced;
    std::vector<Inequality> inequalities;
    bool constant_scalar_assumed = false;  // lap R = 0 supplied by the caller

    nlohmann::ordered_json to_json() const;
};

// Evaluates the two coefficient inequalities
//   3/10 - (3/2) c1 >= 0   and   3/280 - (35/24) c1^2 - (5/2) c2 >= 0
// under the hypothesis R >= 6. Consistency forces R = 6; with lap R = 0 it
// then forces |Ric|^2 = 12, reported as "Ric = 2g pointwise".
RigidityVerdict rigidity_chain(const PointCurvature& pc);

}  // namespace rigidity::ball
