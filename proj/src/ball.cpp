#include "rigidity/ball.hpp"

#include <numbers>
#include <stdexcept>

namespace rigidity::ball {

namespace {
constexpr double kPi = std::numbers::pi;
}

PointCurvature::PointCurvature(Rational r, Rational ric_sq, Rational lap)
    : R(r), ric2(ric_sq), lapR(lap) {
    // Cauchy-Schwarz on the Ricci tensor in dimension 3.
    if (ric2 * Rational(3) < R * R)
        throw std::invalid_argument("PointCurvature: |Ric|^2 < R^2/3 is impossible in dim 3");
}

ExpansionCoefficients coefficients_from_curvature(const PointCurvature& pc) {
    ExpansionCoefficients coeff;
    coeff.c1 = pc.R / Rational(30);
    coeff.c2 = (pc.lapR + Rational(2) * pc.ric2 - Rational(4) * pc.R * pc.R) / Rational(6300);
    return coeff;
}

BallValues ball_expansions(const ExpansionCoefficients& coeff, double r) {
    if (!(r >= 0.0)) throw std::invalid_argument("ball_expansions: radius must be >= 0");
    const double c1 = coeff.c1.to_double();
    const double c2 = coeff.c2.to_double();
    const double r2 = r * r;
    const double r4 = r2 * r2;
    BallValues v;
    v.volume = (4.0 * kPi / 3.0) * r * r2 * (1.0 - c1 * r2 - c2 * r4);
    v.area = 4.0 * kPi * r2 * (1.0 - (5.0 / 3.0) * c1 * r2 - (7.0 / 3.0) * c2 * r4);
    return v;
}

UpperBoundCoefficients f_upper_bound_coefficients(const ExpansionCoefficients& coeff) {
    UpperBoundCoefficients ub;
    ub.b1 = -(Rational(3, 2) * coeff.c1);
    ub.b2 = -(Rational(35, 24) * coeff.c1 * coeff.c1 + Rational(5, 2) * coeff.c2);
    return ub;
}

RigidityVerdict rigidity_chain(const PointCurvature& pc) {
    if (pc.R < Rational(6))
        throw std::invalid_argument("rigidity_chain: hypothesis R >= 6 not satisfied");

    const ExpansionCoefficients coeff = coefficients_from_curvature(pc);
    const Rational lhs1 = Rational(3, 10) - Rational(3, 2) * coeff.c1;
    const Rational lhs2 =
        Rational(3, 280) - Rational(35, 24) * coeff.c1 * coeff.c1 - Rational(5, 2) * coeff.c2;

    RigidityVerdict verdict;
    verdict.constant_scalar_assumed = (pc.lapR == Rational(0));
    verdict.inequalities.push_back({"3/10 - (3/2) c1 >= 0", lhs1, lhs1 >= Rational(0)});
    verdict.inequalities.push_back(
        {"3/280 - (35/24) c1^2 - (5/2) c2 >= 0", lhs2, lhs2 >= Rational(0)});
    verdict.consistent = verdict.inequalities[0].satisfied && verdict.inequalities[1].satisfied;

    if (verdict.consistent) {
        // lhs1 >= 0 means R <= 6; with the hypothesis R >= 6 this pins R.
        verdict.forced.push_back("R = 6");
        if (verdict.constant_scalar_assumed) {
            // With R = 6 and lap R = 0, lhs2 >= 0 forces |Ric|^2 <= 12, and
            // |Ric|^2 >= R^2/3 = 12 holds by construction.
            verdict.forced.push_back("|Ric|^2 = 12");
            verdict.forced.push_back("Ric = 2g pointwise");
        }
    }
    return verdict;
}

nlohmann::ordered_json RigidityVerdict::to_json() const {
    nlohmann::ordered_json j;
    j["consistent"] = consistent;
    j["forced"] = forced;
    nlohmann::ordered_json ineqs = nlohmann::ordered_json::array();
    for (const auto& ineq : inequalities) {
        nlohmann::ordered_json item;
        item["name"] = ineq.name;
        item["lhs_numerator"] = std::to_string(ineq.lhs.num());
        item["lhs_denominator"] = std::to_string(ineq.lhs.den());
        item["satisfied"] = ineq.satisfied;
        ineqs.push_back(item);
    }
    j["inequalities"] = ineqs;
    j["constant_scalar_assumed"] = constant_scalar_assumed;
    return j;
}

}  // namespace rigidity::ball
