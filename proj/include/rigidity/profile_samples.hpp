#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "rigidity/interp.hpp"

namespace rigidity::profiles {

// Sampled isoperimetric profile s -> A(s) of a model space. Evaluation between
// samples uses the exact evaluator when one is attached (parametric models),
// otherwise a monotonicity-preserving interpolant built from the samples.
struct ProfileSamples {
    std::vector<double> s;
    std::vector<double> A;
    std::string label;
    std::function<double(double)> area_eval;

    double s_min() const { return s.front(); }
    double s_max() const { return s.back(); }

    double area(double at) const {
        if (area_eval) return area_eval(at);
        if (!interp_)
            interp_ = std::make_shared<num::HermiteSpline>(
                num::HermiteSpline::from_data_monotone(s, A));
        return interp_->value(at);
    }

    // F(s) = A(s)^(3/2)
    double big_f(double at) const {
        const double a = area(at);
        return a * std::sqrt(a);
    }

    void validate() const {
        if (s.size() < 2 || s.size() != A.size())
            throw std::invalid_argument("ProfileSamples: need matching s/A samples");
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (i > 0 && !(s[i] > s[i - 1]))
                throw std::invalid_argument("ProfileSamples: s must be strictly increasing");
            if (!(A[i] > 0.0)) throw std::invalid_argument("ProfileSamples: A must be positive");
        }
    }

private:
    mutable std::shared_ptr<num::HermiteSpline> interp_;
};

}  // namespace rigidity::profiles
