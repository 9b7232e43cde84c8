#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace rigidity::num {

// Piecewise cubic Hermite interpolant on strictly increasing knots. Slopes
// are supplied by the caller (exact derivatives where available) and can be
// clamped to the Fritsch-Carlson monotone region.
class HermiteSpline {
public:
    HermiteSpline() = default;

    HermiteSpline(std::vector<double> x, std::vector<double> y, std::vector<double> d,
                  bool enforce_monotone = false)
        : x_(std::move(x)), y_(std::move(y)), d_(std::move(d)) {
        if (x_.size() < 2 || x_.size() != y_.size() || x_.size() != d_.size())
            throw std::invalid_argument("HermiteSpline: inconsistent knot data");
        for (std::size_t i = 1; i < x_.size(); ++i)
            if (!(x_[i] > x_[i - 1]))
                throw std::invalid_argument("HermiteSpline: knots must be strictly increasing");
        if (enforce_monotone) clamp_monotone();
    }

    // PCHIP-style slope estimation for data without known derivatives.
    static HermiteSpline from_data_monotone(std::vector<double> x, std::vector<double> y) {
        const std::size_t n = x.size();
        if (n < 2) throw std::invalid_argument("HermiteSpline: need at least two points");
        std::vector<double> d(n, 0.0);
        if (n == 2) {
            d[0] = d[1] = (y[1] - y[0]) / (x[1] - x[0]);
        } else {
            std::vector<double> h(n - 1), delta(n - 1);
            for (std::size_t i = 0; i + 1 < n; ++i) {
                h[i] = x[i + 1] - x[i];
                delta[i] = (y[i + 1] - y[i]) / h[i];
            }
            for (std::size_t i = 1; i + 1 < n; ++i) {
                if (delta[i - 1] * delta[i] <= 0.0) {
                    d[i] = 0.0;
                } else {
                    const double w1 = 2.0 * h[i] + h[i - 1];
                    const double w2 = h[i] + 2.0 * h[i - 1];
                    d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
                }
            }
            d[0] = edge_slope(h[0], h[1], delta[0], delta[1]);
            d[n - 1] = edge_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
        }
        return HermiteSpline(std::move(x), std::move(y), std::move(d), true);
    }

    double x_front() const { return x_.front(); }
    double x_back() const { return x_.back(); }

    double value(double x) const {
        const std::size_t i = cell(x);
        const double h = x_[i + 1] - x_[i];
        const double th = (x - x_[i]) / h;
        const double th2 = th * th, th3 = th2 * th;
        const double h00 = 2 * th3 - 3 * th2 + 1;
        const double h10 = th3 - 2 * th2 + th;
        const double h01 = -2 * th3 + 3 * th2;
        const double h11 = th3 - th2;
        return h00 * y_[i] + h * h10 * d_[i] + h01 * y_[i + 1] + h * h11 * d_[i + 1];
    }

    double derivative(double x) const {
        const std::size_t i = cell(x);
        const double h = x_[i + 1] - x_[i];
        const double th = (x - x_[i]) / h;
        const double th2 = th * th;
        const double h00 = (6 * th2 - 6 * th) / h;
        const double h10 = 3 * th2 - 4 * th + 1;
        const double h01 = (-6 * th2 + 6 * th) / h;
        const double h11 = 3 * th2 - 2 * th;
        return h00 * y_[i] + h10 * d_[i] + h01 * y_[i + 1] + h11 * d_[i + 1];
    }

private:
    static double edge_slope(double h0, double h1, double del0, double del1) {
        double d = ((2.0 * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
        if (d * del0 <= 0.0)
            d = 0.0;
        else if (del0 * del1 < 0.0 && std::fabs(d) > 3.0 * std::fabs(del0))
            d = 3.0 * del0;
        return d;
    }

    void clamp_monotone() {
        for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
            const double delta = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
            if (delta == 0.0) {
                d_[i] = 0.0;
                d_[i + 1] = 0.0;
                continue;
            }
            double alpha = d_[i] / delta;
            double beta = d_[i + 1] / delta;
            if (alpha < 0.0) {
                d_[i] = 0.0;
                alpha = 0.0;
            }
            if (beta < 0.0) {
                d_[i + 1] = 0.0;
                beta = 0.0;
            }
            const double s = alpha * alpha + beta * beta;
            if (s > 9.0) {
                const double tau = 3.0 / std::sqrt(s);
                d_[i] = tau * alpha * delta;
                d_[i + 1] = tau * beta * delta;
            }
        }
    }

    std::size_t cell(double x) const {
        const double slack = 1e-12 * (1.0 + std::fabs(x_.back()));
        if (x < x_.front() - slack || x > x_.back() + slack)
            throw std::domain_error("HermiteSpline: evaluation outside knot range");
        const auto it = std::upper_bound(x_.begin(), x_.end(), x);
        std::size_t i = static_cast<std::size_t>(it - x_.begin());
        if (i == 0) return 0;
        if (i >= x_.size()) return x_.size() - 2;
        return i - 1;
    }

    std::vector<double> x_, y_, d_;
};

}  // namespace rigidity::num
