#include "rigidity/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rigidity::num {

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                 a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;

// y1 - yhat1 (5th minus embedded 4th order solution).
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

// Dense output coefficients (Hairer, Norsett, Wanner).
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

}  // namespace

void OdeSolution::DenseSegment::eval(double theta, State& out) const {
    const std::size_t n = r1.size();
    out.resize(n);
    const double th1 = 1.0 - theta;
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = r1[i] + theta * (r2[i] + th1 * (r3[i] + theta * (r4[i] + th1 * r5[i])));
    }
}

std::size_t OdeSolution::locate(double t) const {
    if (segments_.empty()) throw OdeError("dense evaluation on empty solution");
    const double t_lo = samples_.front().t;
    const double t_hi = samples_.back().t;
    const double slack = 1e-12 * (1.0 + std::fabs(t_hi));
    if (t < t_lo - slack || t > t_hi + slack)
        throw OdeError("dense evaluation outside sampled range");
    // First segment whose end covers t.
    std::size_t lo = 0, hi = segments_.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (segments_[mid].t0 + segments_[mid].h < t)
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo;
}

State OdeSolution::eval(double t) const {
    const DenseSegment& seg = segments_[locate(t)];
    const double theta = std::clamp((t - seg.t0) / seg.h, 0.0, 1.0);
    State out;
    seg.eval(theta, out);
    return out;
}

double OdeSolution::eval_component(double t, int i) const {
    const DenseSegment& seg = segments_[locate(t)];
    const double theta = std::clamp((t - seg.t0) / seg.h, 0.0, 1.0);
    const double th1 = 1.0 - theta;
    return seg.r1[i] + theta * (seg.r2[i] + th1 * (seg.r3[i] + theta * (seg.r4[i] + th1 * seg.r5[i])));
}

OdeSolution integrate_ode(const Rhs& rhs, double t0, const State& y0,
                          const std::vector<EventFn>& events, double t_horizon,
                          const OdeSpec& spec) {
    if (!(t_horizon > t0)) throw std::invalid_argument("integrate_ode: requires t_horizon > t0");
    const std::size_t n = y0.size();
    if (n == 0) throw std::invalid_argument("integrate_ode: empty state");

    OdeSolution sol;
    State y = y0;
    State k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n);
    rhs(t0, y, k1);
    sol.samples_.push_back({t0, y, k1});

    // Event bookkeeping: sign at the last accepted point; 0 means unarmed.
    std::vector<int> ev_sign(events.size(), 0);
    std::vector<double> ev_val(events.size(), 0.0);
    for (std::size_t i = 0; i < events.size(); ++i) {
        ev_val[i] = events[i](t0, y);
        ev_sign[i] = (ev_val[i] > 0.0) ? 1 : (ev_val[i] < 0.0 ? -1 : 0);
    }

    double t = t0;
    double h;
    if (spec.initial_step > 0.0) {
        h = spec.initial_step;
    } else {
        double ynorm = 0.0, fnorm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            ynorm = std::max(ynorm, std::fabs(y[i]));
            fnorm = std::max(fnorm, std::fabs(k1[i]));
        }
        h = (fnorm > 0.0) ? 0.01 * std::max(ynorm, spec.abs_tol) / fnorm
                          : 1e-6 * (t_horizon - t0);
        h = std::min(h, 0.1 * (t_horizon - t0));
    }
    if (spec.max_step > 0.0) h = std::min(h, spec.max_step);

    const double epmach = std::numeric_limits<double>::epsilon();
    long steps = 0;

    while (t < t_horizon) {
        if (++steps > spec.max_steps) throw OdeError("integrate_ode: step budget exhausted");
        bool clipped = false;
        if (t + h >= t_horizon) {
            h = t_horizon - t;
            clipped = true;
        }
        const double hmin = 16.0 * epmach * std::max(1.0, std::fabs(t));
        if (h < hmin && !clipped)
            throw SingularityAbort("integrate_ode: step size underflow at t = " +
                                       std::to_string(t),
                                   t, y);

        for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
        rhs(t + c2 * h, ytmp, k2);
        for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        rhs(t + c3 * h, ytmp, k3);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(t + c4 * h, ytmp, k4);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(t + c5 * h, ytmp, k5);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                  a65 * k5[i]);
        rhs(t + h, ytmp, k6);
        for (std::size_t i = 0; i < n; ++i)
            ynew[i] = y[i] +
                      h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
        rhs(t + h, ynew, k7);

        double err = 0.0;
        bool finite = true;
        for (std::size_t i = 0; i < n; ++i) {
            const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                   e6 * k6[i] + e7 * k7[i]);
            const double sc =
                spec.abs_tol + spec.rel_tol * std::max(std::fabs(y[i]), std::fabs(ynew[i]));
            err += (ei / sc) * (ei / sc);
            if (!std::isfinite(ynew[i])) finite = false;
        }
        err = std::sqrt(err / static_cast<double>(n));

        if (!finite || err > 1.0) {
            const double shrink = finite ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.2;
            h *= shrink;
            if (h < hmin)
                throw SingularityAbort("integrate_ode: step size underflow at t = " +
                                           std::to_string(t),
                                       t, y);
            continue;
        }

        // Accepted: record dense segment.
        OdeSolution::DenseSegment seg;
        seg.t0 = t;
        seg.h = h;
        seg.r1.resize(n);
        seg.r2.resize(n);
        seg.r3.resize(n);
        seg.r4.resize(n);
        seg.r5.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double ydiff = ynew[i] - y[i];
            const double bspl = h * k1[i] - ydiff;
            seg.r1[i] = y[i];
            seg.r2[i] = ydiff;
            seg.r3[i] = bspl;
            seg.r4[i] = ydiff - h * k7[i] - bspl;
            seg.r5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] +
                             d7 * k7[i]);
        }
        sol.segments_.push_back(std::move(seg));

        const double t_new = t + h;

        // Event detection on (t, t_new].
        int hit_id = -1;
        double hit_t = 0.0;
        State yev(n);
        for (std::size_t i = 0; i < events.size(); ++i) {
            const double g_new = events[i](t_new, ynew);
            const int s_new = (g_new > 0.0) ? 1 : (g_new < 0.0 ? -1 : 0);
            double t_star = -1.0;
            if (ev_sign[i] != 0 && s_new != 0 && s_new != ev_sign[i]) {
                // Bisect the dense output for the crossing.
                const OdeSolution::DenseSegment& ds = sol.segments_.back();
                double lo = t, hi = t_new;
                double g_lo = ev_val[i];
                while (hi - lo > spec.event_tol) {
                    const double mid = 0.5 * (lo + hi);
                    ds.eval(std::clamp((mid - ds.t0) / ds.h, 0.0, 1.0), yev);
                    const double gm = events[i](mid, yev);
                    if ((gm > 0.0) == (g_lo > 0.0)) {
                        lo = mid;
                        g_lo = gm;
                    } else {
                        hi = mid;
                    }
                }
                t_star = 0.5 * (lo + hi);
            } else if (ev_sign[i] != 0 && s_new == 0) {
                t_star = t_new;
            }
            if (t_star >= 0.0) {
                if (hit_id < 0 || t_star < hit_t - spec.event_tol) {
                    hit_id = static_cast<int>(i);
                    hit_t = t_star;
                }
                // Ties within event_tol: lowest id wins, which is the first
                // one encountered in index order.
            }
            ev_val[i] = g_new;
            if (s_new != 0) ev_sign[i] = s_new;
        }

        if (hit_id >= 0) {
            const OdeSolution::DenseSegment& ds = sol.segments_.back();
            ds.eval(std::clamp((hit_t - ds.t0) / ds.h, 0.0, 1.0), yev);
            State ypev(n);
            rhs(hit_t, yev, ypev);
            // The last segment keeps its original h: theta stays consistent
            // and the sampled range already ends at hit_t.
            sol.samples_.push_back({hit_t, yev, ypev});
            sol.terminal_event_ = TerminalEvent{hit_id, hit_t};
            return sol;
        }

        t = t_new;
        y = ynew;
        std::swap(k1, k7);  // FSAL
        sol.samples_.push_back({t, y, k1});

        double grow = 0.9 * std::pow(std::max(err, 1e-50), -0.2);
        grow = std::clamp(grow, 0.2, 10.0);
        h *= grow;
        if (spec.max_step > 0.0) h = std::min(h, spec.max_step);
    }

    return sol;
}

}  // namespace rigidity::num
