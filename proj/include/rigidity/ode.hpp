#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rigidity::num {

using State = std::vector<double>;
using Rhs = std::function<void(double t, const State& y, State& dydt)>;
using EventFn = std::function<double(double t, const State& y)>;

struct OdeSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double event_tol = 1e-12;    // localization tolerance on t
    double initial_step = 0.0;   // 0 = choose automatically
    double max_step = 0.0;       // 0 = unbounded
    long max_steps = 2000000;
};

class OdeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Step size underflowed, typically when approaching a singularity of the
// right-hand side. Carries the last valid state.
class SingularityAbort : public OdeError {
public:
    SingularityAbort(const std::string& msg, double t_last, State y_last)
        : OdeError(msg), t_last_(t_last), y_last_(std::move(y_last)) {}
    double t_last() const { return t_last_; }
    const State& y_last() const { return y_last_; }

private:
    double t_last_;
    State y_last_;
};

struct TerminalEvent {
    int event_id = -1;
    double t = 0.0;
};

// Solution of an initial value problem on [t0, t_end], with per-step dense
// output (4th-order continuous extension of the Dormand-Prince pair).
class OdeSolution {
public:
    struct Sample {
        double t;
        State y;
        State yp;
    };

    const std::vector<Sample>& samples() const { return samples_; }
    const std::optional<TerminalEvent>& terminal_event() const { return terminal_event_; }
    double t_front() const { return samples_.front().t; }
    double t_back() const { return samples_.back().t; }

    // Dense evaluation of the full state / one component at t in [t_front, t_back].
    State eval(double t) const;
    double eval_component(double t, int i) const;

private:
    friend OdeSolution integrate_ode(const Rhs&, double, const State&,
                                     const std::vector<EventFn>&, double, const OdeSpec&);
    struct DenseSegment {
        double t0, h;
        // Contiguous per-dimension interpolation coefficients r1..r5.
        std::vector<double> r1, r2, r3, r4, r5;
        void eval(double theta, State& out) const;
    };
    std::size_t locate(double t) const;

    std::vector<Sample> samples_;
    std::vector<DenseSegment> segments_;
    std::optional<TerminalEvent> terminal_event_;
};

// Integrates y' = rhs(t, y) from (t0, y0) until the first sign change of any
// event function (localized to spec.event_tol; on simultaneous triggers the
// lowest event id wins) or until t_horizon. Events that start at zero are
// armed once they move away from zero.
OdeSolution integrate_ode(const Rhs& rhs, double t0, const State& y0,
                          const std::vector<EventFn>& events, double t_horizon,
                          const OdeSpec& spec = {});

}  // namespace rigidity::num
