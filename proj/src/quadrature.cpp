#include "rigidity/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace rigidity::num {

namespace {

// 15-point Kronrod abscissae (nonnegative half) and weights, with the
// embedded 7-point Gauss weights on the odd-indexed abscissae.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b;
    double value;
    double error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double hlgth = 0.5 * (b - a);

    const double fc = f(center);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::fabs(resk);
    double fv[15];
    fv[7] = fc;

    for (int j = 0; j < 7; ++j) {
        const double absc = hlgth * kXgk[j];
        const double f1 = f(center - absc);
        const double f2 = f(center + absc);
        fv[j] = f1;
        fv[14 - j] = f2;
        const double fsum = f1 + f2;
        if (j % 2 == 1) resg += kWg[j / 2] * fsum;
        resk += kWgk[j] * fsum;
        resabs += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
    }

    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::fabs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::fabs(fv[j] - reskh) + std::fabs(fv[14 - j] - reskh));

    const double value = resk * hlgth;
    resabs *= hlgth;
    resasc *= hlgth;

    double err = std::fabs((resk - resg) * hlgth);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double uflow = std::numeric_limits<double>::min();
    const double epmach = std::numeric_limits<double>::epsilon();
    if (resabs > uflow / (50.0 * epmach)) err = std::max(epmach * 50.0 * resabs, err);

    return Segment{a, b, value, err};
}

IntegralResult adapt(const std::function<double(double)>& f, double a, double b,
                     double rel_tol, double abs_tol, int max_subdivisions) {
    std::priority_queue<Segment> heap;
    Segment whole = gk15(f, a, b);
    double total_value = whole.value;
    double total_error = whole.error;
    heap.push(whole);

    int splits = 0;
    while (total_error > std::max(abs_tol, rel_tol * std::fabs(total_value))) {
        if (splits >= max_subdivisions || heap.empty()) {
            throw QuadratureError("quadrature failed to converge after " +
                                      std::to_string(splits) + " subdivisions (error bound " +
                                      std::to_string(total_error) + ")",
                                  total_value, total_error);
        }
        Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(worst.a < mid && mid < worst.b)) {
            // Interval exhausted at machine precision; keep its contribution.
            throw QuadratureError("quadrature interval underflow near x = " +
                                      std::to_string(worst.a),
                                  total_value, total_error);
        }
        Segment left = gk15(f, worst.a, mid);
        Segment right = gk15(f, mid, worst.b);
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++splits;
    }
    if (!std::isfinite(total_value))
        throw QuadratureError("non-finite integrand encountered", total_value, total_error);
    return IntegralResult{total_value, total_error, splits};
}

}  // namespace

IntegralResult integrate_ex(const std::function<double(double)>& f, double a, double b,
                            const QuadratureSpec& spec) {
    if (!(a < b)) throw std::invalid_argument("integrate: requires a < b");
    if (!(spec.rel_tol > 0.0) || !(spec.abs_tol > 0.0) || spec.max_subdivisions < 1)
        throw std::invalid_argument("integrate: invalid tolerance specification");

    switch (spec.singularity) {
        case Singularity::none:
            return adapt(f, a, b, spec.rel_tol, spec.abs_tol, spec.max_subdivisions);
        case Singularity::left: {
            // x = a + u^2, dx = 2u du
            auto g = [&f, a](double u) { return 2.0 * u * f(a + u * u); };
            return adapt(g, 0.0, std::sqrt(b - a), spec.rel_tol, spec.abs_tol,
                         spec.max_subdivisions);
        }
        case Singularity::right: {
            // x = b - u^2, dx = -2u du
            auto g = [&f, b](double u) { return 2.0 * u * f(b - u * u); };
            return adapt(g, 0.0, std::sqrt(b - a), spec.rel_tol, spec.abs_tol,
                         spec.max_subdivisions);
        }
        case Singularity::both: {
            const double mid = 0.5 * (a + b);
            QuadratureSpec half = spec;
            half.abs_tol = 0.5 * spec.abs_tol;
            half.rel_tol = 0.5 * spec.rel_tol;
            half.singularity = Singularity::left;
            IntegralResult lo = integrate_ex(f, a, mid, half);
            half.singularity = Singularity::right;
            IntegralResult hi = integrate_ex(f, mid, b, half);
            return IntegralResult{lo.value + hi.value, lo.error_bound + hi.error_bound,
                                  lo.subdivisions + hi.subdivisions};
        }
    }
    throw std::logic_error("integrate: unreachable");
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec) {
    return integrate_ex(f, a, b, spec).value;
}

}  // namespace rigidity::num
