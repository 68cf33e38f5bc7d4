#include "povkit/quadrature.hpp"

#include "povkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace povkit::quad {

namespace {

// Gauss-Kronrod 7/15 nodes and weights (positive half; QUADPACK dqk15).
constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double lo, hi;
    double value;
    double error;

    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel evaluate_panel(const std::function<double(double)>& f, double lo, double hi) {
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    const double fc = f(c);

    double fv1[7], fv2[7];
    double resk = wgk[7] * fc;
    double resg = wg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * xgk[i];
        fv1[i] = f(c - dx);
        fv2[i] = f(c + dx);
        const double fsum = fv1[i] + fv2[i];
        resk += wgk[i] * fsum;
        if (i % 2 == 1) resg += wg[i / 2] * fsum;
    }

    // QUADPACK error estimate: scale |K15 - G7| by the spread of f so that
    // near-singular panels are not declared converged too early.
    const double reskh = resk * 0.5;
    double resasc = wgk[7] * std::fabs(fc - reskh);
    for (int i = 0; i < 7; ++i)
        resasc += wgk[i] * (std::fabs(fv1[i] - reskh) + std::fabs(fv2[i] - reskh));
    resasc *= std::fabs(h);

    double err = std::fabs((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    return Panel{lo, hi, resk * h, err};
}

} // namespace

double integrate_1d(const std::function<double(double)>& f, double lo, double hi,
                    Options opts) {
    if (lo == hi) return 0.0;
    double sign = 1.0;
    if (lo > hi) {
        std::swap(lo, hi);
        sign = -1.0;
    }

    std::priority_queue<Panel> panels;
    Panel first = evaluate_panel(f, lo, hi);
    double total = first.value;
    double total_err = first.error;
    panels.push(first);

    const double min_width =
        8.0 * std::numeric_limits<double>::epsilon() * std::max({std::fabs(lo), std::fabs(hi), 1.0});
    while (true) {
        const double target = std::max(opts.abs_tol, opts.rel_tol * std::fabs(total));
        if (total_err <= target) return sign * total;
        if (panels.size() >= opts.max_intervals || panels.top().hi - panels.top().lo < min_width)
            throw QuadratureError("quadrature did not converge within budget", sign * total,
                                  total_err);

        const Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        const Panel left = evaluate_panel(f, worst.lo, mid);
        const Panel right = evaluate_panel(f, mid, worst.hi);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
    }
}

double integrate_2d(const std::function<double(double, double)>& f, double lo,
                    double hi, Options opts) {
    Options inner = opts;
    inner.rel_tol = opts.rel_tol * 0.1;
    inner.abs_tol = opts.abs_tol * 0.1;
    const auto outer_integrand = [&](double u) {
        const auto slice = [&](double v) { return f(u, v); };
        return integrate_1d(slice, lo, u, inner) + integrate_1d(slice, u, hi, inner);
    };
    return integrate_1d(outer_integrand, lo, hi, opts);
}

} // namespace povkit::quad
