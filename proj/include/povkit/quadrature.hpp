#ifndef POVKIT_QUADRATURE_HPP
#define POVKIT_QUADRATURE_HPP

#include <cstddef>
#include <functional>

// Adaptive quadrature on open intervals. The rule is Gauss-Kronrod 7/15,
// whose nodes are strictly interior, so integrands may be singular at the
// interval endpoints as long as they are integrable there. Refinement is
// global: the panel with the largest error estimate is bisected until the
// total error meets the tolerance or the interval budget is exhausted, in
// which case a QuadratureError carries the best estimate reached.

namespace povkit::quad {

struct Options {
    double rel_tol = 1e-9;
    double abs_tol = 1e-15;
    std::size_t max_intervals = 20000;
};

/// Integral of f over (lo, hi). Never evaluates f at lo or hi.
double integrate_1d(const std::function<double(double)>& f, double lo, double hi,
                    Options opts = {});

/// Integral of f over the square (lo, hi)^2 by iterated adaptive quadrature.
/// The inner integral is split at v = u, so kernels with a kink along the
/// diagonal (such as the Brownian-bridge covariance min(u,v) - uv) are
/// integrated over smooth pieces only. Default tolerance 1e-7 relative.
double integrate_2d(const std::function<double(double, double)>& f, double lo,
                    double hi, Options opts = {.rel_tol = 1e-7});

} // namespace povkit::quad

#endif
