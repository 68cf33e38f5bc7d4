#ifndef POVKIT_INFERENCE_HPP
#define POVKIT_INFERENCE_HPP

#include "povkit/sample.hpp"

#include <cstdint>
#include <span>
#include <string>

// Confidence intervals from a raw sample: a plug-in interval that evaluates
// the limit variance with empirical ingredients (q-hat, order-statistic
// quantiles, a finite-difference quantile density), and a percentile
// bootstrap. The plug-in integrals run on a fixed 512-point midpoint grid;
// adaptive refinement is pointless on step functions.

namespace povkit::infer {

struct ConfidenceInterval {
    double estimate = 0.0;
    double se = 0.0;
    double level = 0.95;
    double lo = 0.0;
    double hi = 0.0;
    std::string method;
    std::size_t n = 0;
    std::string warning; // empty when none
};

/// Order-statistic quantile Y_{ceil(n p)} for p in (0,1].
double empirical_quantile(const IncomeSample& sample, double p);

/// Central-difference estimate of the quantile density a(s). The bandwidth
/// defaults to n^(-1/5) and is clamped so both query points stay inside
/// [1/n, 1-1/n]. Requires n >= 10.
double empirical_quantile_derivative(const IncomeSample& sample, double s,
                                     double bandwidth = 0.0);

/// Sum_{i,j} psi1_i psi2_j (min(u_i,u_j) - u_i u_j) for ascending u,
/// computed in O(N) via prefix sums.
double bridge_quadratic(std::span<const double> psi1, std::span<const double> psi2,
                        std::span<const double> u);

/// Plug-in estimate of the limit variance of sqrt(n)(J_n - D) (transformed
/// scale for CHU). Requires at least two poor observations.
double plugin_variance(const IndexId& index, const IncomeSample& sample,
                       const PovertyContext& ctx);

/// estimate +- z(level) * sqrt(plugin_variance/n). Warns when Q < 30.
ConfidenceInterval plugin_ci(const IndexId& index, const IncomeSample& sample,
                             const PovertyContext& ctx, double level = 0.95);

/// Percentile interval over B resamples with replacement; se is the
/// resample standard deviation. Deterministic given seed.
ConfidenceInterval bootstrap_ci(const IndexId& index, const IncomeSample& sample,
                                const PovertyContext& ctx, double level,
                                std::size_t resamples, std::uint64_t seed);

} // namespace povkit::infer

#endif
