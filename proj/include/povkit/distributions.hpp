#ifndef POVKIT_DISTRIBUTIONS_HPP
#define POVKIT_DISTRIBUTIONS_HPP

#include "povkit/sample.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

// Parametric income models. Each model exposes the CDF G, the quantile
// function G^{-1}, the density, and the quantile density a(s) = (G^{-1})'(s)
// = 1/density(G^{-1}(s)) that drives the limit-law integrals. Models are
// immutable and thread-safe.

namespace povkit::dist {

class Model {
public:
    virtual ~Model() = default;

    virtual std::string name() const = 0;
    /// Lower endpoint y0 of the income support.
    virtual double lower_endpoint() const = 0;
    virtual double cdf(double y) const = 0;
    virtual double quantile(double s) const = 0;
    virtual double density(double y) const = 0;
    /// a(s), the derivative of the quantile function; positive on (0,1).
    virtual double quantile_density(double s) const = 0;
};

using ModelPtr = std::shared_ptr<const Model>;

ModelPtr uniform(double a, double b);        // b > a >= 0
ModelPtr exponential(double lambda);         // lambda > 0
ModelPtr pareto(double xm, double beta);     // xm > 0, beta > 0
ModelPtr lognormal(double m, double sigma);  // sigma > 0

/// Parses "name:p1,p2" specs, e.g. "uniform:0,1", "exponential:1", "pareto:1,2".
ModelPtr parse_model(std::string_view spec);

/// n incomes drawn by inverse CDF from a deterministic uniform stream.
/// Identical (model, n, seed) produce identical samples on every platform.
IncomeSample draw_sample(const Model& model, std::size_t n, std::uint64_t seed);

/// Fitted slope of log a(s) against log s over s in [1e-6, 1e-3]. Throws
/// DomainError("C3 violated") when the slope does not exceed -3/2 + 1e-3,
/// in which case the model is unusable for the limit laws.
double probe_tail_exponent(const Model& model);

} // namespace povkit::dist

#endif
