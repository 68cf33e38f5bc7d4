#ifndef POVKIT_GPI_HPP
#define POVKIT_GPI_HPP

#include "povkit/sample.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

// Generic evaluation of the weighted-deformed-gap index
//
//     delta( A/(n*B) * sum_{j=1..Q} w(mu1*n + mu2*Q - mu3*j + mu4) * d(gap_j) )
//
// from a closed catalogue of component functions. Every gap-based index of
// sample.hpp is an instance of this form; builtin_config() provides the
// catalogue entry that reproduces each closed form exactly.

namespace povkit::gpi {

/// Outer transform: identity or u -> u^(1/alpha).
enum class DeltaKind { identity, power_inverse };

/// Rank weight: constant 1 or u -> u^k.
enum class WeightKind { one, power };

/// Gap deformation: identity or u -> u^alpha.
enum class DeformKind { identity, power };

/// Normalizer A(Q, n, Z) catalogue. `ray` also reads the mean poverty gap g
/// from the sample, the one data-dependent normalizer in the family.
enum class NormalizerKind {
    poor_count, // Q
    ray,        // Q * (g/Z)^(1-alpha)
    chu,        // Q^alpha / n^(alpha-1)
    shorrocks,  // Q(2n-Q)/n
    thon,       // Q(n-Q+1)/(n+1)
};

/// Denominator B(Q, n) catalogue. B > 0 is required whenever Q >= 1.
enum class DenominatorKind {
    poor_count, // Q
    phi_k,      // sum_{j<=Q} j^k
    shorrocks,  // Q(2n-Q)
    thon,       // Q(n-Q+1)/2
};

struct GPIConfig {
    DeltaKind delta = DeltaKind::identity;
    double delta_alpha = 1.0; // delta(u) = u^(1/delta_alpha) when power_inverse
    WeightKind w = WeightKind::one;
    double w_k = 0.0;
    DeformKind d = DeformKind::power;
    double d_alpha = 1.0;
    NormalizerKind A = NormalizerKind::poor_count;
    DenominatorKind B = DenominatorKind::poor_count;
    std::array<double, 4> mu{0.0, 0.0, 0.0, 0.0};
};

/// Evaluates the configured index on a sample. Returns 0 when Q = 0. Throws
/// ConfigError when B <= 0 or a weight argument is negative.
double evaluate(const GPIConfig& config, const IncomeSample& sample,
                const PovertyContext& ctx);

/// Catalogue entry reproducing compute_closed_form for the given index.
/// Throws ConfigError for takayama ("not in GPI family") and for
/// watts/chakravarty (reachable only through an income transform).
GPIConfig builtin_config(const IndexId& index);

/// The step weight function L_n: value c(n,Q,j) = A*w(.)/B on ((j-1)/n, j/n]
/// for j <= Q, and 0 past Q/n.
struct WeightProfile {
    std::size_t n = 0;
    std::size_t q = 0;
    std::vector<double> steps; // steps[j-1], j = 1..Q

    double operator()(double s) const;
};

WeightProfile weight_profile(const GPIConfig& config, std::size_t n, std::size_t q);

/// Serialization. Schema: delta{kind,alpha}, w{kind,k}, d{kind,alpha},
/// A{kind}, B{kind}, mu[4].
nlohmann::ordered_json to_json(const GPIConfig& config);
GPIConfig config_from_json(const nlohmann::json& j);

} // namespace povkit::gpi

#endif
