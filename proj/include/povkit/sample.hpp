#ifndef POVKIT_SAMPLE_HPP
#define POVKIT_SAMPLE_HPP

#include <cstddef>
#include <string>
#include <vector>

// Exact finite-sample poverty indices. An individual is poor when its income
// is strictly below the line, so every poverty gap is positive; ties at the
// line are not poor. All operations are pure and thread-safe.

namespace povkit {

/// Sorted income sample with the lower endpoint of the income support.
struct IncomeSample {
    std::vector<double> incomes; // ascending
    double y0 = 0.0;             // support lower endpoint, >= 0

    std::size_t size() const { return incomes.size(); }
};

/// Validates (finite, incomes >= y0 >= 0, nonempty), sorts, and builds a sample.
IncomeSample make_sample(std::vector<double> incomes, double y0 = 0.0);

/// Poverty line. Must satisfy line > sample.y0 wherever both appear.
struct PovertyContext {
    double line;
};

/// Normalized shortfalls (line - Y_j)/line of the poor, ordered with the
/// incomes, hence non-increasing: gaps[0] >= gaps[1] >= ... > 0.
struct GapVector {
    std::vector<double> gaps;

    std::size_t count() const { return gaps.size(); }
};

enum class IndexFamily {
    headcount,
    fgt,         // alpha >= 0
    watts,
    chakravarty, // 0 < alpha < 1
    chu,         // 0 < alpha <= 1
    ray,         // alpha > 0
    sen,
    kakwani,     // k >= 0, real
    shorrocks,
    thon,
    takayama,
};

/// An index family with its parameter (alpha or k), validated on construction.
struct IndexId {
    IndexFamily family;
    double alpha = 0.0; // fgt/chakravarty/chu/ray exponent
    double k = 0.0;     // kakwani rank-weight exponent

    static IndexId headcount();
    static IndexId fgt(double alpha);
    static IndexId watts();
    static IndexId chakravarty(double alpha);
    static IndexId chu(double alpha);
    static IndexId ray(double alpha);
    static IndexId sen();
    static IndexId kakwani(double k);
    static IndexId shorrocks();
    static IndexId thon();
    static IndexId takayama();

    /// Family plus parameters, e.g. "fgt(2)" or "kakwani(1.5)".
    std::string name() const;
};

/// Builds an IndexId from its CLI name ("fgt", "sen", ...) and the relevant
/// parameter flags. Throws InvalidArgument on unknown names or bad parameters.
IndexId index_from_name(const std::string& name, double alpha, double k);

/// Number of strictly poor individuals; 0 <= Q <= n.
std::size_t count_poor(const IncomeSample& sample, const PovertyContext& ctx);

GapVector poverty_gaps(const IncomeSample& sample, const PovertyContext& ctx);

/// Mean income shortfall of the poor in currency units (the g of the Ray
/// index). Throws DomainError when nobody is poor.
double mean_poverty_gap(const IncomeSample& sample, const PovertyContext& ctx);

/// Mean of min(Y_i, line) over the whole sample.
double censored_mean(const IncomeSample& sample, const PovertyContext& ctx);

/// Closed-form value of any index on the sample. Returns 0 for every
/// gap-based index when Q = 0; Takayama follows its own formula.
double compute_closed_form(const IndexId& index, const IncomeSample& sample,
                           const PovertyContext& ctx);

/// Takayama index. Throws DomainError when the censored mean is zero.
double takayama_index(const IncomeSample& sample, const PovertyContext& ctx);

} // namespace povkit

#endif
