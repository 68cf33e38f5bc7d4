#ifndef POVKIT_MONTECARLO_HPP
#define POVKIT_MONTECARLO_HPP

#include "povkit/distributions.hpp"
#include "povkit/sample.hpp"

#include <cstdint>
#include <optional>
#include <span>

// Simulation check of the limit laws: draw repeated samples, standardize
// the index with the theoretical center and variance, and compare the
// standardized draws against a standard normal. Replicates run on
// substreams of the plan seed, so reports are reproducible and independent
// of the number of worker threads.

namespace povkit::mc {

enum class CiMethod { none, plugin, bootstrap };

/// Which route computes the index per replicate; the two must agree.
enum class IndexRoute { closed_form, gpi_engine };

struct SimulationPlan {
    dist::ModelPtr model;
    double line = 0.0;
    IndexId index = IndexId::fgt(1.0);
    std::size_t n = 0;       // sample size per replicate, >= 50
    std::size_t reps = 0;    // replicates, >= 100
    std::uint64_t seed = 0;
    CiMethod ci_method = CiMethod::none;
    double level = 0.95;
    std::size_t bootstrap_reps = 999;
    IndexRoute route = IndexRoute::closed_form;
    std::size_t threads = 0; // 0 = hardware concurrency
};

struct SimulationReport {
    double mean_std = 0.0;
    double var_std = 0.0;
    double ks_distance = 0.0;
    std::optional<double> coverage; // set when a CI method ran
    std::size_t reps_effective = 0;
    std::uint64_t seed = 0;
};

/// Kolmogorov-Smirnov distance of the values to the standard normal CDF.
/// Requires at least two finite values.
double ks_statistic(std::span<const double> values);

SimulationReport run_simulation(const SimulationPlan& plan);

/// Fraction of replicate CIs containing the theoretical center. The plan
/// must name a CI method.
double coverage_rate(const SimulationPlan& plan);

} // namespace povkit::mc

#endif
