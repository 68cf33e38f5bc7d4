#include "povkit/montecarlo.hpp"

#include "povkit/asymptotics.hpp"
#include "povkit/errors.hpp"
#include "povkit/gpi.hpp"
#include "povkit/inference.hpp"
#include "povkit/kernels.hpp"
#include "povkit/normal.hpp"
#include "povkit/rng.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace povkit::mc {

double ks_statistic(std::span<const double> values) {
    if (values.size() < 2) throw InvalidArgument("ks_statistic requires at least 2 values");
    std::vector<double> sorted(values.begin(), values.end());
    for (double v : sorted)
        if (!std::isfinite(v)) throw InvalidArgument("ks_statistic requires finite values");
    std::sort(sorted.begin(), sorted.end());

    const double m = static_cast<double>(sorted.size());
    double dist = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double phi = normal::cdf(sorted[i]);
        const double above = static_cast<double>(i + 1) / m - phi;
        const double below = phi - static_cast<double>(i) / m;
        dist = std::max({dist, std::fabs(above), std::fabs(below)});
    }
    return dist;
}

namespace {

struct ReplicateOutcome {
    double standardized = 0.0;
    signed char covered = -1; // 1 covered, 0 missed, -1 no interval
};

} // namespace

SimulationReport run_simulation(const SimulationPlan& plan) {
    if (!plan.model) throw InvalidArgument("simulation plan needs a model");
    if (plan.reps < 100) throw InvalidArgument("simulation requires reps >= 100");
    if (plan.n < 50) throw InvalidArgument("simulation requires n >= 50");

    const auto law = asymp::limit_law(plan.index, *plan.model, plan.line);
    const double center = law.transformed_center;
    if (!(law.transformed_variance > 0.0))
        throw DomainError("zero limit variance; coverage undefined");
    const double scale = std::sqrt(law.transformed_variance);
    const double root_n = std::sqrt(static_cast<double>(plan.n));
    const PovertyContext ctx{plan.line};

    gpi::GPIConfig config;
    if (plan.route == IndexRoute::gpi_engine) config = gpi::builtin_config(plan.index);

    std::vector<ReplicateOutcome> outcomes(plan.reps);
    std::exception_ptr failure;
    std::mutex failure_mutex;

    const auto worker = [&](std::size_t begin, std::size_t end) {
        try {
            for (std::size_t r = begin; r < end; ++r) {
                const std::uint64_t stream = rng::substream_seed(plan.seed, r + 1);
                const IncomeSample sample = dist::draw_sample(*plan.model, plan.n, stream);
                const double value = plan.route == IndexRoute::closed_form
                                         ? compute_closed_form(plan.index, sample, ctx)
                                         : gpi::evaluate(config, sample, ctx);
                outcomes[r].standardized = root_n * (value - center) / scale;
                if (plan.ci_method == CiMethod::none) continue;
                try {
                    const infer::ConfidenceInterval ci =
                        plan.ci_method == CiMethod::plugin
                            ? infer::plugin_ci(plan.index, sample, ctx, plan.level)
                            : infer::bootstrap_ci(plan.index, sample, ctx, plan.level,
                                                  plan.bootstrap_reps, stream);
                    outcomes[r].covered = (ci.lo <= center && center <= ci.hi) ? 1 : 0;
                } catch (const Error&) {
                    outcomes[r].covered = -1; // replicate yields no interval
                }
            }
        } catch (...) {
            const std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };

    std::size_t nthreads = plan.threads ? plan.threads : std::thread::hardware_concurrency();
    nthreads = std::max<std::size_t>(1, std::min(nthreads, plan.reps));
    if (nthreads == 1) {
        worker(0, plan.reps);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (plan.reps + nthreads - 1) / nthreads;
        for (std::size_t t = 0; t < nthreads; ++t) {
            const std::size_t begin = t * chunk;
            const std::size_t end = std::min(begin + chunk, plan.reps);
            if (begin >= end) break;
            pool.emplace_back(worker, begin, end);
        }
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    // Sequential reduction keeps the report independent of the thread count.
    std::vector<double> values(plan.reps);
    for (std::size_t r = 0; r < plan.reps; ++r) values[r] = outcomes[r].standardized;

    SimulationReport report;
    report.seed = plan.seed;
    report.mean_std = kern::sum(values) / static_cast<double>(plan.reps);
    report.var_std = kern::sum_sq_dev(values, report.mean_std) /
                     static_cast<double>(plan.reps - 1);
    report.ks_distance = ks_statistic(values);
    if (plan.ci_method == CiMethod::none) {
        report.reps_effective = plan.reps;
    } else {
        std::size_t effective = 0, covered = 0;
        for (const auto& o : outcomes) {
            if (o.covered < 0) continue;
            ++effective;
            covered += static_cast<std::size_t>(o.covered);
        }
        if (effective == 0) throw DomainError("no replicate produced a confidence interval");
        report.reps_effective = effective;
        report.coverage = static_cast<double>(covered) / static_cast<double>(effective);
    }
    return report;
}

double coverage_rate(const SimulationPlan& plan) {
    if (plan.ci_method == CiMethod::none)
        throw InvalidArgument("coverage_rate requires a CI method");
    return run_simulation(plan).coverage.value();
}

} // namespace povkit::mc
