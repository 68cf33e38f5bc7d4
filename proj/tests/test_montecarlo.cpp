#include <doctest.h>

#include "povkit/errors.hpp"
#include "povkit/montecarlo.hpp"
#include "povkit/normal.hpp"

#include <cmath>
#include <vector>

using namespace povkit;

namespace {

mc::SimulationPlan base_plan() {
    mc::SimulationPlan plan;
    plan.model = dist::uniform(0.0, 1.0);
    plan.line = 0.5;
    plan.index = IndexId::fgt(1.0);
    plan.n = 500;
    plan.reps = 300;
    plan.seed = 11;
    return plan;
}

} // namespace

TEST_CASE("ks statistic") {
    // exact normal quantiles leave only the half-step gap 1/(2m)
    std::vector<double> values(100);
    for (std::size_t i = 0; i < values.size(); ++i)
        values[i] = normal::quantile((static_cast<double>(i) + 0.5) / 100.0);
    CHECK(mc::ks_statistic(values) <= 0.006);

    const std::vector<double> zeros(10, 0.0);
    CHECK(mc::ks_statistic(zeros) == doctest::Approx(0.5).epsilon(1e-12));

    CHECK_THROWS_AS(mc::ks_statistic(std::vector<double>{1.0}), InvalidArgument);
}

TEST_CASE("plan validation") {
    mc::SimulationPlan plan = base_plan();
    plan.reps = 50;
    CHECK_THROWS_AS(mc::run_simulation(plan), InvalidArgument);
    plan = base_plan();
    plan.n = 20;
    CHECK_THROWS_AS(mc::run_simulation(plan), InvalidArgument);
    plan = base_plan();
    plan.model = nullptr;
    CHECK_THROWS_AS(mc::run_simulation(plan), InvalidArgument);
}

TEST_CASE("standardized fgt(1) draws look standard normal at desk scale") {
    const mc::SimulationReport rep = mc::run_simulation(base_plan());
    CHECK(rep.var_std > 0.85);
    CHECK(rep.var_std < 1.15);
    CHECK(std::fabs(rep.mean_std) <= 0.15);
    CHECK(rep.ks_distance < 0.08);
    CHECK(rep.reps_effective == 300);
    CHECK(rep.seed == 11);
    CHECK_FALSE(rep.coverage.has_value());
}

TEST_CASE("the binomial headcount case standardizes correctly") {
    mc::SimulationPlan plan = base_plan();
    plan.index = IndexId::fgt(0.0);
    plan.n = 2000;
    plan.reps = 400;
    const mc::SimulationReport rep = mc::run_simulation(plan);
    CHECK(rep.var_std > 0.85);
    CHECK(rep.var_std < 1.15);
}

TEST_CASE("reports are deterministic and thread-count independent") {
    mc::SimulationPlan plan = base_plan();
    plan.threads = 1;
    const mc::SimulationReport a = mc::run_simulation(plan);
    plan.threads = 4;
    const mc::SimulationReport b = mc::run_simulation(plan);
    CHECK(a.mean_std == b.mean_std);
    CHECK(a.var_std == b.var_std);
    CHECK(a.ks_distance == b.ks_distance);

    const mc::SimulationReport c = mc::run_simulation(plan);
    CHECK(b.mean_std == c.mean_std);
    CHECK(b.var_std == c.var_std);
}

TEST_CASE("closed-form and engine routes agree under load") {
    mc::SimulationPlan plan = base_plan();
    plan.index = IndexId::kakwani(2.0);
    plan.route = mc::IndexRoute::closed_form;
    const mc::SimulationReport a = mc::run_simulation(plan);
    plan.route = mc::IndexRoute::gpi_engine;
    const mc::SimulationReport b = mc::run_simulation(plan);
    CHECK(a.mean_std == doctest::Approx(b.mean_std).epsilon(1e-9));
    CHECK(a.var_std == doctest::Approx(b.var_std).epsilon(1e-9));
    CHECK(a.ks_distance == doctest::Approx(b.ks_distance).epsilon(1e-9));
    CHECK(a.reps_effective == b.reps_effective);
}

TEST_CASE("standardized variance drifts toward one as n grows") {
    mc::SimulationPlan plan = base_plan();
    plan.index = IndexId::fgt(2.0);
    plan.reps = 400;
    double prev_dev = -1.0;
    for (std::size_t n : {250u, 1000u, 4000u}) {
        plan.n = n;
        const double dev = std::fabs(mc::run_simulation(plan).var_std - 1.0);
        if (prev_dev >= 0.0) CHECK(dev <= prev_dev + 0.1);
        prev_dev = dev;
    }
}

TEST_CASE("coverage at two levels") {
    mc::SimulationPlan plan = base_plan();
    plan.n = 400;
    plan.reps = 200;
    plan.ci_method = mc::CiMethod::plugin;
    plan.level = 0.95;
    const double c95 = mc::coverage_rate(plan);
    CHECK(c95 >= 0.90);
    CHECK(c95 <= 0.99);

    plan.level = 0.5;
    const double c50 = mc::coverage_rate(plan);
    CHECK(std::fabs(c50 - 0.5) <= 0.12);
}

TEST_CASE("degenerate lines are rejected") {
    mc::SimulationPlan plan = base_plan();
    plan.line = 2.0; // q = 1
    plan.ci_method = mc::CiMethod::plugin;
    CHECK_THROWS_AS(mc::run_simulation(plan), DomainError);
    CHECK_THROWS_AS(mc::coverage_rate(plan), DomainError);

    plan = base_plan();
    plan.ci_method = mc::CiMethod::none;
    CHECK_THROWS_AS(mc::coverage_rate(plan), InvalidArgument);
}
