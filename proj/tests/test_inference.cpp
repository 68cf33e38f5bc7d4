#include <doctest.h>

#include "povkit/distributions.hpp"
#include "povkit/errors.hpp"
#include "povkit/inference.hpp"
#include "povkit/rng.hpp"

#include <cmath>
#include <vector>

using namespace povkit;

TEST_CASE("bridge quadratic prefix form equals the direct double sum") {
    auto gen = rng::engine(5);
    for (std::size_t n : {1u, 2u, 7u, 64u, 200u}) {
        std::vector<double> u(n), p1(n), p2(n);
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            acc += rng::uniform01(gen) * 0.01;
            u[i] = acc;
            p1[i] = rng::uniform01(gen) * 2.0 - 0.5;
            p2[i] = rng::uniform01(gen) * 2.0 - 0.5;
        }
        double direct = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                direct += p1[i] * p2[j] * (std::min(u[i], u[j]) - u[i] * u[j]);
        const double fast = infer::bridge_quadratic(p1, p2, u);
        CHECK(fast == doctest::Approx(direct).epsilon(1e-10));
    }
}

TEST_CASE("empirical quantile derivative") {
    const auto uni = dist::uniform(0.0, 1.0);
    const IncomeSample big = dist::draw_sample(*uni, 100000, 99);
    CHECK(std::fabs(infer::empirical_quantile_derivative(big, 0.5) - 1.0) <= 0.05);

    // linear quantile function: derivative is 1 at interior points
    std::vector<double> arith(1000);
    for (std::size_t i = 0; i < arith.size(); ++i)
        arith[i] = static_cast<double>(i + 1) / 1000.0;
    const IncomeSample lin = make_sample(std::move(arith));
    for (double s : {0.2, 0.5, 0.8})
        CHECK(infer::empirical_quantile_derivative(lin, s) == doctest::Approx(1.0).epsilon(0.02));

    CHECK_THROWS_AS(
        infer::empirical_quantile_derivative(make_sample({1, 2, 3, 4, 5}), 0.5),
        DomainError);
}

TEST_CASE("plugin interval for the headcount is exactly binomial") {
    const auto uni = dist::uniform(0.0, 1.0);
    const IncomeSample s = dist::draw_sample(*uni, 2000, 3);
    const PovertyContext ctx{0.5};
    const auto q = static_cast<double>(count_poor(s, ctx));
    const double n = static_cast<double>(s.size());
    const double qhat = q / n;
    const infer::ConfidenceInterval ci = infer::plugin_ci(IndexId::fgt(0.0), s, ctx);
    CHECK(ci.se == std::sqrt(qhat * (1.0 - qhat) / n));
    const infer::ConfidenceInterval hc = infer::plugin_ci(IndexId::headcount(), s, ctx);
    CHECK(hc.se == ci.se);
}

TEST_CASE("plugin se tracks the theoretical value for fgt(1) on uniform") {
    const auto uni = dist::uniform(0.0, 1.0);
    const IncomeSample s = dist::draw_sample(*uni, 10000, 7);
    const infer::ConfidenceInterval ci = infer::plugin_ci(IndexId::fgt(1.0), s, {0.5});
    const double target = std::sqrt(5.0 / 48.0 / 10000.0);
    CHECK(std::fabs(ci.se / target - 1.0) <= 0.15);
    CHECK(ci.lo <= ci.estimate);
    CHECK(ci.estimate <= ci.hi);
    CHECK(ci.warning.empty());
}

TEST_CASE("plugin guards") {
    // one poor observation is not enough
    const IncomeSample s = make_sample({0.1, 0.9, 1.2, 1.5});
    CHECK_THROWS_AS(infer::plugin_ci(IndexId::fgt(1.0), s, {0.5}), DomainError);

    // a small poor subsample carries a warning
    const auto uni = dist::uniform(0.0, 1.0);
    const IncomeSample tiny = dist::draw_sample(*uni, 100, 11);
    const infer::ConfidenceInterval ci = infer::plugin_ci(IndexId::fgt(1.0), tiny, {0.1});
    CHECK(!ci.warning.empty());
}

TEST_CASE("bootstrap determinism and degeneracy") {
    const IncomeSample flat = make_sample({0.2, 0.2, 0.2, 0.2, 0.2});
    const infer::ConfidenceInterval ci =
        infer::bootstrap_ci(IndexId::fgt(2.0), flat, {0.5}, 0.95, 200, 1);
    CHECK(ci.lo == ci.hi);
    CHECK(ci.se <= 1e-12); // rounding noise only


    const auto uni = dist::uniform(0.0, 1.0);
    const IncomeSample s = dist::draw_sample(*uni, 500, 21);
    const auto a = infer::bootstrap_ci(IndexId::fgt(1.0), s, {0.5}, 0.95, 300, 5);
    const auto b = infer::bootstrap_ci(IndexId::fgt(1.0), s, {0.5}, 0.95, 300, 5);
    CHECK(a.lo == b.lo);
    CHECK(a.hi == b.hi);
    CHECK(a.se == b.se);
    const auto c = infer::bootstrap_ci(IndexId::fgt(1.0), s, {0.5}, 0.95, 300, 6);
    CHECK(a.lo != c.lo);

    CHECK_THROWS_AS(infer::bootstrap_ci(IndexId::fgt(1.0), s, {0.5}, 0.95, 99, 5),
                    InvalidArgument);
}

TEST_CASE("bootstrap and plugin standard errors agree at desk scale") {
    const auto uni = dist::uniform(0.0, 1.0);
    const IncomeSample s = dist::draw_sample(*uni, 2000, 13);
    const PovertyContext ctx{0.5};
    const auto plug = infer::plugin_ci(IndexId::fgt(1.0), s, ctx);
    const auto boot = infer::bootstrap_ci(IndexId::fgt(1.0), s, ctx, 0.95, 999, 13);
    CHECK(std::fabs(boot.se / plug.se - 1.0) <= 0.15);
    CHECK(boot.lo <= boot.estimate);
    CHECK(boot.estimate <= boot.hi);
}

TEST_CASE("standard errors shrink like the square root of n") {
    const auto uni = dist::uniform(0.0, 1.0);
    const IncomeSample big = dist::draw_sample(*uni, 4000, 17);
    std::vector<double> half;
    for (std::size_t i = 0; i < big.size(); i += 2) half.push_back(big.incomes[i]);
    const IncomeSample small = make_sample(std::move(half));

    for (const IndexId& idx : {IndexId::fgt(1.0), IndexId::fgt(2.0)}) {
        const double se_big = infer::plugin_ci(idx, big, {0.5}).se;
        const double se_small = infer::plugin_ci(idx, small, {0.5}).se;
        const double ratio = se_big / se_small;
        CHECK(ratio >= 0.6);
        CHECK(ratio <= 0.82);
    }
}

TEST_CASE("plugin covers the composed indices") {
    const auto expo = dist::exponential(1.0);
    const IncomeSample s = dist::draw_sample(*expo, 4000, 23);
    const PovertyContext ctx{std::log(2.0)};
    const auto chu = infer::plugin_ci(IndexId::chu(0.5), s, ctx);
    CHECK(chu.se > 0.0);
    CHECK(std::fabs(chu.se / std::sqrt(0.11552086 / 4000.0) - 1.0) <= 0.25);
    const auto ray = infer::plugin_ci(IndexId::ray(2.0), s, ctx);
    CHECK(ray.se > 0.0);
    CHECK(std::fabs(ray.se / std::sqrt(0.14782971 / 4000.0) - 1.0) <= 0.25);
}
