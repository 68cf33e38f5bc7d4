#include <doctest.h>

#include "povkit/asymptotics.hpp"
#include "povkit/errors.hpp"
#include "povkit/quadrature.hpp"

#include <cmath>

using namespace povkit;
using asymp::CrossTermScaling;

namespace {

const auto kUniform = dist::uniform(0.0, 1.0);
const auto kExp = dist::exponential(1.0);
const double kLn2 = std::log(2.0);

// Variance of ((Z-Y)/Z)^alpha 1{Y<Z} straight from the income density; an
// independent route to the same number as the bridge covariance.
double iid_fgt_variance(const dist::Model& model, double line, double alpha) {
    const auto moment = [&](double power) {
        return quad::integrate_1d(
            [&](double y) {
                return std::pow((line - y) / line, power) * model.density(y);
            },
            model.lower_endpoint(), line, {1e-11, 1e-16, 40000});
    };
    const double m1 = moment(alpha);
    const double m2 = moment(2.0 * alpha);
    return m2 - m1 * m1;
}

} // namespace

TEST_CASE("kernel ingredients for fgt(1) on uniform(0,1), Z=1/2") {
    const auto kernel = asymp::kernel_for(IndexId::fgt(1.0), *kUniform, 0.5);
    CHECK(kernel.q == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(kernel.deficit(0.2) == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(kernel.h(0.1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(kernel.h(0.4) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(kernel.m_at_q == 0.0);
    CHECK(kernel.has_density());
}

TEST_CASE("headcount kernel has an atom and no density") {
    const auto kernel = asymp::kernel_for(IndexId::fgt(0.0), *kUniform, 0.5);
    CHECK(kernel.m_at_q == 1.0);
    CHECK_FALSE(kernel.has_density());
    const auto f = asymp::functional_for(kernel);
    CHECK(f.atom == 1.0);
    CHECK(asymp::covariance(f, f, kernel.q) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("kakwani kernel vanishes at q and carries the weight fluctuation") {
    const auto kernel = asymp::kernel_for(IndexId::kakwani(1.0), *kUniform, 0.5);
    CHECK(kernel.m_at_q == 0.0);
    CHECK(kernel.shape.L(kernel.q, kernel.q) == doctest::Approx(0.0));
    // mu = int_0^1/2 8s (1-2s) ds = 1/3
    const auto f = asymp::functional_for(kernel);
    CHECK(f.atom == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("kakwani with k below one integrates its singular weight fluctuation") {
    // uniform, Z=1/2, k=1/2: mu = int 3s(1-2s)^(-1/2) (1-2s) ds = 1/5 and
    // D = 1.5 * int (1-2s)^(3/2) ds = 3/10, both by hand
    const auto kernel = asymp::kernel_for(IndexId::kakwani(0.5), *kUniform, 0.5);
    const auto f = asymp::functional_for(kernel);
    CHECK(f.atom == doctest::Approx(0.2).epsilon(1e-8));
    const auto law = asymp::limit_law(IndexId::kakwani(0.5), *kUniform, 0.5);
    CHECK(law.D == doctest::Approx(0.3).epsilon(1e-8));
    CHECK(law.variance > 0.0);
}

TEST_CASE("shorrocks kernel") {
    const auto kernel = asymp::kernel_for(IndexId::shorrocks(), *kUniform, 0.5);
    CHECK(kernel.shape.L(kernel.q, 0.25) == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("covariance of the fgt functionals on uniform matches closed forms") {
    const auto f1 = asymp::functional_for(asymp::kernel_for(IndexId::fgt(1.0), *kUniform, 0.5));
    const auto f2 = asymp::functional_for(asymp::kernel_for(IndexId::fgt(2.0), *kUniform, 0.5));
    CHECK(asymp::covariance(f1, f1, 0.5) == doctest::Approx(5.0 / 48.0).epsilon(1e-7));
    CHECK(asymp::covariance(f2, f2, 0.5) == doctest::Approx(13.0 / 180.0).epsilon(1e-7));
    // symmetry
    const double c12 = asymp::covariance(f1, f2, 0.5);
    const double c21 = asymp::covariance(f2, f1, 0.5);
    CHECK(std::fabs(c12 - c21) <= 1e-12);
    // positive semidefiniteness of the variances
    CHECK(asymp::covariance(f1, f1, 0.5) >= -1e-12);
    CHECK(asymp::covariance(f2, f2, 0.5) >= -1e-12);
}

TEST_CASE("limit laws on uniform(0,1), Z=1/2 match hand-derived constants") {
    const auto check = [&](const IndexId& idx, double D, double var) {
        const auto law = asymp::limit_law(idx, *kUniform, 0.5);
        CHECK(law.D == doctest::Approx(D).epsilon(1e-7));
        CHECK(law.variance == doctest::Approx(var).epsilon(1e-7));
        CHECK(law.transformed_center == doctest::Approx(D).epsilon(1e-7));
        CHECK(law.transformed_variance == doctest::Approx(var).epsilon(1e-7));
    };
    check(IndexId::fgt(0.0), 0.5, 0.25);
    check(IndexId::fgt(1.0), 0.25, 5.0 / 48.0);
    check(IndexId::fgt(2.0), 1.0 / 6.0, 13.0 / 180.0);
    check(IndexId::shorrocks(), 5.0 / 12.0, 37.0 / 180.0);
    check(IndexId::thon(), 5.0 / 12.0, 37.0 / 180.0);
    check(IndexId::sen(), 1.0 / 3.0, 7.0 / 45.0);
    check(IndexId::kakwani(2.0), 3.0 / 8.0, 81.0 / 448.0);
}

TEST_CASE("sen and kakwani(1) share one law, shorrocks and thon share one law") {
    const auto sen = asymp::limit_law(IndexId::sen(), *kExp, kLn2);
    const auto kak = asymp::limit_law(IndexId::kakwani(1.0), *kExp, kLn2);
    CHECK(sen.D == kak.D);
    CHECK(sen.variance == kak.variance);
    const auto sh = asymp::limit_law(IndexId::shorrocks(), *kExp, kLn2);
    const auto th = asymp::limit_law(IndexId::thon(), *kExp, kLn2);
    CHECK(sh.D == th.D);
    CHECK(sh.variance == th.variance);
}

TEST_CASE("dropping the bridge factor inflates the kakwani cross term") {
    const auto law = asymp::limit_law(IndexId::kakwani(2.0), *kUniform, 0.5,
                                      CrossTermScaling::unscaled);
    CHECK(law.variance == doctest::Approx(109.0 / 448.0).epsilon(1e-7));
}

TEST_CASE("chu(1) and ray(1) collapse to the fgt(1) law") {
    const auto fgt = asymp::limit_law(IndexId::fgt(1.0), *kExp, kLn2);
    const auto chu = asymp::limit_law(IndexId::chu(1.0), *kExp, kLn2);
    const auto ray = asymp::limit_law(IndexId::ray(1.0), *kExp, kLn2);
    CHECK(chu.transformed_center == doctest::Approx(fgt.D).epsilon(1e-9));
    CHECK(chu.transformed_variance == doctest::Approx(fgt.variance).epsilon(1e-9));
    CHECK(ray.D == doctest::Approx(fgt.D).epsilon(1e-9));
    CHECK(ray.variance == doctest::Approx(fgt.variance).epsilon(1e-9));
}

TEST_CASE("chu(1/2) on uniform matches the hand-derived delta method") {
    const auto law = asymp::limit_law(IndexId::chu(0.5), *kUniform, 0.5);
    CHECK(law.D == doctest::Approx(std::sqrt(2.0) / 3.0).epsilon(1e-7));
    CHECK(law.variance == doctest::Approx(1.0 / 9.0).epsilon(1e-7));
    CHECK(law.transformed_center == doctest::Approx(2.0 / 9.0).epsilon(1e-7));
    CHECK(law.transformed_variance == doctest::Approx(8.0 / 81.0).epsilon(1e-7));
}

TEST_CASE("ray(2) on uniform matches the hand-derived delta method") {
    const auto law = asymp::limit_law(IndexId::ray(2.0), *kUniform, 0.5);
    CHECK(law.D == doctest::Approx(1.0 / 3.0).epsilon(1e-7));
    CHECK(law.variance == doctest::Approx(19.0 / 135.0).epsilon(1e-7));
}

TEST_CASE("exponential frozen values") {
    // K = C(1) = 1 - 1/(2 ln 2) in closed form
    const auto fgt1 = asymp::limit_law(IndexId::fgt(1.0), *kExp, kLn2);
    CHECK(fgt1.D == doctest::Approx(1.0 - 1.0 / (2.0 * kLn2)).epsilon(1e-9));

    const auto fgt2 = asymp::limit_law(IndexId::fgt(2.0), *kExp, kLn2);
    CHECK(fgt2.D == doctest::Approx(0.19597890).epsilon(1e-6));
    CHECK(fgt2.variance == doctest::Approx(0.08566493).epsilon(1e-6));

    const auto chu = asymp::limit_law(IndexId::chu(0.5), *kExp, kLn2);
    CHECK(chu.transformed_center == doctest::Approx(0.25331085).epsilon(1e-5));
    CHECK(chu.transformed_variance == doctest::Approx(0.11552086).epsilon(1e-5));

    const auto ray = asymp::limit_law(IndexId::ray(2.0), *kExp, kLn2);
    CHECK(ray.D == doctest::Approx(0.35165468).epsilon(1e-5));
    CHECK(ray.variance == doctest::Approx(0.14782971).epsilon(1e-5));
}

TEST_CASE("fgt variance collapses to the iid variance") {
    struct Case {
        dist::ModelPtr model;
        double line;
    };
    const Case cases[] = {{kUniform, 0.5}, {kExp, kLn2}, {dist::pareto(1.0, 2.0), std::sqrt(2.0)}};
    for (const auto& c : cases) {
        for (double alpha : {0.5, 2.0}) {
            const auto law = asymp::limit_law(IndexId::fgt(alpha), *c.model, c.line);
            const double oracle = iid_fgt_variance(*c.model, c.line, alpha);
            CHECK(law.variance == doctest::Approx(oracle).epsilon(1e-6));
        }
    }
}

TEST_CASE("fgt(1) centering increases with the poverty line") {
    for (const auto& model : {kUniform, kExp, dist::ModelPtr(dist::pareto(1.0, 2.0)),
                              dist::ModelPtr(dist::lognormal(0.0, 1.0))}) {
        double prev = -1.0;
        for (double s : {0.25, 0.4, 0.55, 0.7}) {
            const double line = model->quantile(s);
            const auto law = asymp::limit_law(IndexId::fgt(1.0), *model, line);
            CHECK(law.D > prev);
            prev = law.D;
        }
    }
}

TEST_CASE("catalogue and domain guards") {
    CHECK_THROWS_AS(asymp::limit_law(IndexId::fgt(1.0), *kUniform, 1.5), DomainError);
    CHECK_THROWS_AS(asymp::limit_law(IndexId::fgt(1.0), *kUniform, 0.0), DomainError);
    CHECK_THROWS_AS(asymp::limit_law(IndexId::takayama(), *kUniform, 0.5), DomainError);
    CHECK_THROWS_AS(asymp::limit_law(IndexId::watts(), *kUniform, 0.5), DomainError);
    CHECK_THROWS_AS(asymp::kernel_for(IndexId::chakravarty(0.5), *kUniform, 0.5), DomainError);
}
