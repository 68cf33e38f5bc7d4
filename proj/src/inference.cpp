#include "povkit/inference.hpp"

#include "povkit/asymptotics.hpp"
#include "povkit/errors.hpp"
#include "povkit/kernels.hpp"
#include "povkit/normal.hpp"
#include "povkit/rng.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace povkit::infer {

namespace {

constexpr std::size_t kGrid = 512;

} // namespace

double empirical_quantile(const IncomeSample& sample, double p) {
    if (!(p > 0.0 && p <= 1.0))
        throw InvalidArgument("empirical quantile requires p in (0,1]");
    const std::size_t n = sample.size();
    const auto idx = static_cast<std::size_t>(
        std::min(std::max(std::ceil(p * static_cast<double>(n)), 1.0),
                 static_cast<double>(n)));
    return sample.incomes[idx - 1];
}

double empirical_quantile_derivative(const IncomeSample& sample, double s,
                                     double bandwidth) {
    const std::size_t n = sample.size();
    if (n < 10) throw DomainError("sample too small for derivative estimation");
    if (!(s > 0.0 && s < 1.0)) throw InvalidArgument("s must be in (0,1)");

    const double nd = static_cast<double>(n);
    const double edge = 1.0 / nd;
    double b = bandwidth > 0.0 ? bandwidth : std::pow(nd, -0.2);
    b = std::min({b, s - edge, 1.0 - edge - s});
    b = std::max(b, edge);
    const double p_hi = std::clamp(s + b, edge, 1.0 - edge);
    const double p_lo = std::clamp(s - b, edge, 1.0 - edge);
    return (empirical_quantile(sample, p_hi) - empirical_quantile(sample, p_lo)) /
           (p_hi - p_lo);
}

double bridge_quadratic(std::span<const double> psi1, std::span<const double> psi2,
                        std::span<const double> u) {
    const std::size_t n = u.size();
    if (psi1.size() != n || psi2.size() != n)
        throw InvalidArgument("bridge_quadratic: size mismatch");
    double w1 = 0.0, w2 = 0.0, t2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        w1 += psi1[i] * u[i];
        w2 += psi2[i] * u[i];
        t2 += psi2[i];
    }
    // sum_j psi2_j min(u_i, u_j) = prefix2_i + u_i * (t2 - cum2_i) for ascending u
    double acc = 0.0, prefix2 = 0.0, cum2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        prefix2 += psi2[i] * u[i];
        cum2 += psi2[i];
        acc += psi1[i] * (prefix2 + u[i] * (t2 - cum2));
    }
    return acc - w1 * w2;
}

namespace {

// Empirical counterparts of the limit-law ingredients on the midpoint grid
// over (0, q-hat).
struct Ingredients {
    double qhat = 0.0;
    std::size_t q_count = 0;
    double line = 0.0;
    std::size_t n = 0;
    double w = 0.0;              // panel width
    std::vector<double> s;       // grid nodes, ascending
    std::vector<double> a;       // a-hat(s_i)
    std::vector<double> deficit; // Delta-hat(s_i)
};

Ingredients make_ingredients(const IncomeSample& sample, const PovertyContext& ctx) {
    Ingredients ing;
    ing.q_count = count_poor(sample, ctx);
    ing.n = sample.size();
    ing.line = ctx.line;
    ing.qhat = static_cast<double>(ing.q_count) / static_cast<double>(ing.n);
    ing.w = ing.qhat / static_cast<double>(kGrid);
    ing.s.resize(kGrid);
    ing.a.resize(kGrid);
    ing.deficit.resize(kGrid);
    for (std::size_t i = 0; i < kGrid; ++i) {
        const double s = (static_cast<double>(i) + 0.5) * ing.w;
        ing.s[i] = s;
        ing.a[i] = empirical_quantile_derivative(sample, s);
        ing.deficit[i] = (ctx.line - empirical_quantile(sample, s)) / ctx.line;
    }
    return ing;
}

std::vector<double> psi_grid(const asymp::IndexShape& shape, const Ingredients& ing) {
    std::vector<double> psi(kGrid);
    for (std::size_t i = 0; i < kGrid; ++i)
        psi[i] = shape.L(ing.qhat, ing.s[i]) * ing.a[i] * shape.d.deriv(ing.deficit[i]);
    return psi;
}

double grid_cov_density(const std::vector<double>& psi1, const std::vector<double>& psi2,
                        const Ingredients& ing) {
    return bridge_quadratic(psi1, psi2, ing.s) * ing.w * ing.w / (ing.line * ing.line);
}

double grid_s_moment(const std::vector<double>& psi, const Ingredients& ing) {
    double acc = 0.0;
    for (std::size_t i = 0; i < kGrid; ++i) acc += ing.s[i] * psi[i];
    return acc * ing.w;
}

double direct_plugin_variance(const asymp::IndexShape& shape, const Ingredients& ing) {
    const double q = ing.qhat;
    if (shape.d.deriv_is_zero()) return q * (1.0 - q); // headcount: atom only

    const auto psi = psi_grid(shape, ing);
    double mu = 0.0;
    if (shape.gamma) {
        for (std::size_t i = 0; i < kGrid; ++i)
            mu += shape.gamma(q, ing.s[i]) * shape.d(ing.deficit[i]);
        mu *= ing.w;
    }
    const double atom = shape.L(q, q) * shape.d.at_zero() + mu;
    double var = std::max(0.0, grid_cov_density(psi, psi, ing));
    var += atom * atom * q * (1.0 - q);
    var += 2.0 * atom * (1.0 - q) / ing.line * grid_s_moment(psi, ing);
    return std::max(0.0, var);
}

double composed_plugin_variance(const IndexId& index, const IncomeSample& sample,
                                const PovertyContext& ctx, const Ingredients& ing) {
    const double alpha = index.alpha;
    const double q = ing.qhat;
    const auto psi_a = psi_grid(asymp::index_shape(IndexId::fgt(alpha)), ing);
    const double v_hh = q * (1.0 - q);
    const double v_ha = (1.0 - q) / ing.line * grid_s_moment(psi_a, ing);
    const double v_aa = std::max(0.0, grid_cov_density(psi_a, psi_a, ing));
    const double C = compute_closed_form(IndexId::fgt(alpha), sample, ctx);

    if (index.family == IndexFamily::chu) {
        const double J = std::pow(q, alpha - 1.0) * C;
        if (!(J > 0.0)) throw DomainError("delta method undefined at D<=0");
        const double g0 = (alpha - 1.0) * std::pow(q, alpha - 2.0) * C;
        const double g1 = std::pow(q, alpha - 1.0);
        const double var = g0 * g0 * v_hh + 2.0 * g0 * g1 * v_ha + g1 * g1 * v_aa;
        const double dprime = (1.0 / alpha) * std::pow(J, 1.0 / alpha - 1.0);
        return std::max(0.0, var * dprime * dprime);
    }

    // ray: phi(q, K, C) = (K/q)^(1-alpha) * C over (headcount, fgt(1), fgt(alpha))
    const auto psi_1 = psi_grid(asymp::index_shape(IndexId::fgt(1.0)), ing);
    const double K = compute_closed_form(IndexId::fgt(1.0), sample, ctx);
    if (!(K > 0.0 && C > 0.0)) throw DomainError("delta method undefined at D<=0");
    const double v_h1 = (1.0 - q) / ing.line * grid_s_moment(psi_1, ing);
    const double v_11 = std::max(0.0, grid_cov_density(psi_1, psi_1, ing));
    const double v_1a = grid_cov_density(psi_1, psi_a, ing);
    const double g[3] = {(alpha - 1.0) * std::pow(K, 1.0 - alpha) * std::pow(q, alpha - 2.0) * C,
                         (1.0 - alpha) * std::pow(K, -alpha) * std::pow(q, alpha - 1.0) * C,
                         std::pow(K / q, 1.0 - alpha)};
    const double sigma[3][3] = {{v_hh, v_h1, v_ha}, {v_h1, v_11, v_1a}, {v_ha, v_1a, v_aa}};
    double var = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) var += g[i] * g[j] * sigma[i][j];
    return std::max(0.0, var);
}

} // namespace

double plugin_variance(const IndexId& index, const IncomeSample& sample,
                       const PovertyContext& ctx) {
    const std::size_t q_count = count_poor(sample, ctx);
    if (q_count < 2) throw DomainError("insufficient poor observations");

    // Headcount shortcut keeps the binomial identity exact.
    if (index.family == IndexFamily::headcount ||
        (index.family == IndexFamily::fgt && index.alpha == 0.0)) {
        const double qhat =
            static_cast<double>(q_count) / static_cast<double>(sample.size());
        return qhat * (1.0 - qhat);
    }

    const Ingredients ing = make_ingredients(sample, ctx);
    switch (index.family) {
    case IndexFamily::fgt:
    case IndexFamily::sen:
    case IndexFamily::kakwani:
    case IndexFamily::shorrocks:
    case IndexFamily::thon:
        return direct_plugin_variance(asymp::index_shape(index), ing);
    case IndexFamily::chu:
    case IndexFamily::ray:
        return composed_plugin_variance(index, sample, ctx, ing);
    default:
        throw DomainError("no limit law in the catalogue for " + index.name());
    }
}

ConfidenceInterval plugin_ci(const IndexId& index, const IncomeSample& sample,
                             const PovertyContext& ctx, double level) {
    if (!(level > 0.0 && level < 1.0)) throw InvalidArgument("level must be in (0,1)");
    const std::size_t q_count = count_poor(sample, ctx);
    const double variance = plugin_variance(index, sample, ctx);

    ConfidenceInterval ci;
    ci.estimate = compute_closed_form(index, sample, ctx);
    ci.se = std::sqrt(variance / static_cast<double>(sample.size()));
    ci.level = level;
    const double z = normal::quantile(0.5 + level / 2.0);
    ci.lo = ci.estimate - z * ci.se;
    ci.hi = ci.estimate + z * ci.se;
    ci.method = "plugin";
    ci.n = sample.size();
    if (q_count < 30)
        ci.warning = "small poor subsample (Q=" + std::to_string(q_count) +
                     "); variance estimate may be unstable";
    return ci;
}

namespace {

double interpolated_quantile(const std::vector<double>& sorted, double p) {
    const std::size_t n = sorted.size();
    const double h = p * static_cast<double>(n - 1);
    const auto lo = static_cast<std::size_t>(std::min(std::floor(h), static_cast<double>(n - 1)));
    const std::size_t hi = std::min(lo + 1, n - 1);
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

} // namespace

ConfidenceInterval bootstrap_ci(const IndexId& index, const IncomeSample& sample,
                                const PovertyContext& ctx, double level,
                                std::size_t resamples, std::uint64_t seed) {
    if (resamples < 100) throw InvalidArgument("bootstrap requires at least 100 resamples");
    if (!(level > 0.0 && level < 1.0)) throw InvalidArgument("level must be in (0,1)");

    const std::size_t n = sample.size();
    std::vector<double> stats(resamples);
    std::vector<double> resample(n);
    for (std::size_t r = 1; r <= resamples; ++r) {
        auto gen = std::mt19937_64(rng::substream_seed(seed, r));
        for (std::size_t i = 0; i < n; ++i)
            resample[i] = sample.incomes[rng::uniform_index(gen, n)];
        stats[r - 1] = compute_closed_form(index, make_sample(resample, sample.y0), ctx);
    }

    ConfidenceInterval ci;
    ci.estimate = compute_closed_form(index, sample, ctx);
    const double mean = kern::sum(stats) / static_cast<double>(resamples);
    ci.se = std::sqrt(kern::sum_sq_dev(stats, mean) / static_cast<double>(resamples - 1));
    ci.level = level;
    std::sort(stats.begin(), stats.end());
    ci.lo = interpolated_quantile(stats, (1.0 - level) / 2.0);
    ci.hi = interpolated_quantile(stats, 1.0 - (1.0 - level) / 2.0);
    ci.method = "bootstrap";
    ci.n = n;
    return ci;
}

} // namespace povkit::infer
