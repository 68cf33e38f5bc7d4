#include "povkit/sample.hpp"

#include "povkit/errors.hpp"
#include "povkit/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <span>

namespace povkit {

IncomeSample make_sample(std::vector<double> incomes, double y0) {
    if (incomes.empty()) throw InvalidArgument("income sample must be nonempty");
    if (!(y0 >= 0.0) || !std::isfinite(y0))
        throw InvalidArgument("y0 must be finite and >= 0");
    for (double y : incomes) {
        if (!std::isfinite(y)) throw InvalidArgument("incomes must be finite");
        if (y < y0) throw InvalidArgument("income below the support lower endpoint y0");
    }
    std::sort(incomes.begin(), incomes.end());
    return IncomeSample{std::move(incomes), y0};
}

namespace {

void check_context(const IncomeSample& sample, const PovertyContext& ctx) {
    if (!(ctx.line > sample.y0) || !std::isfinite(ctx.line))
        throw InvalidArgument("poverty line must be finite and > y0");
}

std::span<const double> poor_span(const IncomeSample& sample, const PovertyContext& ctx) {
    const auto it = std::lower_bound(sample.incomes.begin(), sample.incomes.end(), ctx.line);
    return {sample.incomes.data(), static_cast<std::size_t>(it - sample.incomes.begin())};
}

double phi_k(std::size_t q, double k) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= q; ++j)
        acc += std::pow(static_cast<double>(j), k);
    return acc;
}

} // namespace

IndexId IndexId::headcount() { return {IndexFamily::headcount}; }

IndexId IndexId::fgt(double alpha) {
    if (!(alpha >= 0.0)) throw InvalidArgument("fgt requires alpha >= 0");
    return {IndexFamily::fgt, alpha};
}

IndexId IndexId::watts() { return {IndexFamily::watts}; }

IndexId IndexId::chakravarty(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw InvalidArgument("chakravarty requires 0 < alpha < 1");
    return {IndexFamily::chakravarty, alpha};
}

IndexId IndexId::chu(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw InvalidArgument("chu requires 0 < alpha <= 1");
    return {IndexFamily::chu, alpha};
}

IndexId IndexId::ray(double alpha) {
    if (!(alpha > 0.0)) throw InvalidArgument("ray requires alpha > 0");
    return {IndexFamily::ray, alpha};
}

IndexId IndexId::sen() { return {IndexFamily::sen}; }

IndexId IndexId::kakwani(double k) {
    if (!(k >= 0.0)) throw InvalidArgument("kakwani requires k >= 0");
    return {IndexFamily::kakwani, 0.0, k};
}

IndexId IndexId::shorrocks() { return {IndexFamily::shorrocks}; }
IndexId IndexId::thon() { return {IndexFamily::thon}; }
IndexId IndexId::takayama() { return {IndexFamily::takayama}; }

std::string IndexId::name() const {
    auto param = [](double v) {
        std::string s = std::to_string(v);
        s.erase(s.find_last_not_of('0') + 1);
        if (!s.empty() && s.back() == '.') s.pop_back();
        return s;
    };
    switch (family) {
    case IndexFamily::headcount: return "headcount";
    case IndexFamily::fgt: return "fgt(" + param(alpha) + ")";
    case IndexFamily::watts: return "watts";
    case IndexFamily::chakravarty: return "chakravarty(" + param(alpha) + ")";
    case IndexFamily::chu: return "chu(" + param(alpha) + ")";
    case IndexFamily::ray: return "ray(" + param(alpha) + ")";
    case IndexFamily::sen: return "sen";
    case IndexFamily::kakwani: return "kakwani(" + param(k) + ")";
    case IndexFamily::shorrocks: return "shorrocks";
    case IndexFamily::thon: return "thon";
    case IndexFamily::takayama: return "takayama";
    }
    return "?";
}

IndexId index_from_name(const std::string& name, double alpha, double k) {
    if (name == "headcount") return IndexId::headcount();
    if (name == "fgt") return IndexId::fgt(alpha);
    if (name == "watts") return IndexId::watts();
    if (name == "chakravarty") return IndexId::chakravarty(alpha);
    if (name == "chu") return IndexId::chu(alpha);
    if (name == "ray") return IndexId::ray(alpha);
    if (name == "sen") return IndexId::sen();
    if (name == "kakwani") return IndexId::kakwani(k);
    if (name == "shorrocks") return IndexId::shorrocks();
    if (name == "thon") return IndexId::thon();
    if (name == "takayama") return IndexId::takayama();
    throw InvalidArgument("unknown index: " + name);
}

std::size_t count_poor(const IncomeSample& sample, const PovertyContext& ctx) {
    check_context(sample, ctx);
    return poor_span(sample, ctx).size();
}

GapVector poverty_gaps(const IncomeSample& sample, const PovertyContext& ctx) {
    check_context(sample, ctx);
    const auto poor = poor_span(sample, ctx);
    GapVector out;
    out.gaps.reserve(poor.size());
    for (double y : poor) out.gaps.push_back((ctx.line - y) / ctx.line);
    return out;
}

double mean_poverty_gap(const IncomeSample& sample, const PovertyContext& ctx) {
    check_context(sample, ctx);
    const auto poor = poor_span(sample, ctx);
    if (poor.empty()) throw DomainError("no poor individuals; g undefined");
    const double z = ctx.line;
    // g = (Z/Q) * sum of gaps
    return z * kern::gap_power_sum(poor, z, 1.0) / static_cast<double>(poor.size());
}

double censored_mean(const IncomeSample& sample, const PovertyContext& ctx) {
    check_context(sample, ctx);
    const auto poor = poor_span(sample, ctx);
    const double n = static_cast<double>(sample.size());
    const double rich = n - static_cast<double>(poor.size());
    return (kern::sum(poor) + rich * ctx.line) / n;
}

double takayama_index(const IncomeSample& sample, const PovertyContext& ctx) {
    check_context(sample, ctx);
    const double mu = censored_mean(sample, ctx);
    if (mu <= 0.0) throw DomainError("degenerate censored mean");
    const auto poor = poor_span(sample, ctx);
    const double n = static_cast<double>(sample.size());
    double s = 0.0;
    for (std::size_t j = 1; j <= poor.size(); ++j)
        s += (n - static_cast<double>(j) + 1.0) * poor[j - 1];
    return 1.0 + 1.0 / n - 2.0 * s / (mu * n * n);
}

double compute_closed_form(const IndexId& index, const IncomeSample& sample,
                           const PovertyContext& ctx) {
    check_context(sample, ctx);
    if (index.family == IndexFamily::takayama) return takayama_index(sample, ctx);

    const auto poor = poor_span(sample, ctx);
    const double n = static_cast<double>(sample.size());
    const double z = ctx.line;
    const std::size_t q = poor.size();
    if (q == 0) return 0.0;
    const double qd = static_cast<double>(q);

    switch (index.family) {
    case IndexFamily::headcount:
        return qd / n;
    case IndexFamily::fgt:
        return kern::gap_power_sum(poor, z, index.alpha) / n;
    case IndexFamily::watts: {
        double acc = 0.0;
        for (double y : poor) {
            if (y <= 0.0) throw DomainError("log divergence: poor income must be positive for Watts");
            acc += std::log(z / y);
        }
        return acc / n;
    }
    case IndexFamily::chakravarty: {
        double acc = 0.0;
        for (double y : poor) acc += 1.0 - std::pow(y / z, index.alpha);
        return acc / n;
    }
    case IndexFamily::chu: {
        double acc = 0.0;
        for (double y : poor) acc += std::pow(z - y, index.alpha);
        return qd / (n * z) * std::pow(acc / qd, 1.0 / index.alpha);
    }
    case IndexFamily::ray: {
        const double g = mean_poverty_gap(sample, ctx);
        double acc = 0.0;
        for (double y : poor) acc += std::pow((z - y) / g, index.alpha);
        return g / (n * z) * acc;
    }
    case IndexFamily::sen:
        // Kakwani with k=1; Phi_1(Q) = Q(Q+1)/2
        return qd / (n * (qd * (qd + 1.0) / 2.0)) *
               kern::affine_weighted_gap_sum(poor, z, qd + 1.0, -1.0);
    case IndexFamily::kakwani: {
        if (index.k == 1.0)
            return qd / (n * (qd * (qd + 1.0) / 2.0)) *
                   kern::affine_weighted_gap_sum(poor, z, qd + 1.0, -1.0);
        double acc = 0.0;
        for (std::size_t j = 1; j <= q; ++j)
            acc += std::pow(qd - static_cast<double>(j) + 1.0, index.k) * (z - poor[j - 1]) / z;
        return qd / (n * phi_k(q, index.k)) * acc;
    }
    case IndexFamily::shorrocks:
        return kern::affine_weighted_gap_sum(poor, z, 2.0 * n + 1.0, -2.0) / (n * n);
    case IndexFamily::thon:
        return 2.0 / (n * (n + 1.0)) * kern::affine_weighted_gap_sum(poor, z, n + 1.0, -1.0);
    case IndexFamily::takayama:
        break; // handled above
    }
    throw InvalidArgument("unsupported index family");
}

} // namespace povkit
