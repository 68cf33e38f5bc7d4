#include "povkit/gpi.hpp"

#include "povkit/errors.hpp"

#include <cmath>

namespace povkit::gpi {

namespace {

double apply_weight(const GPIConfig& c, double u) {
    switch (c.w) {
    case WeightKind::one: return 1.0;
    case WeightKind::power: return std::pow(u, c.w_k);
    }
    return 1.0;
}

double apply_deform(const GPIConfig& c, double u) {
    switch (c.d) {
    case DeformKind::identity: return u;
    case DeformKind::power: return std::pow(u, c.d_alpha);
    }
    return u;
}

double weight_argument(const GPIConfig& c, double n, double q, double j) {
    return c.mu[0] * n + c.mu[1] * q - c.mu[2] * j + c.mu[3];
}

double normalizer(const GPIConfig& c, double q, double n, double z, double g) {
    switch (c.A) {
    case NormalizerKind::poor_count: return q;
    case NormalizerKind::ray: return q * std::pow(g / z, 1.0 - c.d_alpha);
    case NormalizerKind::chu: return std::pow(q, c.d_alpha) / std::pow(n, c.d_alpha - 1.0);
    case NormalizerKind::shorrocks: return q * (2.0 * n - q) / n;
    case NormalizerKind::thon: return q * (n - q + 1.0) / (n + 1.0);
    }
    return q;
}

double denominator(const GPIConfig& c, double q, double n) {
    switch (c.B) {
    case DenominatorKind::poor_count: return q;
    case DenominatorKind::phi_k: {
        double acc = 0.0;
        for (double j = 1.0; j <= q; j += 1.0) acc += std::pow(j, c.w_k);
        return acc;
    }
    case DenominatorKind::shorrocks: return q * (2.0 * n - q);
    case DenominatorKind::thon: return q * (n - q + 1.0) / 2.0;
    }
    return q;
}

void validate(const GPIConfig& c, double n, double q) {
    for (double m : c.mu)
        if (!std::isfinite(m)) throw ConfigError("mu constants must be finite");
    // The argument is affine in j, so checking both ends covers all ranks.
    if (weight_argument(c, n, q, 1.0) < 0.0 || weight_argument(c, n, q, q) < 0.0)
        throw ConfigError("negative weight argument");
}

} // namespace

double evaluate(const GPIConfig& config, const IncomeSample& sample,
                const PovertyContext& ctx) {
    const std::size_t q_count = count_poor(sample, ctx);
    if (q_count == 0) return 0.0;

    const double n = static_cast<double>(sample.size());
    const double q = static_cast<double>(q_count);
    const double z = ctx.line;
    validate(config, n, q);

    const double b = denominator(config, q, n);
    if (!(b > 0.0)) throw ConfigError("denominator B must be positive when Q >= 1");

    const double g =
        config.A == NormalizerKind::ray ? mean_poverty_gap(sample, ctx) : 0.0;
    const double a = normalizer(config, q, n, z, g);

    double acc = 0.0;
    for (std::size_t j = 1; j <= q_count; ++j) {
        const double u = weight_argument(config, n, q, static_cast<double>(j));
        const double gap = (z - sample.incomes[j - 1]) / z;
        acc += apply_weight(config, u) * apply_deform(config, gap);
    }

    const double inner = a / (n * b) * acc;
    if (config.delta == DeltaKind::power_inverse)
        return std::pow(inner, 1.0 / config.delta_alpha);
    return inner;
}

GPIConfig builtin_config(const IndexId& index) {
    GPIConfig c;
    switch (index.family) {
    case IndexFamily::headcount:
        c.d = DeformKind::power;
        c.d_alpha = 0.0;
        return c;
    case IndexFamily::fgt:
        c.d = DeformKind::power;
        c.d_alpha = index.alpha;
        return c;
    case IndexFamily::ray:
        c.d = DeformKind::power;
        c.d_alpha = index.alpha;
        c.A = NormalizerKind::ray;
        return c;
    case IndexFamily::chu:
        c.delta = DeltaKind::power_inverse;
        c.delta_alpha = index.alpha;
        c.d = DeformKind::power;
        c.d_alpha = index.alpha;
        c.A = NormalizerKind::chu;
        return c;
    case IndexFamily::sen:
        return builtin_config(IndexId::kakwani(1.0));
    case IndexFamily::kakwani:
        c.w = WeightKind::power;
        c.w_k = index.k;
        c.d = DeformKind::identity;
        c.B = DenominatorKind::phi_k;
        c.mu = {0.0, 1.0, 1.0, 1.0}; // argument Q - j + 1
        return c;
    case IndexFamily::shorrocks:
        c.w = WeightKind::power;
        c.w_k = 1.0;
        c.d = DeformKind::identity;
        c.A = NormalizerKind::shorrocks;
        c.B = DenominatorKind::shorrocks;
        c.mu = {2.0, 0.0, 2.0, 1.0}; // argument 2n - 2j + 1
        return c;
    case IndexFamily::thon:
        c.w = WeightKind::power;
        c.w_k = 1.0;
        c.d = DeformKind::identity;
        c.A = NormalizerKind::thon;
        c.B = DenominatorKind::thon;
        c.mu = {1.0, 0.0, 1.0, 1.0}; // argument n - j + 1
        return c;
    case IndexFamily::takayama:
        throw ConfigError("takayama: not in GPI family");
    case IndexFamily::watts:
    case IndexFamily::chakravarty:
        throw ConfigError(
            "no direct GPI configuration; apply the income transform and use fgt(1)");
    }
    throw InvalidArgument("unsupported index family");
}

double WeightProfile::operator()(double s) const {
    if (!(s > 0.0) || s > 1.0) return 0.0;
    const std::size_t j = static_cast<std::size_t>(
        std::ceil(s * static_cast<double>(n)));
    if (j < 1 || j > q) return 0.0;
    return steps[j - 1];
}

WeightProfile weight_profile(const GPIConfig& config, std::size_t n, std::size_t q) {
    if (q < 1 || q > n) throw InvalidArgument("weight profile requires 1 <= Q <= n");
    const double nd = static_cast<double>(n);
    const double qd = static_cast<double>(q);
    validate(config, nd, qd);
    const double b = denominator(config, qd, nd);
    if (!(b > 0.0)) throw ConfigError("denominator B must be positive when Q >= 1");
    if (config.A == NormalizerKind::ray)
        throw ConfigError("weight profile is undefined for data-dependent normalizers");
    const double a = normalizer(config, qd, nd, 1.0, 0.0);

    WeightProfile profile;
    profile.n = n;
    profile.q = q;
    profile.steps.resize(q);
    for (std::size_t j = 1; j <= q; ++j) {
        const double u = weight_argument(config, nd, qd, static_cast<double>(j));
        profile.steps[j - 1] = a * apply_weight(config, u) / b;
    }
    return profile;
}

namespace {

const char* delta_name(DeltaKind k) {
    return k == DeltaKind::identity ? "identity" : "power_inverse";
}
const char* weight_name(WeightKind k) { return k == WeightKind::one ? "one" : "power"; }
const char* deform_name(DeformKind k) {
    return k == DeformKind::identity ? "identity" : "power";
}
const char* normalizer_name(NormalizerKind k) {
    switch (k) {
    case NormalizerKind::poor_count: return "poor_count";
    case NormalizerKind::ray: return "ray";
    case NormalizerKind::chu: return "chu";
    case NormalizerKind::shorrocks: return "shorrocks";
    case NormalizerKind::thon: return "thon";
    }
    return "poor_count";
}
const char* denominator_name(DenominatorKind k) {
    switch (k) {
    case DenominatorKind::poor_count: return "poor_count";
    case DenominatorKind::phi_k: return "phi_k";
    case DenominatorKind::shorrocks: return "shorrocks";
    case DenominatorKind::thon: return "thon";
    }
    return "poor_count";
}

template <typename Enum>
Enum enum_from(const std::string& s, std::initializer_list<std::pair<const char*, Enum>> table,
               const char* what) {
    for (const auto& [name, value] : table)
        if (s == name) return value;
    throw ParseError(std::string("unknown ") + what + " kind: " + s);
}

} // namespace

nlohmann::ordered_json to_json(const GPIConfig& c) {
    nlohmann::ordered_json j;
    j["delta"] = {{"kind", delta_name(c.delta)}, {"alpha", c.delta_alpha}};
    j["w"] = {{"kind", weight_name(c.w)}, {"k", c.w_k}};
    j["d"] = {{"kind", deform_name(c.d)}, {"alpha", c.d_alpha}};
    j["A"] = {{"kind", normalizer_name(c.A)}};
    j["B"] = {{"kind", denominator_name(c.B)}};
    j["mu"] = c.mu;
    return j;
}

GPIConfig config_from_json(const nlohmann::json& j) {
    GPIConfig c;
    c.delta = enum_from<DeltaKind>(j.at("delta").at("kind"),
                                   {{"identity", DeltaKind::identity},
                                    {"power_inverse", DeltaKind::power_inverse}},
                                   "delta");
    c.delta_alpha = j.at("delta").value("alpha", 1.0);
    c.w = enum_from<WeightKind>(
        j.at("w").at("kind"), {{"one", WeightKind::one}, {"power", WeightKind::power}}, "w");
    c.w_k = j.at("w").value("k", 0.0);
    c.d = enum_from<DeformKind>(
        j.at("d").at("kind"), {{"identity", DeformKind::identity}, {"power", DeformKind::power}},
        "d");
    c.d_alpha = j.at("d").value("alpha", 1.0);
    c.A = enum_from<NormalizerKind>(j.at("A").at("kind"),
                                    {{"poor_count", NormalizerKind::poor_count},
                                     {"ray", NormalizerKind::ray},
                                     {"chu", NormalizerKind::chu},
                                     {"shorrocks", NormalizerKind::shorrocks},
                                     {"thon", NormalizerKind::thon}},
                                    "A");
    c.B = enum_from<DenominatorKind>(j.at("B").at("kind"),
                                     {{"poor_count", DenominatorKind::poor_count},
                                      {"phi_k", DenominatorKind::phi_k},
                                      {"shorrocks", DenominatorKind::shorrocks},
                                      {"thon", DenominatorKind::thon}},
                                     "B");
    const auto& mu = j.at("mu");
    if (!mu.is_array() || mu.size() != 4) throw ParseError("mu must be an array of 4 numbers");
    for (std::size_t i = 0; i < 4; ++i) c.mu[i] = mu[i].get<double>();
    return c;
}

} // namespace povkit::gpi
