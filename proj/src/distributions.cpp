#include "povkit/distributions.hpp"

#include "povkit/errors.hpp"
#include "povkit/normal.hpp"
#include "povkit/rng.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <vector>

namespace povkit::dist {

namespace {

class Uniform final : public Model {
public:
    Uniform(double a, double b) : a_(a), b_(b) {
        if (!(b > a) || !(a >= 0.0)) throw InvalidArgument("uniform requires b > a >= 0");
    }
    std::string name() const override {
        return "uniform(" + std::to_string(a_) + "," + std::to_string(b_) + ")";
    }
    double lower_endpoint() const override { return a_; }
    double cdf(double y) const override {
        if (y <= a_) return 0.0;
        if (y >= b_) return 1.0;
        return (y - a_) / (b_ - a_);
    }
    double quantile(double s) const override { return a_ + (b_ - a_) * s; }
    double density(double y) const override {
        return (y >= a_ && y <= b_) ? 1.0 / (b_ - a_) : 0.0;
    }
    double quantile_density(double) const override { return b_ - a_; }

private:
    double a_, b_;
};

class Exponential final : public Model {
public:
    explicit Exponential(double lambda) : lambda_(lambda) {
        if (!(lambda > 0.0)) throw InvalidArgument("exponential requires lambda > 0");
    }
    std::string name() const override { return "exponential(" + std::to_string(lambda_) + ")"; }
    double lower_endpoint() const override { return 0.0; }
    double cdf(double y) const override { return y <= 0.0 ? 0.0 : -std::expm1(-lambda_ * y); }
    double quantile(double s) const override { return -std::log1p(-s) / lambda_; }
    double density(double y) const override {
        return y < 0.0 ? 0.0 : lambda_ * std::exp(-lambda_ * y);
    }
    double quantile_density(double s) const override { return 1.0 / (lambda_ * (1.0 - s)); }

private:
    double lambda_;
};

class Pareto final : public Model {
public:
    Pareto(double xm, double beta) : xm_(xm), beta_(beta) {
        if (!(xm > 0.0) || !(beta > 0.0)) throw InvalidArgument("pareto requires xm > 0, beta > 0");
    }
    std::string name() const override {
        return "pareto(" + std::to_string(xm_) + "," + std::to_string(beta_) + ")";
    }
    double lower_endpoint() const override { return xm_; }
    double cdf(double y) const override {
        return y <= xm_ ? 0.0 : 1.0 - std::pow(xm_ / y, beta_);
    }
    double quantile(double s) const override { return xm_ * std::pow(1.0 - s, -1.0 / beta_); }
    double density(double y) const override {
        return y < xm_ ? 0.0 : beta_ * std::pow(xm_, beta_) / std::pow(y, beta_ + 1.0);
    }
    double quantile_density(double s) const override {
        return xm_ / beta_ * std::pow(1.0 - s, -1.0 / beta_ - 1.0);
    }

private:
    double xm_, beta_;
};

class Lognormal final : public Model {
public:
    Lognormal(double m, double sigma) : m_(m), sigma_(sigma) {
        if (!(sigma > 0.0)) throw InvalidArgument("lognormal requires sigma > 0");
    }
    std::string name() const override {
        return "lognormal(" + std::to_string(m_) + "," + std::to_string(sigma_) + ")";
    }
    double lower_endpoint() const override { return 0.0; }
    double cdf(double y) const override {
        return y <= 0.0 ? 0.0 : normal::cdf((std::log(y) - m_) / sigma_);
    }
    double quantile(double s) const override {
        return std::exp(m_ + sigma_ * normal::quantile(s));
    }
    double density(double y) const override {
        if (y <= 0.0) return 0.0;
        return normal::pdf((std::log(y) - m_) / sigma_) / (y * sigma_);
    }
    double quantile_density(double s) const override {
        const double z = normal::quantile(s);
        return sigma_ * std::exp(m_ + sigma_ * z) / normal::pdf(z);
    }

private:
    double m_, sigma_;
};

std::vector<double> parse_params(std::string_view text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string_view tok = text.substr(pos, comma - pos);
        double value = 0.0;
        const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
            throw ParseError("bad model parameter: '" + std::string(tok) + "'");
        out.push_back(value);
        if (comma == text.size()) break;
        pos = comma + 1;
    }
    return out;
}

} // namespace

ModelPtr uniform(double a, double b) { return std::make_shared<Uniform>(a, b); }
ModelPtr exponential(double lambda) { return std::make_shared<Exponential>(lambda); }
ModelPtr pareto(double xm, double beta) { return std::make_shared<Pareto>(xm, beta); }
ModelPtr lognormal(double m, double sigma) { return std::make_shared<Lognormal>(m, sigma); }

ModelPtr parse_model(std::string_view spec) {
    const std::size_t colon = spec.find(':');
    if (colon == std::string_view::npos)
        throw ParseError("model spec must be name:p1[,p2]");
    const std::string_view name = spec.substr(0, colon);
    const auto params = parse_params(spec.substr(colon + 1));
    auto expect = [&](std::size_t count) {
        if (params.size() != count)
            throw ParseError(std::string(name) + " expects " + std::to_string(count) +
                             " parameter(s)");
    };
    if (name == "uniform") { expect(2); return uniform(params[0], params[1]); }
    if (name == "exponential") { expect(1); return exponential(params[0]); }
    if (name == "pareto") { expect(2); return pareto(params[0], params[1]); }
    if (name == "lognormal") { expect(2); return lognormal(params[0], params[1]); }
    throw ParseError("unknown model: " + std::string(name));
}

IncomeSample draw_sample(const Model& model, std::size_t n, std::uint64_t seed) {
    if (n < 1) throw InvalidArgument("sample size must be >= 1");
    auto gen = rng::engine(seed);
    std::vector<double> incomes(n);
    for (double& y : incomes) y = model.quantile(rng::uniform01(gen));
    std::sort(incomes.begin(), incomes.end());
    return IncomeSample{std::move(incomes), model.lower_endpoint()};
}

double probe_tail_exponent(const Model& model) {
    // Least-squares slope of log a(s) vs log s on a log-spaced grid.
    constexpr int points = 25;
    const double lo = std::log(1e-6), hi = std::log(1e-3);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < points; ++i) {
        const double x = lo + (hi - lo) * i / (points - 1);
        const double y = std::log(model.quantile_density(std::exp(x)));
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const double slope = (points * sxy - sx * sy) / (points * sxx - sx * sx);
    if (!(slope > -1.5 + 1e-3))
        throw DomainError("C3 violated: quantile density too singular near s=0 (slope " +
                          std::to_string(slope) + ")");
    return slope;
}

} // namespace povkit::dist
