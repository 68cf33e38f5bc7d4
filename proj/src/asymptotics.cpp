#include "povkit/asymptotics.hpp"

#include "povkit/errors.hpp"
#include "povkit/quadrature.hpp"

#include <array>
#include <cmath>

namespace povkit::asymp {

namespace {

// Quadrature budgets: two orders below the tightest tolerance any consumer
// asserts against these numbers.
const quad::Options kTol1d{1e-10, 1e-15, 20000};
const quad::Options kTol2d{1e-8, 1e-15, 20000};

// Substitution order that turns an integrable gap^(e-1) endpoint
// singularity into a bounded integrand: gap = t^m with m*e >= 2.
int grade_for_exponent(double e) {
    if (!(e > 0.0) || e >= 1.0) return 2;
    return static_cast<int>(std::min(64.0, std::ceil(2.0 / e)));
}

// Int over y in (y0, line) of f(y, gap) with gap = line - y, through the
// graded substitution gap = t^m. The exact gap reaches the integrand as a
// power of t, so factors like gap^(alpha-1) keep full relative accuracy
// arbitrarily close to the line.
double income_integral(const std::function<double(double, double)>& f, double y0,
                       double line, int m, const quad::Options& opts) {
    const double md = static_cast<double>(m);
    const double upper = std::pow(line - y0, 1.0 / md);
    return quad::integrate_1d(
        [&](double t) {
            const double gap = std::pow(t, md);
            return f(line - gap, gap) * md * std::pow(t, md - 1.0);
        },
        0.0, upper, opts);
}

// Same substitution in both coordinates of an integral over (y0, line)^2.
// G is monotone, so the min-kink sits on x = y, i.e. t = r, where the 2-D
// rule splits.
double income_integral2(const std::function<double(double, double, double, double)>& f,
                        double y0, double line, int m, const quad::Options& opts) {
    const double md = static_cast<double>(m);
    const double upper = std::pow(line - y0, 1.0 / md);
    return quad::integrate_2d(
        [&](double t, double r) {
            const double gap_x = std::pow(t, md);
            const double gap_y = std::pow(r, md);
            return f(line - gap_x, gap_x, line - gap_y, gap_y) * md * md *
                   std::pow(t * r, md - 1.0);
        },
        0.0, upper, opts);
}

} // namespace

double Deform::operator()(double u) const {
    if (is_identity) return u;
    if (alpha == 0.0) return 1.0;
    return std::pow(u, alpha);
}

double Deform::deriv(double u) const {
    if (is_identity) return 1.0;
    if (alpha == 0.0) return 0.0;
    if (alpha == 1.0) return 1.0;
    return alpha * std::pow(u, alpha - 1.0);
}

double Deform::at_zero() const { return (!is_identity && alpha == 0.0) ? 1.0 : 0.0; }

IndexShape index_shape(const IndexId& index) {
    IndexShape shape;
    switch (index.family) {
    case IndexFamily::headcount:
        shape.L = [](double, double) { return 1.0; };
        shape.d = Deform::power(0.0);
        return shape;
    case IndexFamily::fgt:
        shape.L = [](double, double) { return 1.0; };
        shape.d = Deform::power(index.alpha);
        if (index.alpha > 0.0 && index.alpha < 1.0) shape.min_exponent = index.alpha;
        return shape;
    case IndexFamily::shorrocks:
    case IndexFamily::thon:
        shape.L = [](double, double s) { return 2.0 * (1.0 - s); };
        shape.d = Deform::identity();
        return shape;
    case IndexFamily::sen:
        return index_shape(IndexId::kakwani(1.0));
    case IndexFamily::kakwani: {
        const double k = index.k;
        shape.L = [k](double q, double s) {
            const double rel = std::max(1.0 - s / q, 0.0);
            return (k + 1.0) * std::pow(rel, k);
        };
        if (k > 0.0) {
            shape.gamma = [k](double q, double s) {
                const double rel = std::max(1.0 - s / q, 0.0);
                return k * (k + 1.0) * std::pow(rel, k - 1.0) * s / (q * q);
            };
            if (k < 1.0) shape.min_exponent = k;
        }
        shape.d = Deform::identity();
        return shape;
    }
    default:
        throw DomainError("no limit law in the catalogue for " + index.name());
    }
}

AsymptoticKernel kernel_for(const IndexId& index, const dist::Model& model,
                            double line) {
    dist::probe_tail_exponent(model);
    const double q = model.cdf(line);
    if (!(q > 0.0 && q < 1.0)) throw DomainError("degenerate poverty line");

    AsymptoticKernel kernel;
    kernel.q = q;
    kernel.line = line;
    kernel.shape = index_shape(index);
    kernel.model = &model;
    kernel.m_at_q = kernel.shape.L(q, q) * kernel.shape.d.at_zero();
    return kernel;
}

GaussianFunctional functional_for(const AsymptoticKernel& kernel) {
    const dist::Model* model = kernel.model;
    const double q = kernel.q;
    const double line = kernel.line;
    const IndexShape shape = kernel.shape;

    GaussianFunctional f;
    f.q = q;
    f.line = line;
    f.y0 = model->lower_endpoint();
    f.has_density = kernel.has_density();
    f.grade = grade_for_exponent(shape.min_exponent);
    f.s_of = [model](double y) { return model->cdf(y); };
    if (f.has_density) {
        f.psi_y = [model, shape, q, line](double y, double gap) {
            return shape.L(q, model->cdf(y)) * shape.d.deriv(gap / line);
        };
    }

    double mu = 0.0;
    if (shape.gamma) {
        // gamma may diverge at s = q, but gamma * d(Delta) stays integrable;
        // s is nudged off q so isolated evaluations cannot overflow.
        mu = income_integral(
            [&](double y, double gap) {
                const double s = std::min(model->cdf(y), q * (1.0 - 1e-15));
                return shape.gamma(q, s) * shape.d(gap / line) * model->density(y);
            },
            f.y0, line, f.grade, kTol1d);
    }
    f.atom = kernel.m_at_q + mu;
    return f;
}

double covariance(const GaussianFunctional& f1, const GaussianFunctional& f2,
                  double q, CrossTermScaling scaling) {
    if (std::fabs(f1.line - f2.line) > 0.0)
        throw InvalidArgument("functionals must share the poverty line");
    const double z = f1.line;
    const double y0 = std::min(f1.y0, f2.y0);
    const double factor = scaling == CrossTermScaling::bridge_exact ? 1.0 - q : 1.0;
    const int grade = std::max(f1.grade, f2.grade);

    double cov = f1.atom * f2.atom * q * (1.0 - q);
    if (f1.has_density && f2.has_density) {
        cov += income_integral2(
                   [&](double x, double gap_x, double y, double gap_y) {
                       const double su = f1.s_of(x);
                       const double sv = f2.s_of(y);
                       return f1.psi_y(x, gap_x) * f2.psi_y(y, gap_y) *
                              (std::min(su, sv) - su * sv);
                   },
                   y0, z, grade, kTol2d) /
               (z * z);
    }
    if (f1.has_density && f2.atom != 0.0)
        cov += factor * f2.atom / z *
               income_integral(
                   [&](double y, double gap) { return f1.s_of(y) * f1.psi_y(y, gap); },
                   f1.y0, z, grade, kTol1d);
    if (f2.has_density && f1.atom != 0.0)
        cov += factor * f1.atom / z *
               income_integral(
                   [&](double y, double gap) { return f2.s_of(y) * f2.psi_y(y, gap); },
                   f2.y0, z, grade, kTol1d);
    return cov;
}

namespace {

GaussianFunctional headcount_functional(const dist::Model& model, double q, double line) {
    GaussianFunctional f;
    f.q = q;
    f.line = line;
    f.y0 = model.lower_endpoint();
    f.s_of = [&model](double y) { return model.cdf(y); };
    f.has_density = false;
    f.atom = 1.0;
    return f;
}

/// Int_0^q Delta(s)^alpha ds, the population FGT(alpha).
double gap_moment(const dist::Model& model, double line, double alpha) {
    return income_integral(
        [&](double y, double gap) {
            return std::pow(gap / line, alpha) * model.density(y);
        },
        model.lower_endpoint(), line, grade_for_exponent(std::min(alpha, 1.0)), kTol1d);
}

LimitLaw direct_law(const IndexId& index, const dist::Model& model, double line,
                    CrossTermScaling scaling) {
    const AsymptoticKernel kernel = kernel_for(index, model, line);
    const double q = kernel.q;
    const auto& shape = kernel.shape;
    const double D = income_integral(
        [&](double y, double gap) {
            return shape.L(q, model.cdf(y)) * shape.d(gap / line) * model.density(y);
        },
        model.lower_endpoint(), line, grade_for_exponent(shape.min_exponent), kTol1d);
    const GaussianFunctional f = functional_for(kernel);
    const double variance = covariance(f, f, q, scaling);
    return LimitLaw{D, variance, D, variance};
}

LimitLaw chu_law(const IndexId& index, const dist::Model& model, double line,
                 CrossTermScaling scaling) {
    const double alpha = index.alpha;
    const AsymptoticKernel fgt_kernel = kernel_for(IndexId::fgt(alpha), model, line);
    const double q = fgt_kernel.q;
    const double C = gap_moment(model, line, alpha);
    const double J = std::pow(q, alpha - 1.0) * C;
    if (!(J > 0.0)) throw DomainError("delta method undefined at D<=0");

    const GaussianFunctional head = headcount_functional(model, q, line);
    const GaussianFunctional fgt = functional_for(fgt_kernel);
    const std::array<double, 2> grad{(alpha - 1.0) * std::pow(q, alpha - 2.0) * C,
                                     std::pow(q, alpha - 1.0)};
    const double v_hh = covariance(head, head, q, scaling);
    const double v_hf = covariance(head, fgt, q, scaling);
    const double v_ff = covariance(fgt, fgt, q, scaling);
    const double variance =
        grad[0] * grad[0] * v_hh + 2.0 * grad[0] * grad[1] * v_hf + grad[1] * grad[1] * v_ff;

    const double center = std::pow(J, 1.0 / alpha);
    const double dprime = (1.0 / alpha) * std::pow(J, 1.0 / alpha - 1.0);
    return LimitLaw{J, variance, center, variance * dprime * dprime};
}

LimitLaw ray_law(const IndexId& index, const dist::Model& model, double line,
                 CrossTermScaling scaling) {
    const double alpha = index.alpha;
    const AsymptoticKernel k1 = kernel_for(IndexId::fgt(1.0), model, line);
    const AsymptoticKernel ka = kernel_for(IndexId::fgt(alpha), model, line);
    const double q = k1.q;
    const double K = gap_moment(model, line, 1.0); // population mean gap ratio
    const double C = gap_moment(model, line, alpha);
    if (!(K > 0.0 && C > 0.0)) throw DomainError("delta method undefined at D<=0");

    // center phi(q, K, C) = (K/q)^(1-alpha) * C and its gradient
    const double phi = std::pow(K / q, 1.0 - alpha) * C;
    const std::array<double, 3> grad{
        (alpha - 1.0) * std::pow(K, 1.0 - alpha) * std::pow(q, alpha - 2.0) * C,
        (1.0 - alpha) * std::pow(K, -alpha) * std::pow(q, alpha - 1.0) * C,
        std::pow(K / q, 1.0 - alpha)};

    const GaussianFunctional head = headcount_functional(model, q, line);
    const GaussianFunctional f1 = functional_for(k1);
    const GaussianFunctional fa = functional_for(ka);
    const std::array<const GaussianFunctional*, 3> fs{&head, &f1, &fa};
    double sigma[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j)
            sigma[i][j] = sigma[j][i] = covariance(*fs[i], *fs[j], q, scaling);
    double variance = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) variance += grad[i] * grad[j] * sigma[i][j];
    return LimitLaw{phi, variance, phi, variance};
}

} // namespace

LimitLaw limit_law(const IndexId& index, const dist::Model& model, double line,
                   CrossTermScaling scaling) {
    switch (index.family) {
    case IndexFamily::headcount:
    case IndexFamily::fgt:
    case IndexFamily::sen:
    case IndexFamily::kakwani:
    case IndexFamily::shorrocks:
    case IndexFamily::thon:
        return direct_law(index, model, line, scaling);
    case IndexFamily::chu:
        return chu_law(index, model, line, scaling);
    case IndexFamily::ray:
        return ray_law(index, model, line, scaling);
    default:
        throw DomainError("no limit law in the catalogue for " + index.name());
    }
}

} // namespace povkit::asymp
