#ifndef POVKIT_ASYMPTOTICS_HPP
#define POVKIT_ASYMPTOTICS_HPP

#include "povkit/distributions.hpp"
#include "povkit/sample.hpp"

#include <functional>

// Normal limit laws of the poverty indices. For an index with limit weight
// L, weight-fluctuation coefficient gamma, and gap deformation d, the scaled
// statistic sqrt(n)(J_n - D) converges to the Gaussian functional
//
//     (1/Z) Int_0^q psi(s) B(s) ds + b * B(q),
//
// where B is a Brownian bridge, q = G(Z), psi = L * h with
// h(s) = a(s) d'(Delta(s)), and the atom is b = L(q) d(0) + Int gamma d(Delta).
// Every variance here is a bridge covariance of two such functionals. The
// CHU and Ray indices are smooth maps of jointly Gaussian coordinates and
// get their variance by the delta method over (headcount, FGT) functionals.

namespace povkit::asymp {

/// Gap deformation d and its derivative: identity or u -> u^alpha.
struct Deform {
    bool is_identity = false;
    double alpha = 1.0;

    double operator()(double u) const;
    double deriv(double u) const;
    /// d(0): 1 for the constant deformation (alpha = 0), 0 otherwise.
    double at_zero() const;
    /// True when d' vanishes identically (alpha = 0), i.e. no density part.
    bool deriv_is_zero() const { return !is_identity && alpha == 0.0; }

    static Deform identity() { return {true, 1.0}; }
    static Deform power(double alpha) { return {false, alpha}; }
};

/// The (L, gamma, d) triple of an index family, as functions of (q, s).
/// gamma is empty when the limit weight does not fluctuate with Q/n.
/// min_exponent is the smallest positive exponent of the (q-s) factors in
/// h and gamma; exponents below one make the integrands singular at q and
/// drive the graded substitution s = q - t^m used by the quadratures.
struct IndexShape {
    std::function<double(double q, double s)> L;
    std::function<double(double q, double s)> gamma;
    Deform d;
    double min_exponent = 1.0;
};

/// Shape of a direct (non-composed) index: headcount/fgt/sen/kakwani/
/// shorrocks/thon. Throws DomainError for indices without a catalogued law.
IndexShape index_shape(const IndexId& index);

struct AsymptoticKernel {
    double q;    // G(Z), in (0,1)
    double line; // Z
    IndexShape shape;
    const dist::Model* model = nullptr;
    double m_at_q; // L(q) d(0)

    double a(double s) const { return model->quantile_density(s); }
    double deficit(double s) const { return (line - model->quantile(s)) / line; }
    double h(double s) const { return a(s) * shape.d.deriv(deficit(s)); }
    bool has_density() const { return !shape.d.deriv_is_zero(); }
};

/// The kernel references the model; it is valid for the model's lifetime.
AsymptoticKernel kernel_for(const IndexId& index, const dist::Model& model,
                            double line);

/// Limit random variable (1/Z) Int psi B ds + atom * B(q).
///
/// The density part is stored against income y = G^{-1}(s) with the exact
/// gap Z - y passed alongside: psi(s) ds = psi_y(y, gap) dy because the
/// quantile density a(s) cancels against the income density, and the
/// d'((Z-y)/Z) factor - the one that blows up as s -> q - is then computed
/// from the exact gap instead of a cancellation-prone difference.
struct GaussianFunctional {
    double q;
    double line;
    double y0 = 0.0;
    std::function<double(double y, double gap)> psi_y; // empty when !has_density
    std::function<double(double y)> s_of;              // G(y)
    bool has_density = false;
    double atom = 0.0;
    int grade = 2; // substitution order m for integrals against psi_y
};

GaussianFunctional functional_for(const AsymptoticKernel& kernel);

/// How the atom-density cross term scales. The bridge covariance
/// E[B(s)B(q)] = s(1-q) carries a (1-q) factor; `unscaled` drops it and is
/// kept only as a diagnostic, since simulation rejects it.
enum class CrossTermScaling { bridge_exact, unscaled };

/// Bridge covariance of two functionals on the same (0,q):
///   (1/Z^2) IntInt psi1 psi2 (u^v - uv) + b1 b2 q(1-q)
///   + factor/Z * [b2 Int s psi1 + b1 Int s psi2],  factor = (1-q) or 1.
double covariance(const GaussianFunctional& f1, const GaussianFunctional& f2,
                  double q, CrossTermScaling scaling = CrossTermScaling::bridge_exact);

struct LimitLaw {
    double D;                    // centering of the inner statistic J_n
    double variance;             // variance of sqrt(n)(J_n - D)
    double transformed_center;   // delta(D)
    double transformed_variance; // variance * delta'(D)^2
};

/// Limit law for fgt/sen/kakwani/shorrocks/thon (direct) and chu/ray
/// (delta-method compositions). Throws DomainError when G(Z) is not in
/// (0,1) ("degenerate poverty line") or the index has no catalogued law.
LimitLaw limit_law(const IndexId& index, const dist::Model& model, double line,
                   CrossTermScaling scaling = CrossTermScaling::bridge_exact);

} // namespace povkit::asymp

#endif
