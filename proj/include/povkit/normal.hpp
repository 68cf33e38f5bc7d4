#ifndef POVKIT_NORMAL_HPP
#define POVKIT_NORMAL_HPP

namespace povkit::normal {

/// Standard normal density.
double pdf(double x);

/// Standard normal CDF, accurate to machine precision via erfc.
double cdf(double x);

/// Standard normal quantile (inverse CDF). Rational approximation of
/// Wichura's AS 241 (PPND16); absolute error below 1e-15 on (1e-300, 1).
/// Throws InvalidArgument outside (0,1).
double quantile(double p);

} // namespace povkit::normal

#endif
