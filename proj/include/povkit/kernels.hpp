#ifndef POVKIT_KERNELS_HPP
#define POVKIT_KERNELS_HPP

#include <cstddef>
#include <span>

// Data-parallel inner loops of the index computations. Each kernel has a
// scalar reference implementation and an AVX2 variant; the top-level entry
// points dispatch through function pointers selected at startup from CPU
// capabilities. The two backends reassociate sums differently, so results
// agree to rounding, not bitwise; equivalence tests pin the tolerance.

namespace povkit::kern {

enum class Backend { scalar, avx2 };

/// Backend currently used by the dispatched entry points.
Backend active_backend();

/// True if `b` can run on this CPU/build.
bool backend_available(Backend b);

/// Force a backend (for tests and debugging). Throws InvalidArgument if the
/// backend is not available. Not safe to call concurrently with kernel use.
void set_backend(Backend b);

// Dispatched entry points -----------------------------------------------

/// Sum of all elements.
double sum(std::span<const double> x);

/// Sum of squared deviations from `center`.
double sum_sq_dev(std::span<const double> x, double center);

/// Sum of ((line - y)/line)^alpha over `poor`; alpha >= 0. The integer
/// exponents 0..4 take a multiply-only path, other exponents go through pow.
double gap_power_sum(std::span<const double> poor, double line, double alpha);

/// Sum of (c0 + c1*j) * (line - poor[j-1])/line for j = 1..Q. Covers every
/// rank weight that is affine in j (Sen, Shorrocks, Thon, Kakwani k=1).
double affine_weighted_gap_sum(std::span<const double> poor, double line,
                               double c0, double c1);

// Reference implementations ---------------------------------------------

namespace scalar {
double sum(std::span<const double> x);
double sum_sq_dev(std::span<const double> x, double center);
double gap_power_sum(std::span<const double> poor, double line, double alpha);
double affine_weighted_gap_sum(std::span<const double> poor, double line,
                               double c0, double c1);
} // namespace scalar

#ifdef __x86_64__
namespace avx2 {
double sum(std::span<const double> x);
double sum_sq_dev(std::span<const double> x, double center);
double gap_power_sum(std::span<const double> poor, double line, double alpha);
double affine_weighted_gap_sum(std::span<const double> poor, double line,
                               double c0, double c1);
} // namespace avx2
#endif

} // namespace povkit::kern

#endif
