#include "povkit/kernels.hpp"
#include "povkit/errors.hpp"

#include <atomic>
#include <cmath>

namespace povkit::kern {

namespace scalar {

double sum(std::span<const double> x) {
    double acc = 0.0;
    for (double v : x) acc += v;
    return acc;
}

double sum_sq_dev(std::span<const double> x, double center) {
    double acc = 0.0;
    for (double v : x) {
        const double d = v - center;
        acc += d * d;
    }
    return acc;
}

double gap_power_sum(std::span<const double> poor, double line, double alpha) {
    const double inv = 1.0 / line;
    double acc = 0.0;
    const int ia = static_cast<int>(alpha);
    if (alpha == static_cast<double>(ia) && ia >= 0 && ia <= 4) {
        switch (ia) {
        case 0:
            return static_cast<double>(poor.size());
        case 1:
            for (double y : poor) acc += (line - y) * inv;
            return acc;
        case 2:
            for (double y : poor) {
                const double g = (line - y) * inv;
                acc += g * g;
            }
            return acc;
        case 3:
            for (double y : poor) {
                const double g = (line - y) * inv;
                acc += g * g * g;
            }
            return acc;
        default:
            for (double y : poor) {
                const double g = (line - y) * inv;
                const double g2 = g * g;
                acc += g2 * g2;
            }
            return acc;
        }
    }
    for (double y : poor) acc += std::pow((line - y) * inv, alpha);
    return acc;
}

double affine_weighted_gap_sum(std::span<const double> poor, double line,
                               double c0, double c1) {
    const double inv = 1.0 / line;
    double acc = 0.0;
    for (std::size_t i = 0; i < poor.size(); ++i) {
        const double w = c0 + c1 * static_cast<double>(i + 1);
        acc += w * (line - poor[i]) * inv;
    }
    return acc;
}

} // namespace scalar

namespace {

struct Vtable {
    double (*sum)(std::span<const double>);
    double (*sum_sq_dev)(std::span<const double>, double);
    double (*gap_power_sum)(std::span<const double>, double, double);
    double (*affine_weighted_gap_sum)(std::span<const double>, double, double, double);
};

constexpr Vtable kScalar{scalar::sum, scalar::sum_sq_dev, scalar::gap_power_sum,
                         scalar::affine_weighted_gap_sum};

#if defined(__x86_64__) && defined(POVKIT_HAVE_AVX2_TU)
constexpr Vtable kAvx2{avx2::sum, avx2::sum_sq_dev, avx2::gap_power_sum,
                       avx2::affine_weighted_gap_sum};
#endif

bool cpu_has_avx2() {
#if defined(__x86_64__) && defined(POVKIT_HAVE_AVX2_TU)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

std::atomic<const Vtable*> g_active{nullptr};
std::atomic<Backend> g_backend{Backend::scalar};

const Vtable* init_dispatch() {
#if defined(__x86_64__) && defined(POVKIT_HAVE_AVX2_TU)
    if (cpu_has_avx2()) {
        g_backend.store(Backend::avx2);
        g_active.store(&kAvx2);
        return &kAvx2;
    }
#endif
    g_backend.store(Backend::scalar);
    g_active.store(&kScalar);
    return &kScalar;
}

inline const Vtable& table() {
    const Vtable* t = g_active.load(std::memory_order_relaxed);
    return t ? *t : *init_dispatch();
}

} // namespace

Backend active_backend() {
    table();
    return g_backend.load(std::memory_order_relaxed);
}

bool backend_available(Backend b) {
    return b == Backend::scalar || (b == Backend::avx2 && cpu_has_avx2());
}

void set_backend(Backend b) {
    if (!backend_available(b))
        throw InvalidArgument("kernel backend not available on this CPU/build");
    switch (b) {
    case Backend::scalar:
        g_active.store(&kScalar);
        break;
    case Backend::avx2:
#if defined(__x86_64__) && defined(POVKIT_HAVE_AVX2_TU)
        g_active.store(&kAvx2);
        break;
#else
        throw InvalidArgument("kernel backend not available on this CPU/build");
#endif
    }
    g_backend.store(b);
}

double sum(std::span<const double> x) { return table().sum(x); }

double sum_sq_dev(std::span<const double> x, double center) {
    return table().sum_sq_dev(x, center);
}

double gap_power_sum(std::span<const double> poor, double line, double alpha) {
    return table().gap_power_sum(poor, line, alpha);
}

double affine_weighted_gap_sum(std::span<const double> poor, double line,
                               double c0, double c1) {
    return table().affine_weighted_gap_sum(poor, line, c0, c1);
}

} // namespace povkit::kern
