#include "plastiflow/kernels.hpp"

#include <cassert>
#include <cstddef>

namespace plastiflow {
namespace kernels {

namespace {

inline double derivative_at(std::span<const double> f, std::ptrdiff_t i, double dx,
                            std::ptrdiff_t n) {
    if (i == 0) return (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * dx);
    if (i == n - 1)
        return (3.0 * f[static_cast<size_t>(n - 1)] - 4.0 * f[static_cast<size_t>(n - 2)] +
                f[static_cast<size_t>(n - 3)]) /
               (2.0 * dx);
    return (f[static_cast<size_t>(i + 1)] - f[static_cast<size_t>(i - 1)]) / (2.0 * dx);
}

}  // namespace

void derivative_serial(std::span<const double> in, std::span<double> out, double dx) {
    const auto n = static_cast<std::ptrdiff_t>(in.size());
    assert(n >= 3 && out.size() == in.size());
    for (std::ptrdiff_t i = 0; i < n; ++i) out[static_cast<size_t>(i)] = derivative_at(in, i, dx, n);
}

void derivative_omp(std::span<const double> in, std::span<double> out, double dx) {
    const auto n = static_cast<std::ptrdiff_t>(in.size());
    assert(n >= 3 && out.size() == in.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[static_cast<size_t>(i)] = derivative_at(in, i, dx, n);
}

void axpy_scaled_serial(std::span<const double> sigma, std::span<const double> dv, double coeff,
                        std::span<double> out) {
    const auto n = static_cast<std::ptrdiff_t>(sigma.size());
    for (std::ptrdiff_t i = 0; i < n; ++i)
        out[static_cast<size_t>(i)] = sigma[static_cast<size_t>(i)] + coeff * dv[static_cast<size_t>(i)];
}

void axpy_scaled_omp(std::span<const double> sigma, std::span<const double> dv, double coeff,
                     std::span<double> out) {
    const auto n = static_cast<std::ptrdiff_t>(sigma.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        out[static_cast<size_t>(i)] = sigma[static_cast<size_t>(i)] + coeff * dv[static_cast<size_t>(i)];
}

void relax_sweep_serial(std::span<double> sigma, std::span<double> dp, const Potential& pot,
                        double tau, double compliance) {
    const auto n = static_cast<std::ptrdiff_t>(sigma.size());
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const double star = sigma[static_cast<size_t>(i)];
        const double relaxed = pot.relax(star, tau);
        sigma[static_cast<size_t>(i)] = relaxed;
        dp[static_cast<size_t>(i)] = compliance * (star - relaxed);
    }
}

void relax_sweep_omp(std::span<double> sigma, std::span<double> dp, const Potential& pot,
                     double tau, double compliance) {
    const auto n = static_cast<std::ptrdiff_t>(sigma.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const double star = sigma[static_cast<size_t>(i)];
        const double relaxed = pot.relax(star, tau);
        sigma[static_cast<size_t>(i)] = relaxed;
        dp[static_cast<size_t>(i)] = compliance * (star - relaxed);
    }
}

}  // namespace kernels
}  // namespace plastiflow
