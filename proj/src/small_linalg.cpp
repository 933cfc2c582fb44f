#include "plastiflow/small_linalg.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "plastiflow/errors.hpp"

namespace plastiflow {

void jacobi_eigen(std::vector<double> a, int m, std::vector<double>& values,
                  std::vector<double>& vectors) {
    assert(static_cast<int>(a.size()) == m * m);
    vectors.assign(static_cast<size_t>(m * m), 0.0);
    for (int i = 0; i < m; ++i) vectors[static_cast<size_t>(i * m + i)] = 1.0;

    auto off = [&]() {
        double s = 0;
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) s += a[static_cast<size_t>(i * m + j)] * a[static_cast<size_t>(i * m + j)];
        return s;
    };

    double scale = 0;
    for (double v : a) scale = std::max(scale, std::abs(v));
    const double tol = 1e-30 * std::max(1.0, scale * scale);

    for (int sweep = 0; sweep < 64 && off() > tol; ++sweep) {
        for (int p = 0; p < m; ++p) {
            for (int q = p + 1; q < m; ++q) {
                const double apq = a[static_cast<size_t>(p * m + q)];
                if (apq == 0.0) continue;
                const double app = a[static_cast<size_t>(p * m + p)];
                const double aqq = a[static_cast<size_t>(q * m + q)];
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < m; ++k) {
                    const double akp = a[static_cast<size_t>(k * m + p)];
                    const double akq = a[static_cast<size_t>(k * m + q)];
                    a[static_cast<size_t>(k * m + p)] = c * akp - s * akq;
                    a[static_cast<size_t>(k * m + q)] = s * akp + c * akq;
                }
                for (int k = 0; k < m; ++k) {
                    const double apk = a[static_cast<size_t>(p * m + k)];
                    const double aqk = a[static_cast<size_t>(q * m + k)];
                    a[static_cast<size_t>(p * m + k)] = c * apk - s * aqk;
                    a[static_cast<size_t>(q * m + k)] = s * apk + c * aqk;
                }
                for (int k = 0; k < m; ++k) {
                    const double vkp = vectors[static_cast<size_t>(k * m + p)];
                    const double vkq = vectors[static_cast<size_t>(k * m + q)];
                    vectors[static_cast<size_t>(k * m + p)] = c * vkp - s * vkq;
                    vectors[static_cast<size_t>(k * m + q)] = s * vkp + c * vkq;
                }
            }
        }
    }

    values.resize(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) values[static_cast<size_t>(i)] = a[static_cast<size_t>(i * m + i)];

    // Sort ascending, permuting eigenvector columns alongside.
    std::vector<int> order(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) order[static_cast<size_t>(i)] = i;
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return values[static_cast<size_t>(i)] < values[static_cast<size_t>(j)]; });
    std::vector<double> sv(static_cast<size_t>(m)), svec(static_cast<size_t>(m * m));
    for (int j = 0; j < m; ++j) {
        sv[static_cast<size_t>(j)] = values[static_cast<size_t>(order[static_cast<size_t>(j)])];
        for (int i = 0; i < m; ++i)
            svec[static_cast<size_t>(i * m + j)] =
                vectors[static_cast<size_t>(i * m + order[static_cast<size_t>(j)])];
    }
    values = std::move(sv);
    vectors = std::move(svec);
}

void solve_tridiagonal(const std::vector<double>& lower, const std::vector<double>& diag,
                       const std::vector<double>& upper, std::vector<double>& rhs) {
    const size_t n = diag.size();
    assert(lower.size() == n && upper.size() == n && rhs.size() == n);
    std::vector<double> c(n), d(n);
    c[0] = upper[0] / diag[0];
    d[0] = rhs[0] / diag[0];
    for (size_t i = 1; i < n; ++i) {
        const double denom = diag[i] - lower[i] * c[i - 1];
        if (denom == 0.0) throw RootFindFailure("tridiagonal solve hit a zero pivot");
        c[i] = upper[i] / denom;
        d[i] = (rhs[i] - lower[i] * d[i - 1]) / denom;
    }
    rhs[n - 1] = d[n - 1];
    for (size_t i = n - 1; i-- > 0;) rhs[i] = d[i] - c[i] * rhs[i + 1];
}

void solve_dense(std::vector<double>& a, std::vector<double>& b, int m) {
    for (int col = 0; col < m; ++col) {
        int piv = col;
        for (int r = col + 1; r < m; ++r)
            if (std::abs(a[static_cast<size_t>(r * m + col)]) > std::abs(a[static_cast<size_t>(piv * m + col)]))
                piv = r;
        if (piv != col) {
            for (int k = 0; k < m; ++k)
                std::swap(a[static_cast<size_t>(col * m + k)], a[static_cast<size_t>(piv * m + k)]);
            std::swap(b[static_cast<size_t>(col)], b[static_cast<size_t>(piv)]);
        }
        const double pivot = a[static_cast<size_t>(col * m + col)];
        if (pivot == 0.0) throw RootFindFailure("dense solve hit a zero pivot");
        for (int r = col + 1; r < m; ++r) {
            const double f = a[static_cast<size_t>(r * m + col)] / pivot;
            if (f == 0.0) continue;
            for (int k = col; k < m; ++k)
                a[static_cast<size_t>(r * m + k)] -= f * a[static_cast<size_t>(col * m + k)];
            b[static_cast<size_t>(r)] -= f * b[static_cast<size_t>(col)];
        }
    }
    for (int r = m - 1; r >= 0; --r) {
        double s = b[static_cast<size_t>(r)];
        for (int k = r + 1; k < m; ++k) s -= a[static_cast<size_t>(r * m + k)] * b[static_cast<size_t>(k)];
        b[static_cast<size_t>(r)] = s / a[static_cast<size_t>(r * m + r)];
    }
}

}  // namespace plastiflow
