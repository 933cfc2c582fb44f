#include "plastiflow/sym_matrix.hpp"

#include <cassert>
#include <cmath>

#include "plastiflow/small_linalg.hpp"

namespace plastiflow {

SymMatrix::SymMatrix(int n) : n_(n) {
    assert(n >= 1 && n <= 3);
}

SymMatrix SymMatrix::identity(int n) {
    SymMatrix m(n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1.0);
    return m;
}

SymMatrix SymMatrix::diag(std::initializer_list<double> d) {
    return diag(std::vector<double>(d));
}

SymMatrix SymMatrix::diag(const std::vector<double>& d) {
    SymMatrix m(static_cast<int>(d.size()));
    for (int i = 0; i < m.n_; ++i) m.set(i, i, d[static_cast<size_t>(i)]);
    return m;
}

int SymMatrix::index(int i, int j) const {
    assert(i >= 0 && i < n_ && j >= 0 && j < n_);
    if (i > j) std::swap(i, j);
    // Row-major upper triangle offset.
    return i * n_ - i * (i - 1) / 2 + (j - i);
}

double SymMatrix::trace() const {
    double t = 0;
    for (int i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
}

SymMatrix SymMatrix::deviatoric() const {
    SymMatrix d = *this;
    const double mean = trace() / n_;
    for (int i = 0; i < n_; ++i) d.set(i, i, (*this)(i, i) - mean);
    return d;
}

double SymMatrix::norm() const { return std::sqrt(dot(*this, *this)); }

SymMatrix& SymMatrix::operator+=(const SymMatrix& o) {
    assert(n_ == o.n_);
    for (int k = 0; k < triangle_size(); ++k) a_[static_cast<size_t>(k)] += o.a_[static_cast<size_t>(k)];
    return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& o) {
    assert(n_ == o.n_);
    for (int k = 0; k < triangle_size(); ++k) a_[static_cast<size_t>(k)] -= o.a_[static_cast<size_t>(k)];
    return *this;
}

SymMatrix& SymMatrix::operator*=(double s) {
    for (int k = 0; k < triangle_size(); ++k) a_[static_cast<size_t>(k)] *= s;
    return *this;
}

void SymMatrix::eigen(std::array<double, 3>& values,
                      std::array<std::array<double, 3>, 3>& vectors) const {
    values = {0, 0, 0};
    for (auto& row : vectors) row = {0, 0, 0};
    if (n_ == 1) {
        values[0] = (*this)(0, 0);
        vectors[0][0] = 1.0;
        return;
    }
    std::vector<double> a(static_cast<size_t>(n_ * n_));
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) a[static_cast<size_t>(i * n_ + j)] = (*this)(i, j);
    std::vector<double> vals, vecs;
    jacobi_eigen(std::move(a), n_, vals, vecs);
    for (int i = 0; i < n_; ++i) {
        values[static_cast<size_t>(i)] = vals[static_cast<size_t>(i)];
        for (int j = 0; j < n_; ++j)
            vectors[static_cast<size_t>(i)][static_cast<size_t>(j)] = vecs[static_cast<size_t>(i * n_ + j)];
    }
}

std::array<double, 3> SymMatrix::eigenvalues() const {
    std::array<double, 3> vals;
    std::array<std::array<double, 3>, 3> vecs;
    eigen(vals, vecs);
    return vals;
}

SymMatrix SymMatrix::from_eigen(int n, const std::array<double, 3>& values,
                                const std::array<std::array<double, 3>, 3>& vectors) {
    SymMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double s = 0;
            for (int k = 0; k < n; ++k)
                s += values[static_cast<size_t>(k)] * vectors[static_cast<size_t>(i)][static_cast<size_t>(k)] *
                     vectors[static_cast<size_t>(j)][static_cast<size_t>(k)];
            m.set(i, j, s);
        }
    return m;
}

double dot(const SymMatrix& a, const SymMatrix& b) {
    assert(a.dim() == b.dim());
    double s = 0;
    for (int i = 0; i < a.dim(); ++i) {
        s += a(i, i) * b(i, i);
        for (int j = i + 1; j < a.dim(); ++j) s += 2.0 * a(i, j) * b(i, j);
    }
    return s;
}

std::pair<SymMatrix, double> deviatoric_split(const SymMatrix& m) {
    return {m.deviatoric(), m.trace()};
}

int deviatoric_dim(int n) { return n * (n + 1) / 2 - 1; }

namespace {

std::vector<SymMatrix> make_deviatoric_basis(int n) {
    const double s2 = std::sqrt(2.0);
    std::vector<SymMatrix> basis;
    if (n == 2) {
        SymMatrix e1(2);
        e1.set(0, 0, 1.0 / s2);
        e1.set(1, 1, -1.0 / s2);
        SymMatrix e2(2);
        e2.set(0, 1, 1.0 / s2);
        basis = {e1, e2};
    } else if (n == 3) {
        SymMatrix e1(3);
        e1.set(0, 0, 1.0 / s2);
        e1.set(1, 1, -1.0 / s2);
        SymMatrix e2(3);
        const double s6 = std::sqrt(6.0);
        e2.set(0, 0, 1.0 / s6);
        e2.set(1, 1, 1.0 / s6);
        e2.set(2, 2, -2.0 / s6);
        SymMatrix e3(3);
        e3.set(0, 1, 1.0 / s2);
        SymMatrix e4(3);
        e4.set(0, 2, 1.0 / s2);
        SymMatrix e5(3);
        e5.set(1, 2, 1.0 / s2);
        basis = {e1, e2, e3, e4, e5};
    }
    return basis;
}

}  // namespace

const std::vector<SymMatrix>& deviatoric_basis(int n) {
    static const std::vector<SymMatrix> b2 = make_deviatoric_basis(2);
    static const std::vector<SymMatrix> b3 = make_deviatoric_basis(3);
    assert(n == 2 || n == 3);
    return n == 2 ? b2 : b3;
}

std::vector<double> to_deviatoric_coords(const SymMatrix& dev) {
    const auto& basis = deviatoric_basis(dev.dim());
    std::vector<double> c(basis.size());
    for (size_t k = 0; k < basis.size(); ++k) c[k] = dot(dev, basis[k]);
    return c;
}

SymMatrix from_deviatoric_coords(int n, const std::vector<double>& c) {
    const auto& basis = deviatoric_basis(n);
    assert(c.size() == basis.size());
    SymMatrix m(n);
    for (size_t k = 0; k < basis.size(); ++k) m += c[k] * basis[k];
    return m;
}

}  // namespace plastiflow
