#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

namespace plastiflow {

// Symmetric n x n matrix (n = 1, 2 or 3) storing only the upper triangle.
// Entries are ordered row-major along the triangle, e.g. for n = 3:
// (0,0) (0,1) (0,2) (1,1) (1,2) (2,2).
class SymMatrix {
  public:
    explicit SymMatrix(int n);

    static SymMatrix zero(int n) { return SymMatrix(n); }
    static SymMatrix identity(int n);
    static SymMatrix diag(std::initializer_list<double> d);
    static SymMatrix diag(const std::vector<double>& d);

    int dim() const { return n_; }
    int triangle_size() const { return n_ * (n_ + 1) / 2; }

    double operator()(int i, int j) const { return a_[index(i, j)]; }
    void set(int i, int j, double v) { a_[index(i, j)] = v; }

    double trace() const;
    SymMatrix deviatoric() const;

    double norm() const;  // Frobenius

    SymMatrix& operator+=(const SymMatrix& o);
    SymMatrix& operator-=(const SymMatrix& o);
    SymMatrix& operator*=(double s);

    friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
    friend SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
    friend SymMatrix operator*(SymMatrix a, double s) { return a *= s; }
    friend SymMatrix operator*(double s, SymMatrix a) { return a *= s; }

    // Eigenvalues ascending, columns of `vectors` are the matching eigenvectors.
    void eigen(std::array<double, 3>& values, std::array<std::array<double, 3>, 3>& vectors) const;
    std::array<double, 3> eigenvalues() const;

    // Rebuild U diag(lam) U^T from an eigen frame.
    static SymMatrix from_eigen(int n, const std::array<double, 3>& values,
                                const std::array<std::array<double, 3>, 3>& vectors);

  private:
    int index(int i, int j) const;

    int n_;
    std::array<double, 6> a_{};
};

// Frobenius inner product tr(a b).
double dot(const SymMatrix& a, const SymMatrix& b);

// m = dev + (trace/n) Id with tr(dev) = 0.
std::pair<SymMatrix, double> deviatoric_split(const SymMatrix& m);

// Orthonormal basis of the trace-free subspace of n x n symmetric matrices
// (dimension n(n+1)/2 - 1).
const std::vector<SymMatrix>& deviatoric_basis(int n);
int deviatoric_dim(int n);

std::vector<double> to_deviatoric_coords(const SymMatrix& dev);
SymMatrix from_deviatoric_coords(int n, const std::vector<double>& c);

}  // namespace plastiflow
