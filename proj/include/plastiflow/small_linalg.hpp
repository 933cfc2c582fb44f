#pragma once

#include <vector>

namespace plastiflow {

// Cyclic Jacobi eigensolver for small dense symmetric matrices (m <= 8).
// `a` is row-major m x m and is destroyed. Eigenvalues come back ascending,
// `vectors` row-major with column j the j-th eigenvector.
void jacobi_eigen(std::vector<double> a, int m, std::vector<double>& values,
                  std::vector<double>& vectors);

// Thomas solve of a tridiagonal system; diagonals (lower, diag, upper) of
// length nx (lower[0] and upper[nx-1] unused). Overwrites rhs with the solution.
void solve_tridiagonal(const std::vector<double>& lower, const std::vector<double>& diag,
                       const std::vector<double>& upper, std::vector<double>& rhs);

// Gaussian elimination with partial pivoting for tiny dense systems (m <= 4).
// a row-major, both a and b are destroyed; solution returned in b.
void solve_dense(std::vector<double>& a, std::vector<double>& b, int m);

}  // namespace plastiflow
