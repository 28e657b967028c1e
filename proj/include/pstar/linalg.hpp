#pragma once

#include <vector>

#include "pstar/types.hpp"

namespace pstar {

/// Largest singular value; 0 for an empty matrix.
double operator_norm(const Matrix& m);

double frobenius_norm(const Matrix& m);

/// Rank after thresholding singular values at tol * max(1, sigma_max).
int rank_of(const Matrix& m, double tol);

/// Orthonormal basis of the column span (k x r, r = rank).
Matrix orthonormal_span(const Matrix& m, double tol);

/// Orthonormal basis of the null space (n x (n - r)).
Matrix nullspace(const Matrix& m, double tol);

/// Moore-Penrose pseudoinverse with singular values below
/// tol * max(1, sigma_max) treated as zero.
Matrix pseudo_inverse(const Matrix& m, double tol);

/// Max residual of projecting columns of `sub` onto the column span of
/// `space` (0 when colspan(sub) is contained in colspan(space)).
double containment_residual(const Matrix& sub, const Matrix& space, double tol);

bool span_contains(const Matrix& space, const Matrix& sub, double tol);

/// True when the two column spans coincide.
bool same_span(const Matrix& a, const Matrix& b, double tol);

Matrix kronecker(const Matrix& a, const Matrix& b);

/// Column-stack of a matrix (column-major vec).
Vector vec(const Matrix& m);

Matrix unvec(const Vector& v, int rows, int cols);

double max_abs(const Matrix& m);

}  // namespace pstar
