#include "pstar/linalg.hpp"

#include <Eigen/SVD>

namespace pstar {

namespace {

Eigen::JacobiSVD<Matrix> svd_of(const Matrix& m, unsigned options = 0) {
  return Eigen::JacobiSVD<Matrix>(m, options);
}

int rank_from_svs(const RealVector& sv, double tol) {
  if (sv.size() == 0) return 0;
  const double cut = tol * std::max(1.0, sv(0));
  int r = 0;
  while (r < sv.size() && sv(r) > cut) ++r;
  return r;
}

}  // namespace

double operator_norm(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  return svd_of(m).singularValues()(0);
}

double frobenius_norm(const Matrix& m) { return m.norm(); }

int rank_of(const Matrix& m, double tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return rank_from_svs(svd_of(m).singularValues(), tol);
}

Matrix orthonormal_span(const Matrix& m, double tol) {
  if (m.rows() == 0 || m.cols() == 0) return Matrix(m.rows(), 0);
  auto svd = svd_of(m, Eigen::ComputeThinU);
  const int r = rank_from_svs(svd.singularValues(), tol);
  return svd.matrixU().leftCols(r);
}

Matrix nullspace(const Matrix& m, double tol) {
  if (m.cols() == 0) return Matrix(0, 0);
  if (m.rows() == 0) return Matrix::Identity(m.cols(), m.cols());
  auto svd = svd_of(m, Eigen::ComputeFullV);
  const int r = rank_from_svs(svd.singularValues(), tol);
  return svd.matrixV().rightCols(m.cols() - r);
}

Matrix pseudo_inverse(const Matrix& m, double tol) {
  if (m.rows() == 0 || m.cols() == 0) return Matrix(m.cols(), m.rows());
  auto svd = svd_of(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& sv = svd.singularValues();
  const int r = rank_from_svs(sv, tol);
  Matrix inv = Matrix::Zero(m.cols(), m.rows());
  if (r == 0) return inv;
  Matrix u = svd.matrixU().leftCols(r);
  Matrix v = svd.matrixV().leftCols(r);
  return v * sv.head(r).cwiseInverse().asDiagonal() * u.adjoint();
}

double containment_residual(const Matrix& sub, const Matrix& space,
                            double tol) {
  if (sub.cols() == 0) return 0.0;
  Matrix basis = orthonormal_span(space, tol);
  double worst = 0.0;
  for (int c = 0; c < sub.cols(); ++c) {
    Vector v = sub.col(c);
    const double scale = std::max(1.0, v.norm());
    Vector resid = v - basis * (basis.adjoint() * v);
    worst = std::max(worst, resid.norm() / scale);
  }
  return worst;
}

bool span_contains(const Matrix& space, const Matrix& sub, double tol) {
  return containment_residual(sub, space, tol) <= tol * 1e2;
}

bool same_span(const Matrix& a, const Matrix& b, double tol) {
  return span_contains(a, b, tol) && span_contains(b, a, tol);
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector vec(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix unvec(const Vector& v, int rows, int cols) {
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

double max_abs(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

}  // namespace pstar
