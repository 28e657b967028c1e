#include "pstar/completion.hpp"

#include <random>

#include <Eigen/QR>

#include "pstar/linalg.hpp"

namespace pstar {

Vector QuotientCStarAlgebra::tilde_of(const Vector& domain_coords) const {
  return tilde_coords * domain_coords;
}

Vector QuotientCStarAlgebra::product(const Vector& x, const Vector& y) const {
  Vector out = Vector::Zero(dim);
  for (int i = 0; i < dim; ++i)
    if (x(i) != Complex(0, 0)) out += x(i) * (structure[i].transpose() * y);
  return out;
}

Vector QuotientCStarAlgebra::star(const Vector& x) const {
  return star_map * x.conjugate();
}

Matrix QuotientCStarAlgebra::witness_of(const Vector& x) const {
  if (dim == 0) return Matrix(0, 0);
  Matrix out = Matrix::Zero(witness_on_basis[0].rows(), witness_on_basis[0].cols());
  for (int i = 0; i < dim; ++i) out += x(i) * witness_on_basis[i];
  return out;
}

double QuotientCStarAlgebra::norm(const Vector& x) const {
  return operator_norm(witness_of(x));
}

namespace {

/// Pivot columns of candidates modulo the kernel, in the order chosen by a
/// column-pivoted QR of the kernel-orthogonal projections.
std::vector<int> pivot_columns_mod_kernel(const Matrix& candidates,
                                          const Matrix& kernel, int want,
                                          double tol) {
  Matrix proj = candidates;
  if (kernel.cols() > 0) proj -= kernel * (kernel.adjoint() * candidates);
  Eigen::ColPivHouseholderQR<Matrix> qr(proj);
  qr.setThreshold(tol);
  const int r = static_cast<int>(qr.rank());
  if (r < want)
    throw PreconditionError(
        "representatives: span(R(A) cap D(p)) does not cover D(p) mod ker(p)");
  std::vector<int> cols(want);
  for (int i = 0; i < want; ++i)
    cols[i] = qr.colsPermutation().indices()(i);
  std::sort(cols.begin(), cols.end());
  return cols;
}

}  // namespace

QuotientCStarAlgebra build_quotient(const PartialStarAlgebra& a,
                                    const WitnessedSeminorm& p) {
  if (p.mode == WitnessedSeminorm::Mode::Raw)
    throw UnsupportedError(
        "no concrete completion available for a raw-mode seminorm");
  const double tol = a.tol();
  auto valid = validate_seminorm(a, p, tol);
  if (!valid.ok())
    throw PreconditionError("seminorm fails witness validation: " + valid.detail);
  auto pb = check_property_B(a, p, tol);
  if (!pb.pass)
    throw PreconditionError("Property (B) fails with codimension " +
                            std::to_string(pb.codimension));

  QuotientCStarAlgebra q;
  q.domain = p.domain;
  q.tol = tol;
  const int d = p.domain_dim(a);
  q.kernel = seminorm_kernel(a, p, Tolerances{}.rank_rel);
  q.dim = d - static_cast<int>(q.kernel.cols());

  // Candidate representatives: indicator columns of R(A)-aligned coordinates.
  std::set<std::string> rset;
  for (const auto& s : a.universal_right_multipliers()) rset.insert(s);
  std::vector<int> r_coords;
  int at = 0;
  for (const auto& s : p.domain) {
    for (int i = 0; i < a.sector(s).dim; ++i, ++at)
      if (rset.count(s)) r_coords.push_back(at);
  }
  Matrix cand = Matrix::Zero(d, r_coords.size());
  for (size_t c = 0; c < r_coords.size(); ++c) cand(r_coords[c], c) = 1.0;

  if (q.dim > 0) {
    auto cols = pivot_columns_mod_kernel(cand, q.kernel, q.dim,
                                         Tolerances{}.rank_rel);
    q.representatives = Matrix::Zero(d, q.dim);
    for (int j = 0; j < q.dim; ++j)
      q.representatives(r_coords[cols[j]], j) = 1.0;
  } else {
    q.representatives = Matrix(d, 0);
  }

  // tilde: coordinates along representatives modulo the kernel.
  Matrix proj_reps = q.representatives;
  if (q.kernel.cols() > 0)
    proj_reps -= q.kernel * (q.kernel.adjoint() * q.representatives);
  Matrix pinv = pseudo_inverse(proj_reps, Tolerances{}.rank_rel);
  Matrix projector = Matrix::Identity(d, d);
  if (q.kernel.cols() > 0) projector -= q.kernel * q.kernel.adjoint();
  q.tilde_coords = pinv * projector;

  // Structure constants through representative products.
  q.structure.assign(q.dim, Matrix::Zero(q.dim, q.dim));
  std::vector<Element> reps;
  for (int j = 0; j < q.dim; ++j)
    reps.push_back(a.from_coords(q.representatives.col(j), p.domain));
  for (int i = 0; i < q.dim; ++i)
    for (int j = 0; j < q.dim; ++j) {
      auto prod = a.multiply(reps[i], reps[j]);
      if (!prod)
        throw PreconditionError("representative product undefined");
      Vector c = q.tilde_of(a.coords(*prod, p.domain));
      q.structure[i].row(j) = c.transpose();
    }

  q.witness_on_basis.clear();
  for (int j = 0; j < q.dim; ++j)
    q.witness_on_basis.push_back(p.witness_of(a, reps[j]));

  q.star_map = Matrix::Zero(q.dim, q.dim);
  for (int j = 0; j < q.dim; ++j) {
    Element st = a.star(reps[j]);
    q.star_map.col(j) = q.tilde_of(a.coords(st, p.domain));
  }

  // Independence of the product from the representative choice: redo the
  // pivoting over reversed candidates and compare the induced products.
  if (q.dim > 0) {
    Matrix cand_rev(d, cand.cols());
    for (int c = 0; c < cand.cols(); ++c)
      cand_rev.col(c) = cand.col(cand.cols() - 1 - c);
    auto cols2 = pivot_columns_mod_kernel(cand_rev, q.kernel, q.dim,
                                          Tolerances{}.rank_rel);
    Matrix reps2 = Matrix::Zero(d, q.dim);
    for (int j = 0; j < q.dim; ++j) {
      int orig = static_cast<int>(cand.cols()) - 1 - cols2[j];
      reps2(r_coords[orig], j) = 1.0;
    }
    Matrix t2 = q.tilde_coords * reps2;  // q x q, invertible by construction
    Matrix lift2 = reps2 * t2.inverse();
    double worst = 0.0;
    for (int i = 0; i < q.dim; ++i)
      for (int j = 0; j < q.dim; ++j) {
        Element xi = a.from_coords(lift2.col(i), p.domain);
        Element xj = a.from_coords(lift2.col(j), p.domain);
        auto prod = a.multiply(xi, xj);
        if (!prod) throw PreconditionError("representative product undefined");
        Vector c2 = q.tilde_of(a.coords(*prod, p.domain));
        Vector c1 = q.structure[i].row(j).transpose();
        worst = std::max(worst, (c2 - c1).cwiseAbs().maxCoeff());
      }
    if (worst > tol)
      throw IllDefinedProductError(
          "quotient product depends on representative choice, residual " +
          std::to_string(worst));
  }
  return q;
}

Vector tilde_map(const PartialStarAlgebra& a, const WitnessedSeminorm& p,
                 const QuotientCStarAlgebra& q, const Element& x) {
  if (!p.in_domain(a, x)) throw DomainError("tilde_map: element outside D(p)");
  return q.tilde_of(a.coords(x, p.domain));
}

Element representative_element(const PartialStarAlgebra& a,
                               const QuotientCStarAlgebra& q,
                               const Vector& coset) {
  return a.from_coords(q.representatives * coset, q.domain);
}

BanachStarReport verify_banach_star(const PartialStarAlgebra& a,
                                    const QuotientCStarAlgebra& q, double tol,
                                    unsigned seed) {
  (void)a;
  BanachStarReport rep;
  auto track = [&](double r, const std::string& what) {
    if (r > rep.max_residual) {
      rep.max_residual = r;
      rep.worst = what;
    }
  };
  const int n = q.dim;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<Vector> samples;
  for (int i = 0; i < n; ++i) samples.push_back(Vector::Unit(n, i));
  for (int s = 0; s < 12; ++s) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = Complex(dist(rng), dist(rng));
    samples.push_back(v);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vector ei = Vector::Unit(n, i), ej = Vector::Unit(n, j);
      // (AB)* = B*A*
      Vector lhs = q.star(q.product(ei, ej));
      Vector rhs = q.product(q.star(ej), q.star(ei));
      track((lhs - rhs).cwiseAbs().maxCoeff(),
            "(AB)*=B*A* at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      for (int k = 0; k < n; ++k) {
        Vector ek = Vector::Unit(n, k);
        Vector l = q.product(q.product(ei, ej), ek);
        Vector r = q.product(ei, q.product(ej, ek));
        track((l - r).cwiseAbs().maxCoeff(),
              "associativity at (" + std::to_string(i) + "," +
                  std::to_string(j) + "," + std::to_string(k) + ")");
      }
    }
  for (const Vector& x : samples) {
    const double nx = q.norm(x);
    track(std::abs(q.norm(q.star(x)) - nx) / std::max(1.0, nx), "||A*||=||A||");
    double c = q.norm(q.product(q.star(x), x));
    track(std::abs(c - nx * nx) / std::max(1.0, nx * nx), "||A*A||=||A||^2");
    for (const Vector& y : samples) {
      double over = q.norm(q.product(x, y)) - nx * q.norm(y);
      if (over > 0) track(over / std::max(1.0, nx * q.norm(y)), "||AB||<=||A||||B||");
    }
  }
  rep.pass = rep.max_residual <= tol;
  return rep;
}

}  // namespace pstar
