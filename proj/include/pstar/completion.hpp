#pragma once

#include "pstar/seminorm.hpp"

namespace pstar {

/// D(p)/ker(p) with structure constants computed through representatives
/// chosen in span(R(A) intersect D(p)). The finite-dimensional stand-in for
/// the seminorm completion.
struct QuotientCStarAlgebra {
  int dim = 0;
  std::vector<std::string> domain;  // sector ids of D(p), in order
  /// Representative vectors in domain coordinates (domain_dim x dim), each
  /// supported on R(A)-aligned coordinates.
  Matrix representatives;
  Matrix kernel;  // domain_dim x ker_dim
  /// Coset coordinates of a domain-coordinate vector (dim x domain_dim).
  Matrix tilde_coords;
  /// Structure constants c[i](j,k): basis_i * basis_j = sum_k c[i](j,k) e_k.
  std::vector<Matrix> structure;  // dim matrices of shape dim x dim
  /// Witness image of each representative; carries the norm.
  std::vector<Matrix> witness_on_basis;
  /// Coset coordinates of star(basis_i) (star is antilinear: conjugate
  /// coordinates first, then apply this matrix).
  Matrix star_map;
  double tol = kDefaultTol;

  Vector tilde_of(const Vector& domain_coords) const;
  Vector product(const Vector& x, const Vector& y) const;
  Vector star(const Vector& x) const;
  double norm(const Vector& x) const;
  Matrix witness_of(const Vector& x) const;
};

/// Quotient construction per the completion contract. Throws
/// UnsupportedError (raw mode), PreconditionError (Property (B) or C* axioms
/// fail) or IllDefinedProductError (representative dependence above tol).
QuotientCStarAlgebra build_quotient(const PartialStarAlgebra& a,
                                    const WitnessedSeminorm& p);

/// Coset of a domain element.
Vector tilde_map(const PartialStarAlgebra& a, const WitnessedSeminorm& p,
                 const QuotientCStarAlgebra& q, const Element& x);

Element representative_element(const PartialStarAlgebra& a,
                               const QuotientCStarAlgebra& q, const Vector& coset);

/// Banach-*-algebra and C*-identity checks on the quotient.
struct BanachStarReport {
  bool pass = true;
  double max_residual = 0.0;
  std::string worst;
};
BanachStarReport verify_banach_star(const PartialStarAlgebra& a,
                                    const QuotientCStarAlgebra& q, double tol,
                                    unsigned seed = 0x0b5e55ed);

}  // namespace pstar
