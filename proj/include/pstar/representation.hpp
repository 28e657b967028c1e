#pragma once

#include "pstar/completion.hpp"

namespace pstar {

/// A *-representation of the quotient C*-algebra on a finite Hilbert space:
/// one matrix per quotient basis element.
struct ConcreteRep {
  int hilbert_dim = 0;
  std::vector<Matrix> assign;  // per quotient basis element
  bool faithful = false;

  Matrix of(const Vector& coset) const;
};

/// The canonical faithful representation carried by the witness.
ConcreteRep witness_rep(const QuotientCStarAlgebra& q);

/// An explicitly supplied representation (alternative witness matrices per
/// domain basis element); validated to be a faithful *-representation before
/// use.
ConcreteRep supplied_rep(const PartialStarAlgebra& a, const WitnessedSeminorm& p,
                         const QuotientCStarAlgebra& q,
                         const std::map<std::string, std::vector<Matrix>>& mats,
                         int dim, double tol);

/// Residual of the *-homomorphism identities of `rep` over the quotient.
double rep_residual(const QuotientCStarAlgebra& q, const ConcreteRep& rep);

/// The bounded *-representation x -> Pi(tilde x) of D(p).
std::vector<Matrix> restriction_rep(const PartialStarAlgebra& a,
                                    const WitnessedSeminorm& p,
                                    const QuotientCStarAlgebra& q,
                                    const ConcreteRep& pi);

/// Induced quasi *-representation. Operators are square matrices in the
/// orthonormal `domain_basis` coordinates (at finite scale the closure of the
/// domain is the domain itself).
struct QuasiRep {
  Matrix domain_basis;   // ambient_dim x h, orthonormal columns
  Matrix closure_basis;  // ambient_dim x h', span of Pi(N~)H
  std::vector<Matrix> ops;  // h x h, one per algebra basis element
  int ambient_dim = 0;
  bool zero_rep = false;        // N_p was trivial
  bool square_span_equal = true;  // span Pi(N~^2)H = span Pi(N~)H
  double solve_residual = 0.0;  // worst least-squares consistency residual

  int dim() const { return static_cast<int>(domain_basis.cols()); }
  Matrix op_of(const PartialStarAlgebra& a, const Element& x) const;
  /// Operator as a map on the ambient space (zero off the domain).
  Matrix ambient_op(int global_basis) const;
};

struct InducedOptions {
  bool alt_domain = false;  // diagnostic: span{Pi(x~)xi} instead of products
  bool throw_on_inconsistent = true;
};

/// Builds pi_p from the defining relation on the product spanning set,
/// solving each operator by least squares and checking consistency.
/// Raises IllDefinedActionError when the relation is inconsistent.
QuasiRep build_induced(const PartialStarAlgebra& a, const WitnessedSeminorm& p,
                       const QuotientCStarAlgebra& q, const ConcreteRep& pi,
                       const InducedOptions& opts = {});

/// Quasi *-representation axioms: pi(a*) = pi(a)^dagger and
/// pi(ax) = pi(a) pi(x) for x in R(A)-sectors.
struct QuasiRepReport {
  bool pass = true;
  double max_residual = 0.0;
  std::string worst;
};
QuasiRepReport check_quasi_rep(const PartialStarAlgebra& a, const QuasiRep& qr,
                               double tol);

/// Full *-representation test over every multipliable basis pair.
QuasiRepReport check_star_rep(const PartialStarAlgebra& a, const QuasiRep& qr,
                              double tol);

struct WeakCommutant {
  std::vector<Matrix> basis;
  int dim() const { return static_cast<int>(basis.size()); }
};

/// Solves (C X xi | eta) = (C xi | X^dagger eta) over all domain vectors and
/// generators; returns a basis of the solution space.
WeakCommutant compute_weak_commutant(const std::vector<Matrix>& ops,
                                     const Matrix& domain_basis, double tol);

struct WellBehavedReport {
  bool well_behaved = false;          // H_pi == H_Pi
  bool strongly_nondegenerate = false;  // pi(N_p) D(pi) total in H_pi
  bool norm_equality = false;         // ||closure pi(x)|| = p(x) on D(p)
  bool commutant_equality = false;    // pi(A)'_w = closure(pi(D(p)))'
  bool commutant_invariance = false;  // C D(pi) subset D(pi)
  double norm_residual = 0.0;
  double commutant_residual = 0.0;
  int commutant_dim = 0;
  int h_pi_dim = 0;
  int h_Pi_dim = 0;
};
WellBehavedReport classify_well_behaved(const PartialStarAlgebra& a,
                                        const WitnessedSeminorm& p,
                                        const QuotientCStarAlgebra& q,
                                        const ConcreteRep& pi,
                                        const QuasiRep& qr, double tol,
                                        unsigned seed = 0x7e57ab1e);

/// Rebuilds the induced representation over the closure of pi_p itself
/// requires strong nondegeneracy and the norm equality on D(p).
struct RestrictedRep {
  ConcreteRep pi_wb;
  QuasiRep rep;
  /// Ambient embedding of the new Hilbert space into the old one.
  Matrix embedding;
  double restriction_residual = 0.0;
};
RestrictedRep restrict_to_well_behaved(const PartialStarAlgebra& a,
                                       const WitnessedSeminorm& p,
                                       const QuotientCStarAlgebra& q,
                                       const ConcreteRep& pi, const QuasiRep& qr,
                                       double tol);

/// Containment pi_p subset pi_q for p <= q with compatible witnesses.
struct ExtensionReport {
  bool pass = false;
  double max_residual = 0.0;
  std::string detail;
};
ExtensionReport verify_extension(const PartialStarAlgebra& a,
                                 const WitnessedSeminorm& p,
                                 const WitnessedSeminorm& q, double tol);

/// Element-level N_pi for a quasi-representation: at finite scale every
/// operator is bounded, so this is span(R(A)); kept for the containment
/// diagnostic N_p subset N_pi.
std::vector<std::string> brute_force_N_pi(const PartialStarAlgebra& a);

}  // namespace pstar
