#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "pstar/algebra.hpp"
#include "pstar/audits.hpp"

namespace pstar {

/// Unbounded C*-seminorm on a sector-aligned subalgebra D(p). In witnessed
/// mode p(x) is the operator norm of a *-preserving, multiplicative matrix
/// image of x; raw mode evaluates an arbitrary named functional and exists to
/// exercise the axiom auditor.
struct WitnessedSeminorm {
  enum class Mode { Witnessed, Raw };

  std::vector<std::string> domain;  // sector ids, in algebra declaration order
  Mode mode = Mode::Witnessed;
  int witness_dim = 0;
  /// Witness matrices per domain sector, one per basis coordinate.
  std::map<std::string, std::vector<Matrix>> witness;
  std::string raw_name;
  std::function<double(const PartialStarAlgebra&, const Element&)> raw_eval;

  bool in_domain(const PartialStarAlgebra& a, const Element& x) const;
  /// Witness image of a domain element (witnessed mode only).
  Matrix witness_of(const PartialStarAlgebra& a, const Element& x) const;
  /// Stacked witness map on domain coordinates (k^2 x dim D(p)).
  Matrix witness_matrix(const PartialStarAlgebra& a) const;
  std::vector<int> domain_global_indices(const PartialStarAlgebra& a) const;
  int domain_dim(const PartialStarAlgebra& a) const;
};

double evaluate(const PartialStarAlgebra& a, const WitnessedSeminorm& p,
                const Element& x);

/// Domain sanity: sectors exist, star-closed, closed under defined products;
/// witnessed mode additionally checks the witness is *-preserving and
/// multiplicative on defined domain products.
struct WitnessValidation {
  bool domain_closed = true;
  bool star_preserving = true;
  bool multiplicative = true;
  double max_residual = 0.0;
  std::string detail;
  bool ok() const { return domain_closed && star_preserving && multiplicative; }
};
WitnessValidation validate_seminorm(const PartialStarAlgebra& a,
                                    const WitnessedSeminorm& p, double tol);

/// Axis-by-axis audit of the seminorm axioms plus the C*-identity, on the
/// domain basis and deterministic random samples.
struct CStarAxiomReport {
  struct Item {
    bool pass = true;
    double residual = 0.0;
    std::string witness;  // offending element, printed
  };
  Item seminorm, star_invariance, submultiplicative, cstar_identity;
  bool pass() const {
    return seminorm.pass && star_invariance.pass && submultiplicative.pass &&
           cstar_identity.pass;
  }
  double max_residual() const;
};
CStarAxiomReport check_cstar_axioms(const PartialStarAlgebra& a,
                                    const WitnessedSeminorm& p, double tol,
                                    unsigned seed = 0x5eedc0de);

/// Finite-scale Property (B): span(R(A) intersect domain) + ker p covers
/// D(p). Codimension of the span is reported on failure.
struct PropertyBReport {
  bool pass = true;
  int codimension = 0;
};
PropertyBReport check_property_B(const PartialStarAlgebra& a,
                                 const WitnessedSeminorm& p, double tol);

/// The absorbing subspace N_p, resolved at sector level.
struct NpSubspace {
  std::vector<std::string> sectors;
  int dim = 0;
};
NpSubspace compute_Np(const PartialStarAlgebra& a, const WitnessedSeminorm& p);

/// Element-level N_p by constraint nullspace; the independent oracle for the
/// sector-level computation (kept here so tests and the CLI share it).
Matrix brute_force_Np(const PartialStarAlgebra& a, const WitnessedSeminorm& p,
                      double tol);

enum class Finiteness { Finite, Semifinite, Neither };

struct FinitenessReport {
  Finiteness strongest = Finiteness::Neither;
  bool finite = false;
  bool semifinite = false;
  /// N_p closed under defined products and under left multiplication by
  /// D(p) intersect R(A) (sector-level membership).
  bool np_algebra = true;
  bool np_left_module = true;
};
FinitenessReport classify_finiteness(const PartialStarAlgebra& a,
                                     const WitnessedSeminorm& p, double tol);

/// p <= q in the extension order: domain containment plus value agreement on
/// the basis of D(p).
bool seminorm_leq(const PartialStarAlgebra& a, const WitnessedSeminorm& p,
                  const WitnessedSeminorm& q, double tol);

/// ker p as domain-coordinate column vectors (witnessed mode).
Matrix seminorm_kernel(const PartialStarAlgebra& a, const WitnessedSeminorm& p,
                       double tol);

}  // namespace pstar
