#pragma once

#include <optional>
#include <string>

#include "pstar/algebra.hpp"

namespace pstar {

enum class Exec { Serial, Parallel };

/// Outcome of one axiom audit over basis tuples. `worst` names the first
/// tuple attaining the maximal residual (ties broken by enumeration order).
struct AxiomReport {
  bool pass = true;
  double max_residual = 0.0;
  std::optional<std::string> worst;
  long checked = 0;
};

/// Mixed associativity identities y*(ax) = (y*a)x and a(xy) = (ax)y over all
/// basis triples with a arbitrary and x, y in R(A)-sectors, restricted to
/// triples where every product involved is defined.
AxiomReport check_property_A(const PartialStarAlgebra& a, double tol,
                             Exec exec = Exec::Parallel);

/// y in R(x) implies y*z stays a right multiplier of x for z in R(A), with
/// (x*y)*z = x*(y*z). A definedness failure counts as a violation.
AxiomReport check_semi_associative(const PartialStarAlgebra& a, double tol,
                                   Exec exec = Exec::Parallel);

/// Star coherence: star(star(x)) = x on the basis, and (xy)* = y*x* on all
/// multipliable basis pairs (Gamma axioms (i)/(iii) at the tensor level).
AxiomReport check_involution_compat(const PartialStarAlgebra& a, double tol,
                                    Exec exec = Exec::Parallel);

/// Unit axioms when a unit is declared: e* = e and ex = xe = x on the basis.
AxiomReport check_unit(const PartialStarAlgebra& a, double tol);

}  // namespace pstar
