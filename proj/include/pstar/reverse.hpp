#pragma once

#include "pstar/representation.hpp"

namespace pstar {

/// One truncation level: the algebra at this scale plus the representation
/// matrix of every basis element on the level Hilbert space.
struct TowerLevel {
  PartialStarAlgebra algebra;
  std::vector<Matrix> rep;  // per global basis element
  int hilbert_dim = 0;
  /// Basis index at this level -> basis index at the next level (element
  /// identity maps; empty on the top level).
  std::vector<int> next_index;
};

/// Nested family of instances modeling an unbounded *-representation; the
/// Hilbert embedding of level n into level n+1 is the coordinate inclusion.
struct TruncationTower {
  std::vector<TowerLevel> levels;
  std::map<std::string, bool> declared_bounded;  // ground truth from builders

  int depth() const { return static_cast<int>(levels.size()); }
  const TowerLevel& top() const { return levels.back(); }
};

/// Embedding coherence: representation matrices at each level are the
/// compressions of the next level on the embedded subspace.
AxiomReport verify_tower(const TruncationTower& t, double tol);

struct SectorProfile {
  std::vector<double> values;  // max basis norm per level
  bool detected_bounded = false;
  bool declared = false;
  bool matches_declared = true;
  double limit_norm = 0.0;  // top-level value
};

struct BoundedPart {
  std::map<std::string, SectorProfile> profiles;
  std::vector<std::string> bounded_sectors;  // detected, in sector order
  bool heuristic = true;  // always: boundedness is undecidable from a prefix
  bool all_match_declared = true;
};

/// Plateau heuristic over the last `window` levels at relative tolerance
/// `rel_tol`; cross-checked against declared flags when present.
BoundedPart detect_bounded_part(const TruncationTower& t, double rel_tol = 1e-6,
                                int window = 3);

/// r^L_pi: domain = bounded sectors, witness = top-level representation.
WitnessedSeminorm build_rL_pi(const TruncationTower& t, const BoundedPart& bp);

/// All sector-aligned restrictions of r that are *-subalgebra domains passing
/// Property (B), ordered by domain size then sector ids.
std::vector<WitnessedSeminorm> select_sigmaB(const PartialStarAlgebra& a,
                                             const WitnessedSeminorm& r);

struct NaturalRepReport {
  bool built = false;
  bool trivial_Np = false;
  double agreement_residual = 0.0;  // pi(a) v = pi^N(a) v on the domain
  double norm_residual = 0.0;       // ||Pi(x~)|| = r(x) on the domain basis
  bool star_rep = false;
  QuasiRep rep;
  QuotientCStarAlgebra quotient;
};

/// Natural-representation pipeline: quotient of (A_top, r_pi), the faithful
/// representation Pi(x~) = pi(x), the induced quasi-representation, and the
/// agreement check against the tower's own representation.
NaturalRepReport build_natural_rep(const PartialStarAlgebra& a_top,
                                   const WitnessedSeminorm& r_pi,
                                   const TruncationTower& t, double tol);

struct Prop43Report {
  bool pass = false;
  bool no_admissible_extension = false;
  double containment_residual = 0.0;
  bool h_equal = false;
  std::string detail;
};

/// From a well-behaved representation of (A, p), build the induced
/// seminorm r extending p, its natural representation, and verify
/// pi_p subset pi^N with equal closure spaces.
Prop43Report verify_prop43(const PartialStarAlgebra& a,
                           const WitnessedSeminorm& p,
                           const QuotientCStarAlgebra& q, const ConcreteRep& pi,
                           const QuasiRep& qr, double tol);

}  // namespace pstar
