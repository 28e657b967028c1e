#pragma once

#include <json.hpp>

#include "pstar/reverse.hpp"

namespace pstar {

using Json = nlohmann::json;

/// Regenerable tower description: levels are rebuilt by the named builder
/// rather than stored, so instance files stay small and bit-stable.
struct TowerSpec {
  std::string builder;
  Json params;
  int depth = 0;
  std::map<std::string, bool> declared_bounded;
};

/// A concrete problem instance: algebra, seminorm, optional supplied
/// representation, optional tower, and (for fixtures) the expected audit
/// verdicts.
struct Instance {
  std::string name;
  Json params = Json::object();
  double tol = kDefaultTol;
  PartialStarAlgebra algebra;
  WitnessedSeminorm seminorm;
  struct AltPi {
    int dim = 0;
    std::map<std::string, std::vector<Matrix>> matrices;
  };
  std::optional<AltPi> alt_pi;
  std::optional<TowerSpec> tower;
  Json expected = Json::object();
  Json metadata = Json::object();
};

/// Sequence-space model with sectors F (finitely-supported tag), B (bounded
/// tag) and U (geometrically weighted); the seminorm is the sup norm on
/// F + B through a diagonal witness. `weights` is "geometric:<base>" or
/// "polygrid:<n>" (grid sampling of polynomially bounded functions).
Instance build_weighted_diagonal(int k, int depth = 5,
                                 const std::string& weights = "geometric:2");

/// Single full matrix sector with the operator norm everywhere; the
/// finite-scale compact-operator picture.
Instance build_compact_operator(int d);

/// Identity, number operator and rank-one sectors over a truncated Hermite
/// basis; the seminorm lives on the rank-one sector.
Instance build_hermite_number(int m, int depth = 5);

/// Block-diagonal algebra commuting with S = sum lambda_n P_n, with an
/// S-weighted ambient sector; a proper quasi *-algebra.
Instance build_cq_spectral(const std::vector<int>& blocks,
                           const std::vector<double>& lambdas);

/// Minimal quasi *-algebra (A, A0) with one matrix sector A0 and one
/// weighted ambient sector; its N_p is trivial by construction.
Instance build_quasi_star(int d);

/// Adversarial instances, each with the expected audit verdict attached.
std::vector<Instance> build_fixtures();

/// Dispatcher for the CLI; throws MalformedInputError on unknown names or
/// bad parameters.
Instance build_instance(const std::string& name, const Json& params);

/// Names and parameter summaries for `list-instances`.
std::vector<std::pair<std::string, std::string>> instance_catalog();

/// Rebuild all tower levels from the stored description (deterministic).
TruncationTower realize_tower(const Instance& inst);

/// Restriction of a witnessed seminorm to a sector subset (shared witness).
WitnessedSeminorm restrict_seminorm(const WitnessedSeminorm& p,
                                    const std::vector<std::string>& sectors);

/// Named raw evaluators referenced by instance files.
std::function<double(const PartialStarAlgebra&, const Element&)>
raw_evaluator(const std::string& name);

}  // namespace pstar
