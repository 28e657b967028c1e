#include <doctest.h>

#include "pstar/linalg.hpp"
#include "suite.hpp"

using namespace pstar;

TEST_SUITE("seminorm") {

TEST_CASE("evaluation is the largest singular value of the witness image") {
  Instance inst = build_weighted_diagonal(3, 1);
  const auto& a = inst.algebra;
  Element x;
  Vector v(3);
  v << Complex(1, 0), Complex(-2, 0), Complex(0, 3);
  x.comps["B"] = v;
  CHECK(evaluate(a, inst.seminorm, x) == doctest::Approx(3.0).epsilon(1e-12));

  CHECK(evaluate(a, inst.seminorm, Element{}) == 0.0);

  Element u;
  u.comps["U"] = Vector::Ones(3);
  CHECK_THROWS_AS(evaluate(a, inst.seminorm, u), DomainError);
}

TEST_CASE("witnessed seminorms pass the C* axiom audit") {
  for (const Instance& inst : pstar::testing::standard_suite()) {
    CAPTURE(inst.name);
    auto v = validate_seminorm(inst.algebra, inst.seminorm, inst.tol);
    CHECK(v.ok());
    auto rep = check_cstar_axioms(inst.algebra, inst.seminorm, inst.tol);
    CHECK(rep.pass());
    CHECK(rep.max_residual() <= 1e-10);
  }
}

TEST_CASE("a doubled operator norm fails exactly the C*-identity") {
  for (Instance& f : build_fixtures()) {
    if (f.name != "fixture:scaled_norm") continue;
    auto rep = check_cstar_axioms(f.algebra, f.seminorm, f.tol);
    CHECK_FALSE(rep.pass());
    CHECK(rep.seminorm.pass);
    CHECK(rep.star_invariance.pass);
    CHECK(rep.submultiplicative.pass);
    CHECK_FALSE(rep.cstar_identity.pass);
    CHECK_FALSE(rep.cstar_identity.witness.empty());  // names the element
  }
}

TEST_CASE("the Frobenius norm fails the C*-identity on a rank-2 direction") {
  for (Instance& f : build_fixtures()) {
    if (f.name != "fixture:frobenius_norm") continue;
    auto rep = check_cstar_axioms(f.algebra, f.seminorm, f.tol);
    CHECK_FALSE(rep.cstar_identity.pass);
    // Direct counterexample: the identity of M_2.
    Element id;
    Vector v = Vector::Zero(4);
    v(0) = v(3) = 1.0;
    id.comps["M"] = v;
    const double pid = evaluate(f.algebra, f.seminorm, id);
    auto sq = f.algebra.multiply(f.algebra.star(id), id);
    REQUIRE(sq.has_value());
    CHECK(std::abs(evaluate(f.algebra, f.seminorm, *sq) - pid * pid) > 0.5);
  }
}

TEST_CASE("property (B) holds on the suite") {
  for (const Instance& inst : pstar::testing::standard_suite()) {
    CAPTURE(inst.name);
    auto rep = check_property_B(inst.algebra, inst.seminorm, inst.tol);
    CHECK(rep.pass);
    CHECK(rep.codimension == 0);
  }
}

TEST_CASE("domain outside R(A) with trivial kernel fails property (B)") {
  for (Instance& f : build_fixtures()) {
    if (f.name != "fixture:property_b_fail") continue;
    auto rep = check_property_B(f.algebra, f.seminorm, f.tol);
    CHECK_FALSE(rep.pass);
    CHECK(rep.codimension == 3);
    CHECK(compute_Np(f.algebra, f.seminorm).dim == 0);
  }
}

TEST_CASE("the empty domain passes property (B) vacuously") {
  Instance inst = build_weighted_diagonal(2, 1);
  WitnessedSeminorm p;
  p.mode = WitnessedSeminorm::Mode::Witnessed;
  p.witness_dim = 1;
  CHECK(check_property_B(inst.algebra, p, inst.tol).pass);
}

TEST_CASE("N_p of the weighted diagonal instance is the F sector") {
  Instance inst = build_weighted_diagonal(3, 1);
  auto np = compute_Np(inst.algebra, inst.seminorm);
  CHECK(np.sectors == std::vector<std::string>{"F"});
  CHECK(np.dim == 3);
}

TEST_CASE("everywhere-defined norm has N_p = R(A) = everything") {
  Instance inst = build_compact_operator(3);
  auto np = compute_Np(inst.algebra, inst.seminorm);
  CHECK(np.sectors == std::vector<std::string>{"M"});
  CHECK(np.dim == 9);
  CHECK(inst.algebra.universal_right_multipliers() ==
        std::vector<std::string>{"M"});
}

TEST_CASE("sector-level N_p equals the element-level brute force") {
  for (const Instance& inst : pstar::testing::standard_suite()) {
    CAPTURE(inst.name);
    if (inst.algebra.total_dim() > 24) continue;
    auto np = compute_Np(inst.algebra, inst.seminorm);
    Matrix brute = brute_force_Np(inst.algebra, inst.seminorm, inst.tol);

    // Indicator columns of the sector-level answer, in domain coordinates.
    const int d = inst.seminorm.domain_dim(inst.algebra);
    std::set<std::string> npset(np.sectors.begin(), np.sectors.end());
    std::vector<int> cols;
    int at = 0;
    for (const auto& s : inst.seminorm.domain) {
      for (int i = 0; i < inst.algebra.sector(s).dim; ++i, ++at)
        if (npset.count(s)) cols.push_back(at);
    }
    Matrix sector_span = Matrix::Zero(d, cols.size());
    for (size_t c = 0; c < cols.size(); ++c) sector_span(cols[c], c) = 1.0;
    CHECK(same_span(sector_span, brute, Tolerances{}.span_sv));
  }
}

TEST_CASE("finiteness classification across the builders") {
  auto fin = [](const Instance& i) {
    return classify_finiteness(i.algebra, i.seminorm, i.tol);
  };
  Instance wda = build_weighted_diagonal(3, 1);
  auto f1 = fin(wda);
  CHECK_FALSE(f1.finite);
  CHECK(f1.semifinite);  // F + ker p spans F + B
  CHECK(f1.strongest == Finiteness::Semifinite);
  CHECK(f1.np_algebra);
  CHECK(f1.np_left_module);

  auto f2 = fin(build_compact_operator(4));
  CHECK(f2.finite);  // D(p) = N_p at finite scale
  CHECK(f2.semifinite);

  auto f3 = fin(build_hermite_number(4));
  CHECK(f3.finite);
  CHECK(f3.semifinite);

  auto f4 = fin(build_cq_spectral({1, 1, 2}, {1, 2, 4}));
  CHECK(f4.semifinite);

  for (Instance& f : build_fixtures()) {
    if (f.name != "fixture:property_b_fail") continue;
    auto f5 = fin(f);
    CHECK_FALSE(f5.finite);
    CHECK_FALSE(f5.semifinite);
    CHECK(f5.strongest == Finiteness::Neither);
  }
}

TEST_CASE("semifinite implies property (B) over the suite") {
  for (const Instance& inst : pstar::testing::standard_suite()) {
    CAPTURE(inst.name);
    auto fin = classify_finiteness(inst.algebra, inst.seminorm, inst.tol);
    if (fin.semifinite)
      CHECK(check_property_B(inst.algebra, inst.seminorm, inst.tol).pass);
  }
}

TEST_CASE("N_p is an algebra and a left module over D(p) and R(A)") {
  for (const Instance& inst : pstar::testing::standard_suite()) {
    CAPTURE(inst.name);
    auto fin = classify_finiteness(inst.algebra, inst.seminorm, inst.tol);
    CHECK(fin.np_algebra);
    CHECK(fin.np_left_module);
  }
}

TEST_CASE("seminorm order: restriction, scaling, disjointness") {
  Instance inst = build_weighted_diagonal(3, 1);
  const auto& a = inst.algebra;
  WitnessedSeminorm p = restrict_seminorm(inst.seminorm, {"F"});
  CHECK(seminorm_leq(a, p, inst.seminorm, inst.tol));
  CHECK_FALSE(seminorm_leq(a, inst.seminorm, p, inst.tol));

  WitnessedSeminorm q2 = inst.seminorm;
  for (auto& [s, mats] : q2.witness)
    for (Matrix& m : mats) m *= 2.0;
  CHECK_FALSE(seminorm_leq(a, inst.seminorm, q2, inst.tol));

  WitnessedSeminorm disjoint = restrict_seminorm(inst.seminorm, {"B"});
  CHECK_FALSE(seminorm_leq(a, p, disjoint, inst.tol));
}

TEST_CASE("zero seminorm evaluates to zero and its kernel is everything") {
  for (Instance& f : build_fixtures()) {
    if (f.name != "fixture:zero_seminorm") continue;
    Element x;
    x.comps["F"] = Vector::Ones(3);
    CHECK(evaluate(f.algebra, f.seminorm, x) == 0.0);
    Matrix ker = seminorm_kernel(f.algebra, f.seminorm, Tolerances{}.rank_rel);
    CHECK(ker.cols() == 6);
    CHECK(check_cstar_axioms(f.algebra, f.seminorm, f.tol).pass());
  }
}

}  // TEST_SUITE
