#include <doctest.h>

#include "pstar/io.hpp"
#include "pstar/linalg.hpp"
#include "suite.hpp"

using namespace pstar;

TEST_SUITE("instances") {

TEST_CASE("builders are deterministic down to the serialized bytes") {
  auto twice = [](auto&& make) {
    std::string a = write_instance(make());
    std::string b = write_instance(make());
    CHECK(a == b);
    CHECK_FALSE(a.empty());
  };
  twice([] { return build_weighted_diagonal(3, 5); });
  twice([] { return build_compact_operator(3); });
  twice([] { return build_hermite_number(4); });
  twice([] { return build_cq_spectral({1, 1, 2}, {1, 2, 4}); });
  twice([] { return build_quasi_star(2); });
}

TEST_CASE("weighted diagonal scalar case k = 1 passes everything") {
  Instance inst = build_weighted_diagonal(1, 1);
  CHECK(check_property_A(inst.algebra, inst.tol).pass);
  QuotientCStarAlgebra q = build_quotient(inst.algebra, inst.seminorm);
  CHECK(q.dim == 1);
  ConcreteRep pi = witness_rep(q);
  QuasiRep qr = build_induced(inst.algebra, inst.seminorm, q, pi);
  CHECK(qr.dim() == 1);
  CHECK(check_star_rep(inst.algebra, qr, 1e-9).pass);
}

TEST_CASE("compact operator instance: rank-one norms and Schur commutant") {
  Instance inst = build_compact_operator(2);
  // r_u(e_1 (x) e_2-bar) = 1.
  Element x;
  Vector v = Vector::Zero(4);
  v(0 * 2 + 1) = 1.0;  // E_01
  x.comps["M"] = v;
  CHECK(evaluate(inst.algebra, inst.seminorm, x) == doctest::Approx(1.0));

  Instance big = build_compact_operator(4);
  QuotientCStarAlgebra q = build_quotient(big.algebra, big.seminorm);
  ConcreteRep pi = witness_rep(q);
  QuasiRep qr = build_induced(big.algebra, big.seminorm, q, pi);
  auto wb = classify_well_behaved(big.algebra, big.seminorm, q, pi, qr, big.tol);
  CHECK(wb.commutant_dim == 1);
  CHECK(wb.well_behaved);
  CHECK(check_star_rep(big.algebra, qr, 1e-9).pass);
  // Everywhere-defined seminorm: every operator is bounded by its value.
  for (int g = 0; g < big.algebra.basis_count(); ++g) {
    Element e = big.algebra.basis_element(g);
    CHECK(operator_norm(qr.ops[g]) <=
          evaluate(big.algebra, big.seminorm, e) + 1e-9);
  }
}

TEST_CASE("hermite instance: number operator acts with weight n+1") {
  Instance inst = build_hermite_number(5);
  const auto& a = inst.algebra;
  // N truncated to diag(1..5) via the level-1 tower representation.
  TruncationTower t = realize_tower(inst);
  const TowerLevel& lvl = t.levels[0];
  Matrix n_mat = lvl.rep[lvl.algebra.global_index("N", 0)];
  CHECK(n_mat.rows() == 5);
  for (int i = 0; i < 5; ++i)
    CHECK(n_mat(i, i) == Complex(double(i + 1), 0.0));

  // N . (f_0 (x) f_0-bar) = 1 . (f_0 (x) f_0-bar), staying in the domain.
  Element n, r00;
  n.comps["N"] = Vector::Ones(1);
  Vector v = Vector::Zero(25);
  v(0) = 1.0;
  r00.comps["R"] = v;
  auto prod = a.multiply(n, r00);
  REQUIRE(prod.has_value());
  CHECK(inst.seminorm.in_domain(a, *prod));
  CHECK((*prod - r00).max_abs() <= 1e-15);

  // r_u(f_0 (x) f_1-bar) = 1.
  Element r01;
  Vector w = Vector::Zero(25);
  w(1) = 1.0;
  r01.comps["R"] = w;
  CHECK(evaluate(a, inst.seminorm, r01) == doctest::Approx(1.0));

  auto fin = classify_finiteness(a, inst.seminorm, inst.tol);
  CHECK(fin.semifinite);
}

TEST_CASE("cq instance: C(S) dimension, block norms, quasi structure") {
  Instance inst = build_cq_spectral({1, 1, 2}, {1, 2, 4});
  CHECK(inst.metadata.at("c_s_dim").get<int>() == 6);
  CHECK(inst.algebra.sector("C").dim == 6);

  // X = P_1: the first block projection has operator norm 1 and
  // ||X||_S = lambda_1^-2 = 1.
  Element p1;
  Vector v = Vector::Zero(6);
  v(0) = 1.0;
  p1.comps["C"] = v;
  CHECK(evaluate(inst.algebra, inst.seminorm, p1) == doctest::Approx(1.0));
  const double lam1 = inst.params.at("lambdas")[0].get<double>();
  CHECK(1.0 / (lam1 * lam1) == doctest::Approx(1.0));

  std::vector<std::string> a0;
  CHECK(is_quasi_star_algebra(inst.algebra, &a0));
  CHECK(a0 == std::vector<std::string>{"F", "C"});

  // Quasi *-algebras always yield genuine *-representations.
  QuotientCStarAlgebra q = build_quotient(inst.algebra, inst.seminorm);
  ConcreteRep pi = witness_rep(q);
  QuasiRep qr = build_induced(inst.algebra, inst.seminorm, q, pi);
  CHECK(check_star_rep(inst.algebra, qr, 1e-9).pass);

  // N_r contains exactly the finite-rank-tagged sector.
  auto np = compute_Np(inst.algebra, inst.seminorm);
  CHECK(np.sectors == std::vector<std::string>{"F"});

  // The recorded CQ-norm axioms hold at every level.
  const Json& ax = inst.metadata.at("cq_banach_axioms");
  CHECK(ax.at("b_residual").get<double>() <= 1e-9);
  CHECK(ax.at("c_residual").get<double>() <= 1e-9);
}

TEST_CASE("equal lambdas merge into one spectral block") {
  Instance inst = build_cq_spectral({1, 1, 2}, {1, 1, 4});
  // lambda_1 = lambda_2: C(S) = M_2 + M_2 -> dim 4 + 4 = 8.
  CHECK(inst.algebra.sector("C").dim == 8);
}

TEST_CASE("cq parameter validation") {
  CHECK_THROWS_AS(build_cq_spectral({1, 2}, {1}), MalformedInputError);
  CHECK_THROWS_AS(build_cq_spectral({1, 2}, {0.5, 1}), MalformedInputError);
  CHECK_THROWS_AS(build_cq_spectral({1, 2}, {4, 2}), MalformedInputError);
  CHECK_THROWS_AS(build_cq_spectral({0, 2}, {1, 2}), MalformedInputError);
  CHECK_THROWS_AS(build_weighted_diagonal(0, 1), MalformedInputError);
  CHECK_THROWS_AS(build_hermite_number(1), MalformedInputError);
  CHECK_THROWS_AS(build_instance("no_such_thing", Json::object()),
                  MalformedInputError);
}

TEST_CASE("fixture expected verdicts are attached and well-formed") {
  auto fixtures = build_fixtures();
  CHECK(fixtures.size() >= 7);
  std::set<std::string> names;
  for (const Instance& f : fixtures) {
    CHECK(f.name.rfind("fixture:", 0) == 0);
    CHECK_FALSE(f.expected.empty());
    names.insert(f.name);
  }
  for (const char* required :
       {"fixture:corrupted_table", "fixture:scaled_norm",
        "fixture:frobenius_norm", "fixture:property_b_fail",
        "fixture:np_trivial", "fixture:enlarged_pi",
        "fixture:ill_defined_action", "fixture:zero_seminorm"})
    CHECK_MESSAGE(names.count(required) == 1, required);
}

TEST_CASE("origin metadata names the realized example") {
  CHECK(build_weighted_diagonal(2, 1).metadata.at("origin_example") == "5.1");
  CHECK(build_weighted_diagonal(2, 1, "polygrid:1")
            .metadata.at("origin_example") == "5.2/5.3");
  CHECK(build_compact_operator(2).metadata.at("origin_example") == "5.4");
  CHECK(build_hermite_number(3).metadata.at("origin_example") == "5.5");
  CHECK(build_cq_spectral({1, 1}, {1, 2}).metadata.at("origin_example") ==
        "5.6");
}

}  // TEST_SUITE
