#include <doctest.h>

#include "pstar/completion.hpp"
#include "pstar/linalg.hpp"
#include "suite.hpp"

using namespace pstar;

TEST_SUITE("completion") {

TEST_CASE("weighted diagonal quotient is the 3-dimensional diagonal algebra") {
  Instance inst = build_weighted_diagonal(3, 1);
  QuotientCStarAlgebra q = build_quotient(inst.algebra, inst.seminorm);
  CHECK(q.dim == 3);
  CHECK(q.kernel.cols() == 3);  // the f_i - b_i pairs

  // Structure constants: e_i e_j = delta_ij e_i (diagonal projections).
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Vector prod = q.product(Vector::Unit(3, i), Vector::Unit(3, j));
      Vector expect = Vector::Zero(3);
      if (i == j) expect(i) = 1.0;
      CHECK(max_abs(prod - expect) <= 1e-12);
    }
  // Norm comes through the witness: ||sum c_i e_i|| = max |c_i|.
  Vector c(3);
  c << Complex(1, 0), Complex(0, -2), Complex(0.5, 0);
  CHECK(q.norm(c) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("tilde map: kernel, identification, norms, unit") {
  Instance inst = build_weighted_diagonal(3, 1);
  const auto& a = inst.algebra;
  QuotientCStarAlgebra q = build_quotient(a, inst.seminorm);

  // Equal diagonals in F and B land on the same coset.
  Element f, b;
  Vector d(3);
  d << 1.0, 2.0, 3.0;
  f.comps["F"] = d;
  b.comps["B"] = d;
  Vector tf = tilde_map(a, inst.seminorm, q, f);
  Vector tb = tilde_map(a, inst.seminorm, q, b);
  CHECK(max_abs(tf - tb) <= 1e-12);

  // Kernel elements map to the zero coset.
  Element k = f - b;
  CHECK(tilde_map(a, inst.seminorm, q, k).cwiseAbs().maxCoeff() <= 1e-12);

  // Norm preservation: ||a~||_p = p(a).
  CHECK(q.norm(tf) ==
        doctest::Approx(evaluate(a, inst.seminorm, f)).epsilon(1e-12));

  // The declared unit is the multiplicative identity coset.
  REQUIRE(a.unit().has_value());
  Vector te = tilde_map(a, inst.seminorm, q, *a.unit());
  for (int i = 0; i < 3; ++i) {
    Vector ei = Vector::Unit(3, i);
    CHECK(max_abs(q.product(te, ei) - ei) <= 1e-12);
    CHECK(max_abs(q.product(ei, te) - ei) <= 1e-12);
  }

  Element u;
  u.comps["U"] = Vector::Ones(3);
  CHECK_THROWS_AS(tilde_map(a, inst.seminorm, q, u), DomainError);
}

TEST_CASE("tilde is multiplicative on defined domain products") {
  for (const Instance& inst : pstar::testing::standard_suite()) {
    CAPTURE(inst.name);
    const auto& a = inst.algebra;
    QuotientCStarAlgebra q = build_quotient(a, inst.seminorm);
    auto dom = inst.seminorm.domain_global_indices(a);
    for (int gx : dom)
      for (int gy : dom) {
        Element x = a.basis_element(gx), y = a.basis_element(gy);
        auto xy = a.multiply(x, y);
        if (!xy || !inst.seminorm.in_domain(a, *xy)) continue;
        Vector lhs = tilde_map(a, inst.seminorm, q, *xy);
        Vector rhs = q.product(tilde_map(a, inst.seminorm, q, x),
                               tilde_map(a, inst.seminorm, q, y));
        CHECK(max_abs(lhs - rhs) <= 1e-10);
      }
  }
}

TEST_CASE("trivial kernel gives the identity quotient with matching structure") {
  Instance inst = build_compact_operator(3);
  QuotientCStarAlgebra q = build_quotient(inst.algebra, inst.seminorm);
  CHECK(q.dim == 9);
  CHECK(q.kernel.cols() == 0);
  // Oracle: witness-image products reproduce the structure constants.
  for (int i = 0; i < q.dim; ++i)
    for (int j = 0; j < q.dim; ++j) {
      Matrix direct = q.witness_on_basis[i] * q.witness_on_basis[j];
      Matrix through = q.witness_of(q.product(Vector::Unit(9, i), Vector::Unit(9, j)));
      CHECK(max_abs(direct - through) <= 1e-12);
    }
}

TEST_CASE("quotient structure agrees with the witness image on the suite") {
  for (const Instance& inst : pstar::testing::standard_suite()) {
    CAPTURE(inst.name);
    QuotientCStarAlgebra q = build_quotient(inst.algebra, inst.seminorm);
    double worst = 0.0;
    for (int i = 0; i < q.dim; ++i)
      for (int j = 0; j < q.dim; ++j) {
        Matrix direct = q.witness_on_basis[i] * q.witness_on_basis[j];
        Matrix through =
            q.witness_of(q.product(Vector::Unit(q.dim, i), Vector::Unit(q.dim, j)));
        worst = std::max(worst, max_abs(direct - through));
      }
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("the tilde image of the domain spans the whole quotient") {
  for (const Instance& inst : pstar::testing::standard_suite()) {
    CAPTURE(inst.name);
    const auto& a = inst.algebra;
    QuotientCStarAlgebra q = build_quotient(a, inst.seminorm);
    auto dom = inst.seminorm.domain_global_indices(a);
    Matrix image(q.dim, dom.size());
    for (size_t c = 0; c < dom.size(); ++c)
      image.col(c) =
          tilde_map(a, inst.seminorm, q, a.basis_element(dom[c]));
    CHECK(rank_of(image, Tolerances{}.span_sv) == q.dim);
  }
}

TEST_CASE("banach *-algebra checks pass on the suite") {
  for (const Instance& inst : pstar::testing::standard_suite()) {
    CAPTURE(inst.name);
    QuotientCStarAlgebra q = build_quotient(inst.algebra, inst.seminorm);
    auto rep = verify_banach_star(inst.algebra, q, 1e-9);
    CHECK(rep.pass);
  }
}

TEST_CASE("corrupted structure constants are caught and located") {
  Instance inst = build_weighted_diagonal(3, 1);
  QuotientCStarAlgebra q = build_quotient(inst.algebra, inst.seminorm);
  q.structure[1](2, 0) += 0.01;
  auto rep = verify_banach_star(inst.algebra, q, 1e-9);
  CHECK_FALSE(rep.pass);
  CHECK(rep.worst.find("at (") != std::string::npos);  // names the tuple

  // A perturbation with its star image intact is pinned to associativity.
  QuotientCStarAlgebra q2 = build_quotient(inst.algebra, inst.seminorm);
  q2.structure[1](2, 0) += 0.01;
  q2.structure[2](1, 0) += 0.01;  // (e2 e1)* = e1* e2* stays consistent
  auto rep2 = verify_banach_star(inst.algebra, q2, 1e-9);
  CHECK_FALSE(rep2.pass);
  CHECK(rep2.worst.find("associativity") != std::string::npos);
}

TEST_CASE("raw seminorms have no completion") {
  for (Instance& f : build_fixtures()) {
    if (f.name != "fixture:scaled_norm") continue;
    CHECK_THROWS_AS(build_quotient(f.algebra, f.seminorm), UnsupportedError);
  }
}

TEST_CASE("property (B) failure blocks the quotient") {
  for (Instance& f : build_fixtures()) {
    if (f.name != "fixture:property_b_fail") continue;
    CHECK_THROWS_AS(build_quotient(f.algebra, f.seminorm), PreconditionError);
  }
}

TEST_CASE("zero seminorm quotient is the zero algebra") {
  for (Instance& f : build_fixtures()) {
    if (f.name != "fixture:zero_seminorm") continue;
    QuotientCStarAlgebra q = build_quotient(f.algebra, f.seminorm);
    CHECK(q.dim == 0);
    CHECK(verify_banach_star(f.algebra, q, 1e-9).pass);
  }
}

}  // TEST_SUITE
