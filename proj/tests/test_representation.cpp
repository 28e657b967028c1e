#include <doctest.h>

#include "pstar/linalg.hpp"
#include "suite.hpp"

using namespace pstar;

namespace {

struct Pipeline {
  Instance inst;
  QuotientCStarAlgebra quot;
  ConcreteRep pi;
  QuasiRep qr;
};

Pipeline run_pipeline(Instance inst) {
  Pipeline p{std::move(inst), {}, {}, {}};
  p.quot = build_quotient(p.inst.algebra, p.inst.seminorm);
  p.pi = witness_rep(p.quot);
  p.qr = build_induced(p.inst.algebra, p.inst.seminorm, p.quot, p.pi);
  return p;
}

}  // namespace

TEST_SUITE("representation") {

TEST_CASE("the witness representation is faithful and a *-homomorphism") {
  for (const Instance& inst : pstar::testing::standard_suite()) {
    CAPTURE(inst.name);
    QuotientCStarAlgebra q = build_quotient(inst.algebra, inst.seminorm);
    ConcreteRep pi = witness_rep(q);
    CHECK(pi.faithful);
    CHECK(rep_residual(q, pi) <= 1e-10);
  }
}

TEST_CASE("zero quotient gives the zero-dimensional representation") {
  for (Instance& f : build_fixtures()) {
    if (f.name != "fixture:zero_seminorm") continue;
    QuotientCStarAlgebra q = build_quotient(f.algebra, f.seminorm);
    ConcreteRep pi = witness_rep(q);
    CHECK(pi.hilbert_dim == 0);
    CHECK(pi.faithful);  // vacuously
  }
}

TEST_CASE("restriction representation: kernel, diagonals, unit") {
  Instance inst = build_weighted_diagonal(3, 1);
  const auto& a = inst.algebra;
  QuotientCStarAlgebra q = build_quotient(a, inst.seminorm);
  ConcreteRep pi = witness_rep(q);

  // x in ker p maps to the zero operator.
  Element f, b;
  Vector d(3);
  d << 1.0, 2.0, 3.0;
  f.comps["F"] = d;
  b.comps["B"] = d;
  Matrix zero = pi.of(tilde_map(a, inst.seminorm, q, f - b));
  CHECK(max_abs(zero) <= 1e-12);

  // b = diag(1,2,3) acts as diag(1,2,3), with norm p(b).
  Matrix mb = pi.of(tilde_map(a, inst.seminorm, q, b));
  Matrix expect = Matrix::Zero(3, 3);
  expect(0, 0) = 1.0;
  expect(1, 1) = 2.0;
  expect(2, 2) = 3.0;
  CHECK(max_abs(mb - expect) <= 1e-12);
  CHECK(operator_norm(mb) ==
        doctest::Approx(evaluate(a, inst.seminorm, b)).epsilon(1e-12));

  // The unit maps to the identity.
  Matrix me = pi.of(tilde_map(a, inst.seminorm, q, *a.unit()));
  CHECK(max_abs(me - Matrix::Identity(3, 3)) <= 1e-12);

  auto all = restriction_rep(a, inst.seminorm, q, pi);
  CHECK(all.size() == 6);
}

TEST_CASE("induced representation of the weighted diagonal instance") {
  Pipeline p = run_pipeline(build_weighted_diagonal(3, 1));
  const auto& a = p.inst.algebra;
  CHECK(p.qr.dim() == 3);              // D(pi_p) = C^3
  CHECK(p.qr.closure_basis.cols() == 3);  // H_pi = C^3 = H_Pi
  CHECK(p.qr.square_span_equal);
  CHECK(p.qr.solve_residual <= 1e-10);
  CHECK_FALSE(p.qr.zero_rep);

  // pi_p(u) is the weight-tagged diagonal in ambient coordinates.
  for (int i = 0; i < 3; ++i) {
    Matrix amb = p.qr.ambient_op(a.global_index("U", i));
    Matrix expect = Matrix::Zero(3, 3);
    expect(i, i) = std::pow(2.0, i);
    CHECK(max_abs(amb - expect) <= 1e-10);
  }
}

TEST_CASE("trivial N_p produces the zero representation with a warning") {
  Pipeline p = run_pipeline(build_quasi_star(2));
  CHECK(p.qr.zero_rep);
  CHECK(p.qr.dim() == 0);
  CHECK(check_quasi_rep(p.inst.algebra, p.qr, 1e-9).pass);  // vacuously
  auto wb = classify_well_behaved(p.inst.algebra, p.inst.seminorm, p.quot,
                                  p.pi, p.qr, p.inst.tol);
  CHECK_FALSE(wb.well_behaved);  // H_pi = 0 inside a 2-dimensional H_Pi
}

TEST_CASE("the inconsistent-span fixture raises IllDefinedActionError") {
  for (Instance& f : build_fixtures()) {
    if (f.name != "fixture:ill_defined_action") continue;
    QuotientCStarAlgebra q = build_quotient(f.algebra, f.seminorm);
    ConcreteRep pi = witness_rep(q);
    CHECK_THROWS_AS(build_induced(f.algebra, f.seminorm, q, pi),
                    IllDefinedActionError);
    InducedOptions opts;
    opts.throw_on_inconsistent = false;
    QuasiRep qr = build_induced(f.algebra, f.seminorm, q, pi, opts);
    CHECK(qr.solve_residual > Tolerances{}.solve_rel);
  }
}

TEST_CASE("quasi-representation axioms hold for built instances") {
  for (const Instance& inst : pstar::testing::standard_suite()) {
    CAPTURE(inst.name);
    Pipeline p = run_pipeline(inst);
    auto rep = check_quasi_rep(p.inst.algebra, p.qr, 1e-9);
    CHECK(rep.pass);
    CHECK(rep.max_residual <= 1e-9);
  }
}

TEST_CASE("a perturbed operator entry fails the quasi-rep audit by name") {
  Pipeline p = run_pipeline(build_weighted_diagonal(3, 1));
  p.qr.ops[p.inst.algebra.global_index("U", 1)](0, 0) += 0.01;
  auto rep = check_quasi_rep(p.inst.algebra, p.qr, 1e-9);
  CHECK_FALSE(rep.pass);
  CHECK(rep.worst.find("U[1]") != std::string::npos);
}

TEST_CASE("check_star_rep passes across the builder suite") {
  for (const Instance& inst : pstar::testing::standard_suite()) {
    CAPTURE(inst.name);
    Pipeline p = run_pipeline(inst);
    auto rep = check_star_rep(p.inst.algebra, p.qr, 1e-9);
    CHECK(rep.pass);
  }
}

TEST_CASE("corrupted table: auditor verdict matches an exhaustive oracle") {
  for (Instance& f : build_fixtures()) {
    if (f.name != "fixture:corrupted_table") continue;
    Pipeline p = run_pipeline(f);
    auto verdict = check_star_rep(p.inst.algebra, p.qr, 1e-9);
    // Independent oracle: recompute every pi(ab) against pi(a)pi(b) through
    // the ambient operators rather than the solved coordinates.
    const auto& a = p.inst.algebra;
    bool oracle_pass = true;
    for (int ga = 0; ga < a.basis_count() && oracle_pass; ++ga)
      for (int gb = 0; gb < a.basis_count() && oracle_pass; ++gb) {
        auto [sa, ia] = a.basis_ref(ga);
        auto [sb, ib] = a.basis_ref(gb);
        if (!a.product_defined(sa, sb)) continue;
        auto ab = a.multiply(a.basis_element(ga), a.basis_element(gb));
        Matrix lhs = Matrix::Zero(3, 3);
        for (const auto& [s, v] : ab->comps)
          for (int i = 0; i < v.size(); ++i)
            lhs += v(i) * p.qr.ambient_op(a.global_index(s, i));
        Matrix rhs = p.qr.ambient_op(ga) * p.qr.ambient_op(gb);
        if (max_abs(lhs - rhs) > 1e-9) oracle_pass = false;
      }
    CHECK(verdict.pass == oracle_pass);
    CHECK_FALSE(verdict.pass);  // the corruption breaks multiplicativity
    // Quasi-rep condition (ii) fails too: a in U, x in B subset R(A).
    auto qrep = check_quasi_rep(p.inst.algebra, p.qr, 1e-9);
    CHECK_FALSE(qrep.pass);
  }
}

TEST_CASE("weak commutant of standard operator sets") {
  // Full matrix algebra: scalars only (Schur).
  Instance c3 = build_compact_operator(3);
  Pipeline p = run_pipeline(c3);
  std::vector<Matrix> ops = p.qr.ops;
  Matrix eye = Matrix::Identity(3, 3);
  auto schur = compute_weak_commutant(ops, eye, Tolerances{}.span_sv);
  CHECK(schur.dim() == 1);

  // Diagonal algebra on C^3: dimension 3.
  std::vector<Matrix> diag;
  for (int i = 0; i < 3; ++i) {
    Matrix m = Matrix::Zero(3, 3);
    m(i, i) = 1.0;
    diag.push_back(m);
  }
  CHECK(compute_weak_commutant(diag, eye, Tolerances{}.span_sv).dim() == 3);

  // The zero set: everything commutes.
  std::vector<Matrix> zero = {Matrix::Zero(3, 3)};
  CHECK(compute_weak_commutant(zero, eye, Tolerances{}.span_sv).dim() == 9);

  // Every returned basis element satisfies the defining relation.
  for (const Matrix& c : schur.basis)
    for (const Matrix& x : ops)
      CHECK(max_abs(c * x - x * c) <= 1e-9);
}

TEST_CASE("well-behavedness of the semifinite builders") {
  for (const Instance& inst : pstar::testing::standard_suite()) {
    CAPTURE(inst.name);
    if (inst.name == "quasi_star") continue;  // trivial N_p, not well-behaved
    Pipeline p = run_pipeline(inst);
    auto wb = classify_well_behaved(p.inst.algebra, p.inst.seminorm, p.quot,
                                    p.pi, p.qr, p.inst.tol);
    CHECK(wb.well_behaved);
    CHECK(wb.strongly_nondegenerate);
    CHECK(wb.norm_equality);
    CHECK(wb.commutant_equality);
    CHECK(wb.commutant_invariance);
    CHECK(wb.norm_residual <= 1e-9);
    CHECK(wb.commutant_residual <= 1e-9);
  }
}

TEST_CASE("weighted diagonal commutant is the diagonal algebra on both sides") {
  Pipeline p = run_pipeline(build_weighted_diagonal(3, 1));
  auto wb = classify_well_behaved(p.inst.algebra, p.inst.seminorm, p.quot,
                                  p.pi, p.qr, p.inst.tol);
  CHECK(wb.commutant_dim == 3);
  CHECK(wb.commutant_equality);
}

TEST_CASE("restriction to well-behaved is the identity on well-behaved input") {
  Pipeline p = run_pipeline(build_weighted_diagonal(2, 1));
  auto rr = restrict_to_well_behaved(p.inst.algebra, p.inst.seminorm, p.quot,
                                     p.pi, p.qr, p.inst.tol);
  CHECK(rr.rep.dim() == p.qr.dim());
  CHECK(rr.restriction_residual <= 1e-10);
  auto wb = classify_well_behaved(p.inst.algebra, p.inst.seminorm, p.quot,
                                  rr.pi_wb, rr.rep, p.inst.tol);
  CHECK(wb.well_behaved);
}

TEST_CASE("the enlarged-Pi fixture restricts back to a well-behaved rep") {
  for (Instance& f : build_fixtures()) {
    if (f.name != "fixture:enlarged_pi") continue;
    QuotientCStarAlgebra q = build_quotient(f.algebra, f.seminorm);
    REQUIRE(f.alt_pi.has_value());
    ConcreteRep pi2 = supplied_rep(f.algebra, f.seminorm, q,
                                   f.alt_pi->matrices, f.alt_pi->dim, 1e-9);
    CHECK(pi2.faithful);
    CHECK(pi2.hilbert_dim == 5);
    QuasiRep qr2 = build_induced(f.algebra, f.seminorm, q, pi2);
    auto wb2 = classify_well_behaved(f.algebra, f.seminorm, q, pi2, qr2, f.tol);
    CHECK_FALSE(wb2.well_behaved);  // the zero block is dead weight
    CHECK(wb2.strongly_nondegenerate);
    CHECK(wb2.norm_equality);
    auto rr = restrict_to_well_behaved(f.algebra, f.seminorm, q, pi2, qr2, f.tol);
    CHECK(rr.restriction_residual <= 1e-10);
    CHECK(rr.rep.dim() == 3);  // the zero block is stripped
    auto wb3 = classify_well_behaved(f.algebra, f.seminorm, q, rr.pi_wb,
                                     rr.rep, f.tol);
    CHECK(wb3.well_behaved);
  }
}

TEST_CASE("restriction precondition fails on the zero representation") {
  Pipeline p = run_pipeline(build_quasi_star(2));
  CHECK_THROWS_AS(restrict_to_well_behaved(p.inst.algebra, p.inst.seminorm,
                                           p.quot, p.pi, p.qr, p.inst.tol),
                  PreconditionError);
}

TEST_CASE("extension pi_p subset pi_q for nested domains") {
  Instance inst = build_weighted_diagonal(3, 1);
  const auto& a = inst.algebra;
  WitnessedSeminorm p = restrict_seminorm(inst.seminorm, {"F"});
  auto rep = verify_extension(a, p, inst.seminorm, inst.tol);
  CHECK(rep.pass);
  CHECK(rep.max_residual <= 1e-9);
  // p = q is the trivial containment.
  auto same = verify_extension(a, inst.seminorm, inst.seminorm, inst.tol);
  CHECK(same.pass);
}

TEST_CASE("incompatible witnesses are refused") {
  Instance inst = build_weighted_diagonal(3, 1);
  const auto& a = inst.algebra;
  WitnessedSeminorm p = restrict_seminorm(inst.seminorm, {"F"});
  // Same values, different witness space: no shared extension route here.
  WitnessedSeminorm q;
  q.mode = WitnessedSeminorm::Mode::Witnessed;
  q.domain = inst.seminorm.domain;
  q.witness_dim = 4;
  for (const auto& [s, mats] : inst.seminorm.witness) {
    std::vector<Matrix> big;
    for (const Matrix& m : mats) {
      Matrix e = Matrix::Zero(4, 4);
      e.topLeftCorner(3, 3) = m;
      big.push_back(e);
    }
    q.witness[s] = big;
  }
  CHECK_THROWS_AS(verify_extension(a, p, q, inst.tol), UnsupportedError);
}

TEST_CASE("N_pi containment: N_p sectors always land inside R(A)") {
  for (const Instance& inst : pstar::testing::standard_suite()) {
    CAPTURE(inst.name);
    auto npi = brute_force_N_pi(inst.algebra);
    for (const auto& s : compute_Np(inst.algebra, inst.seminorm).sectors)
      CHECK(std::find(npi.begin(), npi.end(), s) != npi.end());
  }
}

TEST_CASE("alternative domain diagnostic stays well-defined on the suite") {
  for (const Instance& inst : pstar::testing::standard_suite()) {
    CAPTURE(inst.name);
    QuotientCStarAlgebra q = build_quotient(inst.algebra, inst.seminorm);
    ConcreteRep pi = witness_rep(q);
    InducedOptions opts;
    opts.alt_domain = true;
    opts.throw_on_inconsistent = false;
    QuasiRep alt = build_induced(inst.algebra, inst.seminorm, q, pi, opts);
    CHECK(alt.solve_residual <= Tolerances{}.solve_rel);
  }
}

}  // TEST_SUITE
