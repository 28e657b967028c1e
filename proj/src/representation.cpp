#include "pstar/representation.hpp"

#include <random>
#include <set>

#include "pstar/linalg.hpp"

namespace pstar {

namespace {

Matrix hstack(const std::vector<Matrix>& blocks, int rows) {
  int cols = 0;
  for (const Matrix& b : blocks) cols += static_cast<int>(b.cols());
  Matrix out(rows, cols);
  int at = 0;
  for (const Matrix& b : blocks) {
    out.middleCols(at, b.cols()) = b;
    at += static_cast<int>(b.cols());
  }
  return out;
}

}  // namespace

Matrix ConcreteRep::of(const Vector& coset) const {
  Matrix out = Matrix::Zero(hilbert_dim, hilbert_dim);
  for (int i = 0; i < coset.size(); ++i)
    if (coset(i) != Complex(0, 0)) out += coset(i) * assign[i];
  return out;
}

double rep_residual(const QuotientCStarAlgebra& q, const ConcreteRep& rep) {
  double worst = 0.0;
  for (int i = 0; i < q.dim; ++i) {
    Vector ei = Vector::Unit(q.dim, i);
    worst = std::max(
        worst, max_abs(rep.of(q.star(ei)) - Matrix(rep.assign[i].adjoint())));
    for (int j = 0; j < q.dim; ++j) {
      Vector ej = Vector::Unit(q.dim, j);
      Matrix lhs = rep.of(q.product(ei, ej));
      worst = std::max(worst, max_abs(lhs - rep.assign[i] * rep.assign[j]));
    }
  }
  return worst;
}

namespace {

bool rep_faithful(const QuotientCStarAlgebra& q, const ConcreteRep& rep) {
  if (q.dim == 0) return true;  // vacuously
  Matrix stacked(rep.hilbert_dim * rep.hilbert_dim, q.dim);
  for (int j = 0; j < q.dim; ++j) stacked.col(j) = vec(rep.assign[j]);
  return rank_of(stacked, Tolerances{}.span_sv) == q.dim;
}

}  // namespace

ConcreteRep witness_rep(const QuotientCStarAlgebra& q) {
  ConcreteRep rep;
  rep.hilbert_dim =
      q.dim == 0 ? 0 : static_cast<int>(q.witness_on_basis[0].rows());
  rep.assign = q.witness_on_basis;
  rep.faithful = rep_faithful(q, rep);
  return rep;
}

ConcreteRep supplied_rep(const PartialStarAlgebra& a, const WitnessedSeminorm& p,
                         const QuotientCStarAlgebra& q,
                         const std::map<std::string, std::vector<Matrix>>& mats,
                         int dim, double tol) {
  // The supplied data is a linear map on D(p); it must vanish on ker p and
  // descend to a faithful *-representation of the quotient.
  for (const auto& s : p.domain) {
    auto it = mats.find(s);
    if (it == mats.end() ||
        static_cast<int>(it->second.size()) != a.sector(s).dim)
      throw MalformedInputError("supplied representation misses sector " + s);
  }
  auto of_element = [&](const Element& x) {
    Matrix out = Matrix::Zero(dim, dim);
    for (const auto& [s, v] : x.comps)
      for (int i = 0; i < v.size(); ++i) out += v(i) * mats.at(s)[i];
    return out;
  };
  ConcreteRep rep;
  rep.hilbert_dim = q.dim == 0 ? 0 : dim;
  for (int j = 0; j < q.dim; ++j)
    rep.assign.push_back(
        of_element(representative_element(a, q, Vector::Unit(q.dim, j))));
  // Vanishing on the kernel.
  for (int c = 0; c < q.kernel.cols(); ++c) {
    Element k = a.from_coords(q.kernel.col(c), p.domain);
    if (max_abs(of_element(k)) > tol)
      throw PreconditionError("supplied representation does not factor through ker p");
  }
  double resid = rep_residual(q, rep);
  if (resid > std::max(tol, 1e-8))
    throw PreconditionError("supplied representation is not a *-homomorphism");
  // Isometry on the basis forces faithfulness on a C*-algebra.
  for (int j = 0; j < q.dim; ++j) {
    Vector ej = Vector::Unit(q.dim, j);
    if (std::abs(operator_norm(rep.of(ej)) - q.norm(ej)) > 1e-7)
      throw PreconditionError("supplied representation is not isometric");
  }
  rep.faithful = rep_faithful(q, rep);
  return rep;
}

std::vector<Matrix> restriction_rep(const PartialStarAlgebra& a,
                                    const WitnessedSeminorm& p,
                                    const QuotientCStarAlgebra& q,
                                    const ConcreteRep& pi) {
  std::vector<Matrix> out;
  for (int g : p.domain_global_indices(a))
    out.push_back(pi.of(tilde_map(a, p, q, a.basis_element(g))));
  return out;
}

Matrix QuasiRep::op_of(const PartialStarAlgebra& a, const Element& x) const {
  const int h = dim();
  Matrix out = Matrix::Zero(h, h);
  for (const auto& [s, v] : x.comps)
    for (int i = 0; i < v.size(); ++i)
      if (v(i) != Complex(0, 0)) out += v(i) * ops[a.global_index(s, i)];
  return out;
}

Matrix QuasiRep::ambient_op(int g) const {
  return domain_basis * ops[g] * domain_basis.adjoint();
}

QuasiRep build_induced(const PartialStarAlgebra& a, const WitnessedSeminorm& p,
                       const QuotientCStarAlgebra& q, const ConcreteRep& pi,
                       const InducedOptions& opts) {
  const double sv = Tolerances{}.span_sv;
  QuasiRep out;
  out.ambient_dim = pi.hilbert_dim;
  NpSubspace np = compute_Np(a, p);

  std::vector<int> np_basis;
  for (const auto& s : np.sectors)
    for (int i = 0; i < a.sector(s).dim; ++i)
      np_basis.push_back(a.global_index(s, i));

  if (np_basis.empty() || pi.hilbert_dim == 0) {
    out.zero_rep = np_basis.empty();
    out.domain_basis = Matrix(pi.hilbert_dim, 0);
    out.closure_basis = Matrix(pi.hilbert_dim, 0);
    out.ops.assign(a.basis_count(), Matrix(0, 0));
    return out;
  }

  std::vector<Matrix> images;  // Pi(x~) for x in the N_p basis
  for (int g : np_basis)
    images.push_back(pi.of(tilde_map(a, p, q, a.basis_element(g))));

  // span Pi(N~)H, then span Pi(N~^2)H = span of Pi(x~) applied to the first.
  Matrix w_span = orthonormal_span(hstack(images, pi.hilbert_dim), sv);
  out.closure_basis = w_span;

  std::vector<Matrix> dblocks;
  for (const Matrix& m : images) dblocks.push_back(m * w_span);
  Matrix d_cols = hstack(dblocks, pi.hilbert_dim);
  Matrix b_d = orthonormal_span(d_cols, sv);
  out.square_span_equal = b_d.cols() == w_span.cols();

  if (opts.alt_domain) {
    // Diagnostic alternative domain span{Pi(x~) xi}; its action need not stay
    // inside the span, which the consistency residual then records.
    d_cols = hstack(images, pi.hilbert_dim);
    b_d = orthonormal_span(d_cols, sv);
    dblocks.clear();
  }
  out.domain_basis = b_d;
  const int h = static_cast<int>(b_d.cols());

  Matrix constraint = b_d.adjoint() * d_cols;  // h x n
  Matrix cpinv = pseudo_inverse(constraint, sv);
  const double scale = std::max(1.0, max_abs(d_cols));

  out.ops.assign(a.basis_count(), Matrix::Zero(h, h));
  for (int ga = 0; ga < a.basis_count(); ++ga) {
    Element ea = a.basis_element(ga);
    std::vector<Matrix> iblocks;
    for (size_t xi = 0; xi < np_basis.size(); ++xi) {
      Element ex = a.basis_element(np_basis[xi]);
      auto ax = a.multiply(ea, ex);
      if (!ax) throw Error("internal: N_p element not universally multipliable");
      Matrix t_ax = pi.of(tilde_map(a, p, q, *ax));
      iblocks.push_back(opts.alt_domain ? t_ax : Matrix(t_ax * w_span));
    }
    Matrix w_cols = hstack(iblocks, pi.hilbert_dim);
    // Images must stay inside the closure space...
    Matrix escape = w_cols - b_d * (b_d.adjoint() * w_cols);
    // ...and the relation must be solvable on the spanning set.
    Matrix rhs = b_d.adjoint() * w_cols;
    Matrix op = rhs * cpinv;
    Matrix resid = op * constraint - rhs;
    double r = std::max(max_abs(resid), max_abs(escape)) / scale;
    out.solve_residual = std::max(out.solve_residual, r);
    if (r > Tolerances{}.solve_rel && opts.throw_on_inconsistent)
      throw IllDefinedActionError(
          "action of " + a.basis_name(ga) +
          " is inconsistent on the spanning set, residual " + std::to_string(r));
    out.ops[ga] = op;
  }
  return out;
}

QuasiRepReport check_quasi_rep(const PartialStarAlgebra& a, const QuasiRep& qr,
                               double tol) {
  QuasiRepReport rep;
  auto track = [&](double r, const std::string& what) {
    if (r > rep.max_residual) {
      rep.max_residual = r;
      rep.worst = what;
    }
  };
  for (int ga = 0; ga < a.basis_count(); ++ga) {
    Matrix lhs = qr.op_of(a, a.star(a.basis_element(ga)));
    track(max_abs(lhs - Matrix(qr.ops[ga].adjoint())),
          "pi(a*)=pi(a)^dag at a=" + a.basis_name(ga));
  }
  for (const auto& s : a.universal_right_multipliers())
    for (int i = 0; i < a.sector(s).dim; ++i) {
      const int gx = a.global_index(s, i);
      Element ex = a.basis_element(gx);
      for (int ga = 0; ga < a.basis_count(); ++ga) {
        auto ax = a.multiply(a.basis_element(ga), ex);
        if (!ax) continue;
        Matrix lhs = qr.op_of(a, *ax);
        track(max_abs(lhs - qr.ops[ga] * qr.ops[gx]),
              "pi(ax)=pi(a)pi(x) at (a=" + a.basis_name(ga) +
                  ", x=" + a.basis_name(gx) + ")");
      }
    }
  rep.pass = rep.max_residual <= tol;
  return rep;
}

QuasiRepReport check_star_rep(const PartialStarAlgebra& a, const QuasiRep& qr,
                              double tol) {
  QuasiRepReport rep;
  for (int ga = 0; ga < a.basis_count(); ++ga) {
    const std::string sa = a.basis_ref(ga).first;
    for (int gb = 0; gb < a.basis_count(); ++gb) {
      const std::string sb = a.basis_ref(gb).first;
      if (!a.product_defined(sa, sb)) continue;
      auto ab = a.multiply(a.basis_element(ga), a.basis_element(gb));
      Matrix lhs = qr.op_of(a, *ab);
      double r = max_abs(lhs - qr.ops[ga] * qr.ops[gb]);
      if (r > rep.max_residual) {
        rep.max_residual = r;
        rep.worst = "pi(ab)=pi(a)pi(b) at (a=" + a.basis_name(ga) +
                    ", b=" + a.basis_name(gb) + ")";
      }
    }
  }
  rep.pass = rep.max_residual <= tol;
  return rep;
}

WeakCommutant compute_weak_commutant(const std::vector<Matrix>& ops,
                                     const Matrix& domain_basis, double tol) {
  WeakCommutant out;
  const int h = static_cast<int>(domain_basis.rows());
  if (h == 0) return out;
  const Matrix& b = domain_basis;
  std::vector<Matrix> rows;
  for (const Matrix& x : ops) {
    Matrix xb = x * b;
    Matrix bx = b.adjoint() * x;
    rows.push_back(kronecker(xb.transpose(), b.adjoint()) -
                   kronecker(b.transpose(), bx));
  }
  int total = 0;
  for (const Matrix& r : rows) total += static_cast<int>(r.rows());
  Matrix system(total, h * h);
  int at = 0;
  for (const Matrix& r : rows) {
    system.middleRows(at, r.rows()) = r;
    at += static_cast<int>(r.rows());
  }
  Matrix null = nullspace(system, tol);
  for (int c = 0; c < null.cols(); ++c)
    out.basis.push_back(unvec(null.col(c), h, h));
  return out;
}

WellBehavedReport classify_well_behaved(const PartialStarAlgebra& a,
                                        const WitnessedSeminorm& p,
                                        const QuotientCStarAlgebra& q,
                                        const ConcreteRep& pi,
                                        const QuasiRep& qr, double tol,
                                        unsigned seed) {
  (void)q;
  WellBehavedReport rep;
  const int h = qr.dim();
  rep.h_pi_dim = h;
  rep.h_Pi_dim = pi.hilbert_dim;
  rep.well_behaved = h == pi.hilbert_dim;

  // (i) pi(N_p) D(pi) total in H_pi.
  NpSubspace np = compute_Np(a, p);
  std::vector<Matrix> span_blocks;
  for (const auto& s : np.sectors)
    for (int i = 0; i < a.sector(s).dim; ++i)
      span_blocks.push_back(qr.ops[a.global_index(s, i)]);
  Matrix stacked = hstack(span_blocks, h);
  rep.strongly_nondegenerate =
      rank_of(stacked, Tolerances{}.span_sv) == h;

  // (ii) ||closure pi_p(x)|| = p(x) on D(p), basis plus samples.
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<Element> samples;
  for (int g : p.domain_global_indices(a)) samples.push_back(a.basis_element(g));
  for (int s = 0; s < 12; ++s) {
    Element e;
    for (const auto& sec : p.domain) {
      Vector v(a.sector(sec).dim);
      for (int i = 0; i < v.size(); ++i) v(i) = Complex(dist(rng), dist(rng));
      e.comps[sec] = v;
    }
    samples.push_back(e);
  }
  for (const Element& x : samples) {
    if (x.comps.empty()) continue;
    double px = evaluate(a, p, x);
    double nx = operator_norm(qr.op_of(a, x));
    rep.norm_residual = std::max(
        rep.norm_residual, std::abs(nx - px) / std::max(1.0, px));
  }
  rep.norm_equality = rep.norm_residual <= std::max(tol, 1e-9);

  // (iii) weak commutant of pi(A) vs commutant of the closure of pi(D(p)).
  Matrix eye = Matrix::Identity(h, h);
  WeakCommutant w1 = compute_weak_commutant(qr.ops, eye, Tolerances{}.span_sv);
  std::vector<Matrix> domain_ops;
  for (int g : p.domain_global_indices(a)) domain_ops.push_back(qr.ops[g]);
  WeakCommutant w2 =
      compute_weak_commutant(domain_ops, eye, Tolerances{}.span_sv);
  rep.commutant_dim = w1.dim();
  Matrix v1(h * h, w1.dim()), v2(h * h, w2.dim());
  for (int c = 0; c < w1.dim(); ++c) v1.col(c) = vec(w1.basis[c]);
  for (int c = 0; c < w2.dim(); ++c) v2.col(c) = vec(w2.basis[c]);
  double contain = std::max(containment_residual(v1, v2, Tolerances{}.span_sv),
                            containment_residual(v2, v1, Tolerances{}.span_sv));
  rep.commutant_residual = contain;
  rep.commutant_equality = contain <= std::max(tol, 1e-9);

  // Invariance C D(pi) subset D(pi): the domain span in its own coordinates
  // is everything, so measure the escape through the ambient picture.
  double inv = 0.0;
  Matrix pd = qr.domain_basis * qr.domain_basis.adjoint();
  Matrix amb_eye = Matrix::Identity(qr.ambient_dim, qr.ambient_dim);
  for (const Matrix& c : w1.basis) {
    Matrix amb_c = qr.domain_basis * c * qr.domain_basis.adjoint();
    inv = std::max(inv, max_abs((amb_eye - pd) * amb_c * pd));
  }
  rep.commutant_invariance = inv <= std::max(tol, 1e-9);
  return rep;
}

RestrictedRep restrict_to_well_behaved(const PartialStarAlgebra& a,
                                       const WitnessedSeminorm& p,
                                       const QuotientCStarAlgebra& q,
                                       const ConcreteRep& pi, const QuasiRep& qr,
                                       double tol) {
  WellBehavedReport cls = classify_well_behaved(a, p, q, pi, qr, tol);
  if (!cls.strongly_nondegenerate || !cls.norm_equality)
    throw PreconditionError(
        "restriction to a well-behaved representation needs strong "
        "nondegeneracy and the norm equality");
  RestrictedRep out;
  out.pi_wb.hilbert_dim = qr.dim();
  for (int j = 0; j < q.dim; ++j) {
    Element rj = representative_element(a, q, Vector::Unit(q.dim, j));
    out.pi_wb.assign.push_back(qr.op_of(a, rj));
  }
  out.pi_wb.faithful = rep_faithful(q, out.pi_wb);
  double resid = rep_residual(q, out.pi_wb);
  if (resid > std::max(tol, 1e-8))
    throw PreconditionError("closure of pi_p is not a *-representation");
  out.rep = build_induced(a, p, q, out.pi_wb);
  out.embedding = qr.domain_basis;

  // The rebuilt representation must be a restriction of the original.
  double worst = 0.0;
  const Matrix& e = out.embedding;
  for (int g = 0; g < a.basis_count(); ++g) {
    Matrix lhs = qr.ambient_op(g) * e * out.rep.domain_basis;
    Matrix rhs = e * out.rep.ambient_op(g) * out.rep.domain_basis;
    worst = std::max(worst, max_abs(lhs - rhs));
  }
  out.restriction_residual = worst;
  return out;
}

ExtensionReport verify_extension(const PartialStarAlgebra& a,
                                 const WitnessedSeminorm& p,
                                 const WitnessedSeminorm& q, double tol) {
  ExtensionReport rep;
  if (!seminorm_leq(a, p, q, tol))
    throw PreconditionError("verify_extension needs p <= q");
  if (p.mode != WitnessedSeminorm::Mode::Witnessed ||
      q.mode != WitnessedSeminorm::Mode::Witnessed)
    throw UnsupportedError("extension verification needs witnessed seminorms");
  if (p.witness_dim != q.witness_dim)
    throw UnsupportedError(
        "incompatible witnesses: extension via C*-stability is out of scope");
  for (const auto& s : p.domain)
    for (int i = 0; i < a.sector(s).dim; ++i)
      if (max_abs(p.witness.at(s)[i] - q.witness.at(s)[i]) > tol)
        throw UnsupportedError(
            "incompatible witnesses: q does not restrict to p on D(p)");

  QuotientCStarAlgebra qp = build_quotient(a, p);
  QuotientCStarAlgebra qq = build_quotient(a, q);
  ConcreteRep pip = witness_rep(qp);
  ConcreteRep piq = witness_rep(qq);
  QuasiRep rp = build_induced(a, p, qp, pip);
  QuasiRep rq = build_induced(a, q, qq, piq);

  double chd = containment_residual(rp.domain_basis, rq.domain_basis,
                                    Tolerances{}.span_sv);
  double worst = chd;
  for (int g = 0; g < a.basis_count(); ++g) {
    Matrix lhs = rq.ambient_op(g) * rp.domain_basis;
    Matrix rhs = rp.ambient_op(g) * rp.domain_basis;
    worst = std::max(worst, max_abs(lhs - rhs));
  }
  rep.max_residual = worst;
  rep.pass = worst <= std::max(tol, 1e-9);
  rep.detail = rep.pass ? "pi_p subset pi_q" : "containment fails";
  return rep;
}

std::vector<std::string> brute_force_N_pi(const PartialStarAlgebra& a) {
  // Every operator is bounded at finite scale, so A^pi_b = A and the
  // absorbing condition degenerates to membership in R(A).
  return a.universal_right_multipliers();
}

}  // namespace pstar
