#include "pstar/seminorm.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "pstar/linalg.hpp"

namespace pstar {

namespace {

std::string print_element(const Element& x) {
  std::ostringstream os;
  os.precision(6);
  bool first = true;
  for (const auto& [s, v] : x.comps) {
    if (!first) os << " + ";
    first = false;
    os << s << ":[";
    for (int i = 0; i < v.size(); ++i) {
      if (i) os << ",";
      os << "(" << v(i).real() << "," << v(i).imag() << ")";
    }
    os << "]";
  }
  if (first) os << "0";
  return os.str();
}

Element random_domain_element(const PartialStarAlgebra& a,
                              const WitnessedSeminorm& p, std::mt19937_64& rng,
                              const std::vector<std::string>& secs) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Element e;
  for (const auto& s : secs) {
    Vector v(a.sector(s).dim);
    for (int i = 0; i < v.size(); ++i) v(i) = Complex(dist(rng), dist(rng));
    e.comps[s] = v;
  }
  (void)p;
  return e;
}

}  // namespace

bool WitnessedSeminorm::in_domain(const PartialStarAlgebra& a,
                                  const Element& x) const {
  a.validate_element(x);
  std::set<std::string> dset(domain.begin(), domain.end());
  for (const auto& [s, v] : x.comps)
    if (!dset.count(s) && v.cwiseAbs().maxCoeff() != 0.0) return false;
  return true;
}

Matrix WitnessedSeminorm::witness_of(const PartialStarAlgebra& a,
                                     const Element& x) const {
  a.validate_element(x);
  if (mode != Mode::Witnessed)
    throw UnsupportedError("raw-mode seminorm has no witness");
  Matrix out = Matrix::Zero(witness_dim, witness_dim);
  for (const auto& [s, v] : x.comps) {
    auto it = witness.find(s);
    if (it == witness.end()) throw DomainError("element outside D(p)");
    for (int i = 0; i < v.size(); ++i)
      if (v(i) != Complex(0, 0)) out += v(i) * it->second[i];
  }
  return out;
}

Matrix WitnessedSeminorm::witness_matrix(const PartialStarAlgebra& a) const {
  const int d = domain_dim(a);
  Matrix out = Matrix::Zero(witness_dim * witness_dim, d);
  int at = 0;
  for (const auto& s : domain) {
    const auto& mats = witness.at(s);
    for (int i = 0; i < a.sector(s).dim; ++i) out.col(at++) = vec(mats[i]);
  }
  return out;
}

std::vector<int> WitnessedSeminorm::domain_global_indices(
    const PartialStarAlgebra& a) const {
  std::vector<int> out;
  for (const auto& s : domain)
    for (int i = 0; i < a.sector(s).dim; ++i)
      out.push_back(a.global_index(s, i));
  return out;
}

int WitnessedSeminorm::domain_dim(const PartialStarAlgebra& a) const {
  int d = 0;
  for (const auto& s : domain) d += a.sector(s).dim;
  return d;
}

double evaluate(const PartialStarAlgebra& a, const WitnessedSeminorm& p,
                const Element& x) {
  if (!p.in_domain(a, x))
    throw DomainError("evaluate: element has support outside D(p)");
  if (p.mode == WitnessedSeminorm::Mode::Raw) return p.raw_eval(a, x);
  return operator_norm(p.witness_of(a, x));
}

WitnessValidation validate_seminorm(const PartialStarAlgebra& a,
                                    const WitnessedSeminorm& p, double tol) {
  WitnessValidation out;
  std::set<std::string> dset(p.domain.begin(), p.domain.end());
  for (const auto& s : p.domain) {
    if (!a.has_sector(s)) throw MalformedInputError("domain sector unknown: " + s);
    if (!dset.count(a.star_sector(s))) {
      out.domain_closed = false;
      out.detail = "domain not star-closed at " + s;
    }
    for (const auto& t : p.domain)
      if (a.product_defined(s, t) &&
          !dset.count(a.table_entry(s, t)->target)) {
        out.domain_closed = false;
        out.detail = "domain not closed under product (" + s + "," + t + ")";
      }
  }
  if (p.mode == WitnessedSeminorm::Mode::Raw) return out;

  for (const auto& s : p.domain) {
    auto it = p.witness.find(s);
    if (it == p.witness.end() ||
        static_cast<int>(it->second.size()) != a.sector(s).dim)
      throw MalformedInputError("witness missing for sector " + s);
    for (const Matrix& m : it->second)
      if (m.rows() != p.witness_dim || m.cols() != p.witness_dim)
        throw MalformedInputError("witness matrix shape mismatch in " + s);
  }
  // *-preservation on the domain basis.
  for (const auto& s : p.domain)
    for (int i = 0; i < a.sector(s).dim; ++i) {
      Element e = a.basis_element(a.global_index(s, i));
      Matrix lhs = p.witness_of(a, a.star(e));
      Matrix rhs = p.witness_of(a, e).adjoint();
      double d = max_abs(lhs - rhs);
      out.max_residual = std::max(out.max_residual, d);
      if (d > tol) {
        out.star_preserving = false;
        out.detail = "witness not *-preserving at " + s + "[" +
                     std::to_string(i) + "]";
      }
    }
  // Multiplicativity on defined products inside D(p).
  for (const auto& s : p.domain)
    for (const auto& t : p.domain) {
      if (!a.product_defined(s, t)) continue;
      for (int i = 0; i < a.sector(s).dim; ++i)
        for (int j = 0; j < a.sector(t).dim; ++j) {
          Element ex = a.basis_element(a.global_index(s, i));
          Element ey = a.basis_element(a.global_index(t, j));
          auto xy = a.multiply(ex, ey);
          Matrix lhs = p.witness_of(a, *xy);
          Matrix rhs = p.witness_of(a, ex) * p.witness_of(a, ey);
          double d = max_abs(lhs - rhs);
          out.max_residual = std::max(out.max_residual, d);
          if (d > tol) {
            out.multiplicative = false;
            out.detail = "witness not multiplicative at (" + s + "[" +
                         std::to_string(i) + "]," + t + "[" +
                         std::to_string(j) + "])";
          }
        }
    }
  return out;
}

double CStarAxiomReport::max_residual() const {
  return std::max({seminorm.residual, star_invariance.residual,
                   submultiplicative.residual, cstar_identity.residual});
}

CStarAxiomReport check_cstar_axioms(const PartialStarAlgebra& a,
                                    const WitnessedSeminorm& p, double tol,
                                    unsigned seed) {
  CStarAxiomReport rep;
  std::mt19937_64 rng(seed);
  auto val = [&](const Element& x) { return evaluate(a, p, x); };
  auto note = [&](CStarAxiomReport::Item& item, double resid,
                  const Element& witness_elt, double rel_scale) {
    double r = resid / std::max(1.0, rel_scale);
    if (r > item.residual) {
      item.residual = r;
      item.witness = print_element(witness_elt);
    }
    if (r > tol) item.pass = false;
  };

  // Samples: domain basis first (deterministic naming), then random draws.
  std::vector<Element> samples;
  for (const auto& s : p.domain)
    for (int i = 0; i < a.sector(s).dim; ++i)
      samples.push_back(a.basis_element(a.global_index(s, i)));
  for (int n = 0; n < 24; ++n)
    samples.push_back(random_domain_element(a, p, rng, p.domain));

  for (size_t i = 0; i < samples.size(); ++i) {
    const Element& x = samples[i];
    if (x.comps.empty()) continue;
    const double px = val(x);
    // (i) seminorm properties.
    if (px < 0) note(rep.seminorm, -px, x, 1.0);
    Element sx = Complex(-2.5, 0.5) * x;
    note(rep.seminorm, std::abs(val(sx) - std::abs(Complex(-2.5, 0.5)) * px), x,
         px);
    const Element& y = samples[(i * 7 + 3) % samples.size()];
    Element xpy = x + y;
    double tri = val(xpy) - px - val(y);
    if (tri > 0) note(rep.seminorm, tri, xpy, px);
    // (ii) star invariance.
    note(rep.star_invariance, std::abs(val(a.star(x)) - px), x, px);
    // (iii) submultiplicativity on defined products.
    auto xy = a.multiply(x, y);
    if (xy && p.in_domain(a, *xy)) {
      double over = val(*xy) - px * val(y);
      if (over > 0) note(rep.submultiplicative, over, x, px * val(y));
    }
    // (iv) the C*-identity whenever x* is a left multiplier of x.
    Element xs = a.star(x);
    auto xsx = a.multiply(xs, x);
    if (xsx && p.in_domain(a, *xsx))
      note(rep.cstar_identity, std::abs(val(*xsx) - px * px), x, px * px);
  }
  return rep;
}

Matrix seminorm_kernel(const PartialStarAlgebra& a, const WitnessedSeminorm& p,
                       double tol) {
  if (p.mode == WitnessedSeminorm::Mode::Raw)
    throw UnsupportedError("kernel of a raw-mode seminorm is not computable");
  return nullspace(p.witness_matrix(a), tol);
}

PropertyBReport check_property_B(const PartialStarAlgebra& a,
                                 const WitnessedSeminorm& p, double tol) {
  PropertyBReport rep;
  const int d = p.domain_dim(a);
  if (d == 0) return rep;  // D(p) = {0}: vacuous pass
  std::set<std::string> rset;
  for (const auto& s : a.universal_right_multipliers()) rset.insert(s);

  // Indicator columns for the R(A)-aligned part of the domain.
  int at = 0;
  std::vector<int> r_cols;
  for (const auto& s : p.domain) {
    for (int i = 0; i < a.sector(s).dim; ++i, ++at)
      if (rset.count(s)) r_cols.push_back(at);
  }
  Matrix span(d, r_cols.size());
  for (size_t c = 0; c < r_cols.size(); ++c)
    span.col(c) = Vector::Unit(d, r_cols[c]);

  Matrix ker(d, 0);
  if (p.mode == WitnessedSeminorm::Mode::Witnessed) ker = seminorm_kernel(a, p, tol);

  Matrix joint(d, span.cols() + ker.cols());
  joint << span, ker;
  const int r = rank_of(joint, tol);
  rep.codimension = d - r;
  rep.pass = rep.codimension == 0;
  return rep;
}

NpSubspace compute_Np(const PartialStarAlgebra& a, const WitnessedSeminorm& p) {
  NpSubspace out;
  std::set<std::string> dset(p.domain.begin(), p.domain.end());
  std::set<std::string> rset;
  for (const auto& s : a.universal_right_multipliers()) rset.insert(s);
  for (const auto& t : p.domain) {
    if (!rset.count(t)) continue;
    bool absorbing = true;
    for (const Sector& s : a.sectors()) {
      const TableEntry* e = a.table_entry(s.id, t);
      if (!e || !dset.count(e->target)) {
        absorbing = false;
        break;
      }
    }
    if (absorbing) {
      out.sectors.push_back(t);
      out.dim += a.sector(t).dim;
    }
  }
  return out;
}

Matrix brute_force_Np(const PartialStarAlgebra& a, const WitnessedSeminorm& p,
                      double tol) {
  // Candidates live in D(p) intersect span(R(A)); constraints say that for
  // every basis a-element the product lands inside D(p).
  std::set<std::string> dset(p.domain.begin(), p.domain.end());
  std::set<std::string> rset;
  for (const auto& s : a.universal_right_multipliers()) rset.insert(s);
  std::vector<std::string> cand;
  for (const auto& s : p.domain)
    if (rset.count(s)) cand.push_back(s);
  int cdim = 0;
  for (const auto& s : cand) cdim += a.sector(s).dim;
  if (cdim == 0) return Matrix(p.domain_dim(a), 0);

  std::vector<Matrix> rows;
  for (int ga = 0; ga < a.basis_count(); ++ga) {
    Element ea = a.basis_element(ga);
    int at = 0;
    Matrix block(0, cdim);
    for (const auto& t : cand) {
      for (int j = 0; j < a.sector(t).dim; ++j, ++at) {
        Element ex = a.basis_element(a.global_index(t, j));
        auto prod = a.multiply(ea, ex);
        if (!prod) throw Error("internal: candidate not in R(A)");
        for (const auto& [u, v] : prod->comps) {
          if (dset.count(u)) continue;
          // out-of-domain component contributes dim(u) constraint rows
          Matrix grow = Matrix::Zero(block.rows() + v.size(), cdim);
          grow.topRows(block.rows()) = block;
          grow.block(block.rows(), at, v.size(), 1) = v;
          block = grow;
        }
      }
    }
    if (block.rows() > 0) rows.push_back(block);
  }
  Matrix constraints(0, cdim);
  for (const Matrix& b : rows) {
    Matrix grow(constraints.rows() + b.rows(), cdim);
    grow << constraints, b;
    constraints = grow;
  }
  Matrix null = nullspace(constraints, tol);
  // Lift candidate coordinates into full domain coordinates.
  Matrix lift = Matrix::Zero(p.domain_dim(a), cdim);
  int at = 0, full_at = 0;
  for (const auto& s : p.domain) {
    if (std::find(cand.begin(), cand.end(), s) != cand.end()) {
      for (int i = 0; i < a.sector(s).dim; ++i)
        lift(full_at + i, at + i) = 1.0;
      at += a.sector(s).dim;
    }
    full_at += a.sector(s).dim;
  }
  return lift * null;
}

FinitenessReport classify_finiteness(const PartialStarAlgebra& a,
                                     const WitnessedSeminorm& p, double tol) {
  FinitenessReport rep;
  NpSubspace np = compute_Np(a, p);
  std::set<std::string> npset(np.sectors.begin(), np.sectors.end());
  std::set<std::string> dset(p.domain.begin(), p.domain.end());

  rep.finite = npset == dset;
  if (rep.finite) {
    rep.semifinite = true;
  } else {
    // span(N_p) + ker p covers D(p)?
    const int d = p.domain_dim(a);
    Matrix ker(d, 0);
    if (p.mode == WitnessedSeminorm::Mode::Witnessed)
      ker = seminorm_kernel(a, p, tol);
    std::vector<int> np_cols;
    int at = 0;
    for (const auto& s : p.domain) {
      for (int i = 0; i < a.sector(s).dim; ++i, ++at)
        if (npset.count(s)) np_cols.push_back(at);
    }
    Matrix joint(d, np_cols.size() + ker.cols());
    for (size_t c = 0; c < np_cols.size(); ++c)
      joint.col(c) = Vector::Unit(d, np_cols[c]);
    joint.rightCols(ker.cols()) = ker;
    rep.semifinite = d == 0 || rank_of(joint, tol) == d;
  }
  rep.strongest = rep.finite ? Finiteness::Finite
                 : rep.semifinite ? Finiteness::Semifinite
                                  : Finiteness::Neither;

  // Structural facts about N_p at sector granularity.
  for (const auto& s : np.sectors)
    for (const auto& t : np.sectors)
      if (a.product_defined(s, t) &&
          !npset.count(a.table_entry(s, t)->target))
        rep.np_algebra = false;
  std::set<std::string> rset;
  for (const auto& s : a.universal_right_multipliers()) rset.insert(s);
  for (const auto& s : p.domain) {
    if (!rset.count(s)) continue;
    for (const auto& t : np.sectors)
      if (a.product_defined(s, t) &&
          !npset.count(a.table_entry(s, t)->target))
        rep.np_left_module = false;
  }
  return rep;
}

bool seminorm_leq(const PartialStarAlgebra& a, const WitnessedSeminorm& p,
                  const WitnessedSeminorm& q, double tol) {
  std::set<std::string> qdom(q.domain.begin(), q.domain.end());
  for (const auto& s : p.domain)
    if (!qdom.count(s)) return false;
  for (const auto& s : p.domain)
    for (int i = 0; i < a.sector(s).dim; ++i) {
      Element e = a.basis_element(a.global_index(s, i));
      if (std::abs(evaluate(a, p, e) - evaluate(a, q, e)) > tol) return false;
    }
  return true;
}

}  // namespace pstar
