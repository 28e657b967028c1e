#include "pstar/reverse.hpp"

#include <algorithm>

#include "pstar/linalg.hpp"

namespace pstar {

AxiomReport verify_tower(const TruncationTower& t, double tol) {
  AxiomReport rep;
  for (int l = 0; l + 1 < t.depth(); ++l) {
    const TowerLevel& lo = t.levels[l];
    const TowerLevel& hi = t.levels[l + 1];
    if (static_cast<int>(lo.next_index.size()) != lo.algebra.basis_count())
      throw MalformedInputError("tower level lacks element identity map");
    for (int g = 0; g < lo.algebra.basis_count(); ++g) {
      const int g2 = lo.next_index[g];
      Matrix compressed =
          hi.rep[g2].topLeftCorner(lo.hilbert_dim, lo.hilbert_dim);
      ++rep.checked;
      double d = max_abs(compressed - lo.rep[g]);
      if (d > rep.max_residual) {
        rep.max_residual = d;
        rep.worst = "compression of " + lo.algebra.basis_name(g) + " at level " +
                    std::to_string(l + 1);
      }
    }
  }
  rep.pass = rep.max_residual <= tol;
  return rep;
}

BoundedPart detect_bounded_part(const TruncationTower& t, double rel_tol,
                                int window) {
  if (t.depth() < 4)
    throw TooFewLevelsError("bounded-part detection needs at least 4 levels");
  BoundedPart out;
  const TowerLevel& top = t.top();
  for (const Sector& s : top.algebra.sectors()) {
    SectorProfile prof;
    for (const TowerLevel& lvl : t.levels) {
      if (!lvl.algebra.has_sector(s.id)) {
        prof.values.push_back(0.0);
        continue;
      }
      double m = 0.0;
      for (int i = 0; i < lvl.algebra.sector(s.id).dim; ++i)
        m = std::max(
            m, operator_norm(lvl.rep[lvl.algebra.global_index(s.id, i)]));
      prof.values.push_back(m);
    }
    const double last = prof.values.back();
    prof.limit_norm = last;
    bool plateau = true;
    for (int w = 1; w < window; ++w) {
      const double v = prof.values[prof.values.size() - 1 - w];
      if (std::abs(v - last) > rel_tol * std::max(1.0, std::abs(last)))
        plateau = false;
    }
    prof.detected_bounded = plateau;
    auto it = t.declared_bounded.find(s.id);
    if (it != t.declared_bounded.end()) {
      prof.declared = it->second;
      prof.matches_declared = prof.declared == prof.detected_bounded;
      if (!prof.matches_declared) out.all_match_declared = false;
    }
    if (prof.detected_bounded) out.bounded_sectors.push_back(s.id);
    out.profiles[s.id] = prof;
  }
  return out;
}

WitnessedSeminorm build_rL_pi(const TruncationTower& t, const BoundedPart& bp) {
  const TowerLevel& top = t.top();
  WitnessedSeminorm r;
  r.mode = WitnessedSeminorm::Mode::Witnessed;
  r.witness_dim = top.hilbert_dim;
  r.domain = bp.bounded_sectors;
  if (r.domain.empty()) {
    // Sigma_B(pi) = {0}: the zero-domain seminorm.
    r.witness_dim = 0;
    return r;
  }
  for (const auto& s : r.domain) {
    std::vector<Matrix> mats;
    for (int i = 0; i < top.algebra.sector(s).dim; ++i)
      mats.push_back(top.rep[top.algebra.global_index(s, i)]);
    r.witness[s] = std::move(mats);
  }
  auto valid = validate_seminorm(top.algebra, r, top.algebra.tol());
  if (!valid.ok())
    throw PreconditionError("bounded part is not a *-subalgebra: " +
                            valid.detail);
  return r;
}

namespace {

bool subset_closed(const PartialStarAlgebra& a,
                   const std::vector<std::string>& secs) {
  std::set<std::string> sset(secs.begin(), secs.end());
  for (const auto& s : secs) {
    if (!sset.count(a.star_sector(s))) return false;
    for (const auto& t : secs)
      if (a.product_defined(s, t) && !sset.count(a.table_entry(s, t)->target))
        return false;
  }
  return true;
}

}  // namespace

std::vector<WitnessedSeminorm> select_sigmaB(const PartialStarAlgebra& a,
                                             const WitnessedSeminorm& r) {
  std::vector<WitnessedSeminorm> out;
  const int n = static_cast<int>(r.domain.size());
  std::vector<std::vector<std::string>> subsets;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<std::string> secs;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) secs.push_back(r.domain[i]);
    subsets.push_back(std::move(secs));
  }
  std::sort(subsets.begin(), subsets.end(),
            [](const auto& x, const auto& y) {
              if (x.size() != y.size()) return x.size() < y.size();
              return x < y;
            });
  for (auto& secs : subsets) {
    if (!subset_closed(a, secs)) continue;
    WitnessedSeminorm sub;
    sub.mode = WitnessedSeminorm::Mode::Witnessed;
    sub.witness_dim = r.witness_dim;
    sub.domain = secs;
    for (const auto& s : secs) sub.witness[s] = r.witness.at(s);
    if (!check_property_B(a, sub, a.tol()).pass) continue;
    out.push_back(std::move(sub));
  }
  return out;
}

NaturalRepReport build_natural_rep(const PartialStarAlgebra& a_top,
                                   const WitnessedSeminorm& r_pi,
                                   const TruncationTower& t, double tol) {
  NaturalRepReport rep;
  NpSubspace np = compute_Np(a_top, r_pi);
  if (np.dim == 0) {
    rep.trivial_Np = true;
    return rep;
  }
  rep.quotient = build_quotient(a_top, r_pi);
  ConcreteRep pi_n = witness_rep(rep.quotient);

  // ||Pi(x~)|| = r(x) on the domain basis (isometry of the natural
  // extension) before inducing.
  for (int g : r_pi.domain_global_indices(a_top)) {
    Element e = a_top.basis_element(g);
    double lhs = operator_norm(pi_n.of(tilde_map(a_top, r_pi, rep.quotient, e)));
    double rhs = evaluate(a_top, r_pi, e);
    rep.norm_residual =
        std::max(rep.norm_residual, std::abs(lhs - rhs) / std::max(1.0, rhs));
  }

  rep.rep = build_induced(a_top, r_pi, rep.quotient, pi_n);
  rep.built = true;

  // Agreement with the tower's own representation on D(pi^N).
  const TowerLevel& top = t.top();
  for (int g = 0; g < a_top.basis_count(); ++g) {
    Matrix lhs = top.rep[g] * rep.rep.domain_basis;
    Matrix rhs = rep.rep.ambient_op(g) * rep.rep.domain_basis;
    rep.agreement_residual = std::max(rep.agreement_residual, max_abs(lhs - rhs));
  }
  rep.star_rep = check_star_rep(a_top, rep.rep, std::max(tol, 1e-9)).pass;
  return rep;
}

Prop43Report verify_prop43(const PartialStarAlgebra& a,
                           const WitnessedSeminorm& p,
                           const QuotientCStarAlgebra& q, const ConcreteRep& pi,
                           const QuasiRep& qr, double tol) {
  Prop43Report out;
  auto wb = classify_well_behaved(a, p, q, pi, qr, tol);
  if (!wb.well_behaved)
    throw PreconditionError("verify_prop43 needs a well-behaved representation");
  if (!check_star_rep(a, qr, std::max(tol, 1e-9)).pass)
    throw PreconditionError("verify_prop43 needs a representable seminorm");

  // r_{pi_p}: seminorm induced by the bounded operators of pi_p. At finite
  // scale every sector is bounded; Property (B) then selects the admissible
  // extension of p.
  const int h = qr.dim();
  std::set<std::string> pdom(p.domain.begin(), p.domain.end());
  std::vector<std::string> all;
  for (const Sector& s : a.sectors()) all.push_back(s.id);

  // Largest star/product-closed sector set containing D(p) that passes
  // Property (B) under the pi_p witness.
  std::vector<std::string> extra;
  for (const auto& s : all)
    if (!pdom.count(s)) extra.push_back(s);
  const int n = static_cast<int>(extra.size());
  std::vector<std::string> best;
  bool found = false;
  for (int size = n; size >= 0 && !found; --size) {
    std::vector<unsigned> masks;
    for (unsigned mask = 0; mask < (1u << n); ++mask)
      if (__builtin_popcount(mask) == size) masks.push_back(mask);
    for (unsigned mask : masks) {
      std::vector<std::string> secs = p.domain;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) secs.push_back(extra[i]);
      std::sort(secs.begin(), secs.end(), [&](const auto& x, const auto& y) {
        return a.sector_index(x) < a.sector_index(y);
      });
      if (!subset_closed(a, secs)) continue;
      WitnessedSeminorm r;
      r.mode = WitnessedSeminorm::Mode::Witnessed;
      r.witness_dim = h;
      r.domain = secs;
      for (const auto& s : secs) {
        std::vector<Matrix> mats;
        for (int i = 0; i < a.sector(s).dim; ++i)
          mats.push_back(qr.ops[a.global_index(s, i)]);
        r.witness[s] = std::move(mats);
      }
      if (!validate_seminorm(a, r, std::max(tol, 1e-9)).ok()) continue;
      if (!check_property_B(a, r, tol).pass) continue;
      if (!seminorm_leq(a, p, r, std::max(tol, 1e-9))) continue;
      best = secs;
      found = true;
      // pi_p as a single-level tower over H_{pi_p}.
      TruncationTower single;
      TowerLevel lvl;
      lvl.algebra = a;
      lvl.hilbert_dim = h;
      for (int g = 0; g < a.basis_count(); ++g) lvl.rep.push_back(qr.ops[g]);
      single.levels.push_back(std::move(lvl));
      NaturalRepReport nat = build_natural_rep(a, r, single, tol);
      if (!nat.built) {
        out.detail = "natural representation not built (trivial N_r)";
        return out;
      }
      // D(pi_p) in H_{pi_p} coordinates is the full space; containment asks
      // D(pi^N) to reach it, and pi^N to agree with pi_p there.
      out.h_equal = nat.rep.dim() == h;
      double worst = containment_residual(Matrix::Identity(h, h),
                                          nat.rep.domain_basis,
                                          Tolerances{}.span_sv);
      for (int g = 0; g < a.basis_count(); ++g)
        worst = std::max(worst, max_abs(nat.rep.ambient_op(g) - qr.ops[g]));
      out.containment_residual = worst;
      out.pass = out.h_equal && worst <= std::max(tol, 1e-9);
      out.detail = "extension domain: " + std::to_string(best.size()) +
                   " sectors";
      break;
    }
  }
  if (!found) {
    out.no_admissible_extension = true;
    out.detail = "no admissible extension of p inside Sigma_B(pi_p)";
  }
  return out;
}

}  // namespace pstar
