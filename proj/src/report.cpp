#include "pstar/report.hpp"

#include <chrono>
#include <ctime>

#include "pstar/linalg.hpp"

namespace pstar {

namespace {

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm{};
  gmtime_r(&tt, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json instance_header(const Instance& inst, double tol) {
  return Json{{"name", inst.name},
              {"params", inst.params},
              {"tolerance", tol},
              {"metadata", inst.metadata}};
}

/// span(tilde N_p) must be a left ideal of the quotient algebra.
double left_ideal_residual(const PartialStarAlgebra& a,
                           const WitnessedSeminorm& p,
                           const QuotientCStarAlgebra& q, const NpSubspace& np) {
  if (q.dim == 0 || np.dim == 0) return 0.0;
  Matrix t_p(q.dim, np.dim);
  int at = 0;
  for (const auto& s : np.sectors)
    for (int i = 0; i < a.sector(s).dim; ++i)
      t_p.col(at++) = tilde_map(a, p, q, a.basis_element(a.global_index(s, i)));
  Matrix basis = orthonormal_span(t_p, Tolerances{}.span_sv);
  double worst = 0.0;
  for (int i = 0; i < q.dim; ++i)
    for (int c = 0; c < t_p.cols(); ++c) {
      Vector prod = q.product(Vector::Unit(q.dim, i), t_p.col(c));
      Vector resid = prod - basis * (basis.adjoint() * prod);
      worst = std::max(worst, resid.cwiseAbs().maxCoeff());
    }
  return worst;
}

}  // namespace

Json run_audit(const Instance& inst, const AuditOptions& opts) {
  const double tol = opts.tol_override > 0 ? opts.tol_override : inst.tol;
  const PartialStarAlgebra& a = inst.algebra;
  const WitnessedSeminorm& p = inst.seminorm;

  Json rep;
  rep["schema_version"] = 1;
  rep["kind"] = "audit";
  if (opts.with_timestamp) rep["timestamp"] = iso_timestamp();
  rep["instance"] = instance_header(inst, tol);
  rep["model_conventions"] = Json::array(
      {"gamma_on_mixed_support_is_the_conjunction_over_sector_pairs",
       "p_density_is_span_containment_modulo_ker_p"});

  Json flags = Json::object();
  Json residuals = Json::object();
  Json skipped = Json::object();
  Json errors = Json::object();
  Json witnesses = Json::object();
  Json dims = Json::object();

  dims["A"] = a.total_dim();
  rep["rA_sectors"] = a.universal_right_multipliers();

  // --- algebra axioms ---
  {
    AxiomReport pa = check_property_A(a, tol, opts.exec);
    flags["property_A"] = pa.pass;
    residuals["property_A"] = pa.max_residual;
    if (pa.worst) witnesses["property_A"] = *pa.worst;
    AxiomReport sa = check_semi_associative(a, tol, opts.exec);
    flags["semi_associative"] = sa.pass;
    residuals["semi_associative"] = sa.max_residual;
    if (sa.worst) witnesses["semi_associative"] = *sa.worst;
    AxiomReport inv = check_involution_compat(a, tol, opts.exec);
    flags["involution_compat"] = inv.pass;
    residuals["involution_compat"] = inv.max_residual;
    if (a.unit()) {
      AxiomReport un = check_unit(a, tol);
      flags["unit_axioms"] = un.pass;
      residuals["unit_axioms"] = un.max_residual;
    }
    std::vector<std::string> a0;
    flags["quasi_star_algebra"] = is_quasi_star_algebra(a, &a0);
    if (!a0.empty()) rep["quasi_star_A0"] = a0;
  }

  // --- seminorm ---
  dims["D_p"] = p.domain_dim(a);
  bool witness_ok = true;
  if (p.mode == WitnessedSeminorm::Mode::Witnessed) {
    auto v = validate_seminorm(a, p, tol);
    flags["witness_valid"] = v.ok();
    residuals["witness_valid"] = v.max_residual;
    if (!v.ok()) witnesses["witness_valid"] = v.detail;
    witness_ok = v.ok();
  } else {
    auto v = validate_seminorm(a, p, tol);
    flags["domain_closed"] = v.domain_closed;
    witness_ok = false;  // raw mode has no completion route
  }
  CStarAxiomReport cs = check_cstar_axioms(a, p, tol);
  flags["cstar_axioms"] = cs.pass();
  residuals["cstar_axioms"] = cs.max_residual();
  if (!cs.pass()) {
    Json axes = Json::object();
    auto put = [&](const char* name, const CStarAxiomReport::Item& it) {
      if (!it.pass) axes[name] = Json{{"residual", it.residual},
                                      {"witness", it.witness}};
    };
    put("seminorm", cs.seminorm);
    put("star_invariance", cs.star_invariance);
    put("submultiplicative", cs.submultiplicative);
    put("cstar_identity", cs.cstar_identity);
    witnesses["cstar_axioms"] = axes;
  }
  PropertyBReport pb = check_property_B(a, p, tol);
  flags["property_B"] = pb.pass;
  rep["property_B_codimension"] = pb.codimension;
  NpSubspace np = compute_Np(a, p);
  dims["N_p"] = np.dim;
  rep["np_sectors"] = np.sectors;
  FinitenessReport fin = classify_finiteness(a, p, tol);
  flags["finite"] = fin.finite;
  flags["semifinite"] = fin.semifinite;
  flags["np_product_closed"] = fin.np_algebra;
  flags["np_left_absorbing"] = fin.np_left_module;

  // --- completion ---
  const bool completion_ready =
      witness_ok && pb.pass && cs.pass() &&
      p.mode == WitnessedSeminorm::Mode::Witnessed;
  std::optional<QuotientCStarAlgebra> quot;
  if (!completion_ready) {
    std::string why = p.mode == WitnessedSeminorm::Mode::Raw
                          ? "raw-mode seminorm has no concrete completion"
                      : !witness_ok ? "witness validation failed"
                      : !pb.pass    ? "Property (B) failed"
                                    : "C* axioms failed";
    skipped["build_quotient"] = why;
    skipped["verify_banach_star"] = why;
  } else {
    try {
      quot = build_quotient(a, p);
      dims["A_p"] = quot->dim;
      flags["quotient_built"] = true;
      auto bs = verify_banach_star(a, *quot, std::max(tol, 1e-9));
      flags["banach_star"] = bs.pass;
      residuals["banach_star"] = bs.max_residual;
      if (!bs.pass) witnesses["banach_star"] = bs.worst;
    } catch (const Error& e) {
      errors["build_quotient"] = e.what();
      flags["quotient_built"] = false;
      skipped["verify_banach_star"] = "quotient construction failed";
    }
  }

  // --- representation ---
  if (!quot) {
    for (const char* k :
         {"build_induced", "check_quasi_rep", "check_star_rep",
          "classify_well_behaved"})
      skipped[k] = "no quotient available";
  } else {
    ConcreteRep pi = witness_rep(*quot);
    flags["pi_faithful"] = pi.faithful;
    residuals["pi_star_homomorphism"] = rep_residual(*quot, pi);
    dims["H_Pi"] = pi.hilbert_dim;
    try {
      QuasiRep qr = build_induced(a, p, *quot, pi);
      dims["D_pi"] = qr.dim();
      dims["H_pi"] = static_cast<int>(qr.closure_basis.cols());
      flags["np_square_span_equal"] = qr.square_span_equal;
      residuals["induced_solve"] = qr.solve_residual;
      if (qr.zero_rep) rep["zero_rep_warning"] = true;

      auto qrep = check_quasi_rep(a, qr, std::max(tol, 1e-9));
      flags["quasi_rep"] = qrep.pass;
      residuals["quasi_rep"] = qrep.max_residual;
      if (!qrep.pass) witnesses["quasi_rep"] = qrep.worst;
      auto srep = check_star_rep(a, qr, std::max(tol, 1e-9));
      flags["star_rep"] = srep.pass;
      residuals["star_rep"] = srep.max_residual;
      if (!srep.pass) witnesses["star_rep"] = srep.worst;
      flags["representable"] = srep.pass && pi.faithful;

      auto wb = classify_well_behaved(a, p, *quot, pi, qr, tol);
      flags["well_behaved"] = wb.well_behaved;
      flags["strongly_nondegenerate"] = wb.strongly_nondegenerate;
      flags["norm_equality"] = wb.norm_equality;
      flags["commutant_equality"] = wb.commutant_equality;
      flags["commutant_invariance"] = wb.commutant_invariance;
      flags["weakly_semifinite"] =
          wb.well_behaved || (wb.strongly_nondegenerate && wb.norm_equality);
      residuals["norm_equality"] = wb.norm_residual;
      residuals["commutant_equality"] = wb.commutant_residual;
      dims["commutant"] = wb.commutant_dim;

      // Left-ideal structure of tilde(N_p) and the induced norm bounds.
      residuals["tilde_np_left_ideal"] = left_ideal_residual(a, p, *quot, np);
      flags["tilde_np_left_ideal"] =
          residuals["tilde_np_left_ideal"].get<double>() <= std::max(tol, 1e-10);
      double bound = 0.0, eq = 0.0;
      for (int g : p.domain_global_indices(a)) {
        Element x = a.basis_element(g);
        double nx = operator_norm(qr.op_of(a, x));
        bound = std::max(bound, nx - evaluate(a, p, x));
      }
      for (const auto& s : np.sectors)
        for (int i = 0; i < a.sector(s).dim; ++i) {
          Element x = a.basis_element(a.global_index(s, i));
          eq = std::max(eq, std::abs(operator_norm(qr.op_of(a, x)) -
                                     evaluate(a, p, x)));
        }
      residuals["induced_norm_slack"] = bound;
      residuals["induced_norm_equality_on_Np"] = eq;
      flags["induced_norm_bounds"] = bound <= 1e-9 && eq <= 1e-9;

      if (opts.alt_domain_diag) {
        InducedOptions io;
        io.alt_domain = true;
        io.throw_on_inconsistent = false;
        QuasiRep alt = build_induced(a, p, *quot, pi, io);
        rep["alt_domain"] =
            Json{{"dim", alt.dim()},
                 {"solve_residual", alt.solve_residual},
                 {"action_well_defined",
                  alt.solve_residual <= Tolerances{}.solve_rel}};
      }
    } catch (const IllDefinedActionError& e) {
      errors["build_induced"] = std::string("IllDefinedActionError: ") + e.what();
      for (const char* k :
           {"check_quasi_rep", "check_star_rep", "classify_well_behaved"})
        skipped[k] = "induced action is ill-defined";
    }

    // Supplied Pi (validated), its classification, and the recovery of a
    // well-behaved restriction.
    if (inst.alt_pi) {
      Json ap = Json::object();
      try {
        ConcreteRep pi2 = supplied_rep(a, p, *quot, inst.alt_pi->matrices,
                                       inst.alt_pi->dim, std::max(tol, 1e-9));
        ap["faithful"] = pi2.faithful;
        QuasiRep qr2 = build_induced(a, p, *quot, pi2);
        auto wb2 = classify_well_behaved(a, p, *quot, pi2, qr2, tol);
        ap["well_behaved"] = wb2.well_behaved;
        ap["strongly_nondegenerate"] = wb2.strongly_nondegenerate;
        ap["norm_equality"] = wb2.norm_equality;
        ap["H_Pi"] = pi2.hilbert_dim;
        ap["H_pi"] = qr2.dim();
        if (wb2.strongly_nondegenerate && wb2.norm_equality) {
          auto rr = restrict_to_well_behaved(a, p, *quot, pi2, qr2, tol);
          auto wb3 =
              classify_well_behaved(a, p, *quot, rr.pi_wb, rr.rep, tol);
          ap["restricted_well_behaved"] = wb3.well_behaved;
          ap["restriction_residual"] = rr.restriction_residual;
        }
      } catch (const Error& e) {
        ap["error"] = e.what();
      }
      rep["alt_pi"] = ap;
    }
  }

  rep["flags"] = flags;
  rep["residuals"] = residuals;
  rep["skipped"] = skipped;
  rep["errors"] = errors;
  rep["witnesses"] = witnesses;
  rep["dimensions"] = dims;
  return rep;
}

Json run_reverse(const Instance& inst, const AuditOptions& opts) {
  const double tol = opts.tol_override > 0 ? opts.tol_override : inst.tol;
  if (!inst.tower) throw PreconditionError("tower required");

  Json rep;
  rep["schema_version"] = 1;
  rep["kind"] = "reverse";
  if (opts.with_timestamp) rep["timestamp"] = iso_timestamp();
  rep["instance"] = instance_header(inst, tol);

  TruncationTower t = realize_tower(inst);
  Json tower;
  tower["depth"] = t.depth();
  Json ldims = Json::array();
  for (const TowerLevel& l : t.levels) ldims.push_back(l.hilbert_dim);
  tower["level_dims"] = ldims;
  AxiomReport emb = verify_tower(t, tol);
  tower["embedding_residual"] = emb.max_residual;
  tower["embeddings_coherent"] = emb.pass;
  rep["tower"] = tower;

  BoundedPart bp = detect_bounded_part(t);
  Json bounded = Json::object();
  for (const auto& [sec, prof] : bp.profiles) {
    Json e{{"detected_bounded", prof.detected_bounded},
           {"heuristic", true},
           {"profile", prof.values},
           {"limit_norm", prof.limit_norm}};
    if (t.declared_bounded.count(sec)) {
      e["declared_bounded"] = prof.declared;
      e["matches_declared"] = prof.matches_declared;
    }
    bounded[sec] = e;
  }
  rep["bounded"] = bounded;
  rep["declared_flags_match"] = bp.all_match_declared;

  Json flags = Json::object();
  flags["declared_flags_match"] = bp.all_match_declared;
  WitnessedSeminorm rl = build_rL_pi(t, bp);
  rep["rL_domain"] = rl.domain;
  const PartialStarAlgebra& a_top = t.top().algebra;

  if (rl.domain.empty()) {
    rep["sigmaB"] = Json::array();
    rep["sigmaB_trivial"] = true;  // pi itself fails Property (B)
    rep["flags"] = flags;
    return rep;
  }
  auto sigma = select_sigmaB(a_top, rl);
  Json sblist = Json::array();
  for (const auto& s : sigma) sblist.push_back(s.domain);
  rep["sigmaB"] = sblist;
  rep["sigmaB_trivial"] = sigma.empty();

  if (!sigma.empty()) {
    // The largest member carries the natural-representation verification.
    const WitnessedSeminorm& rpi = sigma.back();
    NaturalRepReport nat = build_natural_rep(a_top, rpi, t, tol);
    Json p42{{"domain", rpi.domain},
             {"built", nat.built},
             {"trivial_Np", nat.trivial_Np}};
    if (nat.built) {
      p42["agreement_residual"] = nat.agreement_residual;
      p42["norm_residual"] = nat.norm_residual;
      p42["star_rep"] = nat.star_rep;
      p42["pass"] = nat.agreement_residual <= 1e-9 && nat.star_rep;
      flags["prop42_agreement"] = p42["pass"];
    }
    rep["prop42"] = p42;
  } else {
    rep["prop42"] = Json{{"skipped", "Sigma_B(pi) is empty"}};
  }

  // The containment check runs on the stored instance itself.
  try {
    QuotientCStarAlgebra q = build_quotient(inst.algebra, inst.seminorm);
    ConcreteRep pi = witness_rep(q);
    QuasiRep qr = build_induced(inst.algebra, inst.seminorm, q, pi);
    Prop43Report p43 =
        verify_prop43(inst.algebra, inst.seminorm, q, pi, qr, tol);
    rep["prop43"] = Json{{"pass", p43.pass},
                         {"no_admissible_extension", p43.no_admissible_extension},
                         {"containment_residual", p43.containment_residual},
                         {"h_equal", p43.h_equal},
                         {"detail", p43.detail}};
    flags["prop43_containment"] = p43.pass;
  } catch (const Error& e) {
    rep["prop43"] = Json{{"skipped", e.what()}};
  }
  rep["flags"] = flags;
  return rep;
}

}  // namespace pstar
