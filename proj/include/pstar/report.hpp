#pragma once

#include "pstar/instances.hpp"
#include "pstar/io.hpp"

namespace pstar {

struct AuditOptions {
  double tol_override = -1.0;  // < 0: use the instance tolerance
  bool with_timestamp = true;
  bool alt_domain_diag = true;
  Exec exec = Exec::Parallel;
};

/// Full audit pipeline: algebra axioms, seminorm axioms, completion,
/// induced representation and its classification. Checks whose
/// preconditions fail are recorded under "skipped" rather than defaulted;
/// no flag in the report defaults to true.
Json run_audit(const Instance& inst, const AuditOptions& opts = {});

/// Tower pipeline: boundedness detection, r^L_pi, Sigma_B sweep, the natural
/// representation agreement and the containment of the induced representation
/// in the natural one.
/// Throws PreconditionError when the instance has no tower.
Json run_reverse(const Instance& inst, const AuditOptions& opts = {});

}  // namespace pstar
