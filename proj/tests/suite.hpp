#pragma once

#include "pstar/instances.hpp"

namespace pstar::testing {

/// The standard instance collection most property-style tests sweep over.
inline std::vector<Instance> standard_suite() {
  std::vector<Instance> out;
  out.push_back(build_weighted_diagonal(1, 1));
  out.push_back(build_weighted_diagonal(3, 1));
  out.push_back(build_weighted_diagonal(4, 1, "polygrid:1"));
  out.push_back(build_compact_operator(2));
  out.push_back(build_compact_operator(4));
  out.push_back(build_hermite_number(3));
  out.push_back(build_hermite_number(4));
  out.push_back(build_cq_spectral({1, 1, 2}, {1, 2, 4}));
  out.push_back(build_quasi_star(2));
  return out;
}

}  // namespace pstar::testing
