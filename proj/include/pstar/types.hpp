#pragma once

#include <Eigen/Dense>
#include <complex>

namespace pstar {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Numerical tolerances shared across the library.
struct Tolerances {
  double entry = 1e-10;        // absolute, on max-entry residuals
  double rank_rel = 1e-12;     // relative, pivoted decompositions
  double span_sv = 1e-10;      // singular value threshold for span/rank tests
  double solve_rel = 1e-8;     // relative, least-squares consistency
};

inline constexpr double kDefaultTol = 1e-10;

}  // namespace pstar
