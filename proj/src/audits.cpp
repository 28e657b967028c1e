#include "pstar/audits.hpp"

#include <sstream>
#include <vector>

namespace pstar {

namespace {

double diff_residual(const std::optional<Element>& lhs,
                     const std::optional<Element>& rhs) {
  if (!lhs || !rhs) return 0.0;  // callers gate on definedness
  return (*lhs - *rhs).max_abs();
}

/// Per-outer-index residual table reduced serially afterwards, so the
/// parallel and serial paths produce bit-identical reports.
template <typename Body>
AxiomReport reduce_over_outer(int n, Exec exec, double tol, Body&& body) {
  std::vector<double> res(n, 0.0);
  std::vector<std::string> worst(n);
  std::vector<long> counts(n, 0);
  const bool par = exec == Exec::Parallel;
#pragma omp parallel for schedule(static) if (par)
  for (int i = 0; i < n; ++i) body(i, res[i], worst[i], counts[i]);
  AxiomReport rep;
  for (int i = 0; i < n; ++i) {
    rep.checked += counts[i];
    if (res[i] > rep.max_residual) {
      rep.max_residual = res[i];
      rep.worst = worst[i];
    }
  }
  rep.pass = rep.max_residual <= tol;
  return rep;
}

std::vector<int> sector_basis_indices(const PartialStarAlgebra& a,
                                      const std::vector<std::string>& secs) {
  std::vector<int> out;
  for (const auto& s : secs)
    for (int i = 0; i < a.sector(s).dim; ++i)
      out.push_back(a.global_index(s, i));
  return out;
}

}  // namespace

AxiomReport check_property_A(const PartialStarAlgebra& a, double tol,
                             Exec exec) {
  const auto r_secs = a.universal_right_multipliers();
  const auto rbasis = sector_basis_indices(a, r_secs);
  const int n = a.basis_count();
  return reduce_over_outer(
      n, exec, tol,
      [&](int ga, double& res, std::string& worst, long& count) {
        Element ea = a.basis_element(ga);
        for (int gx : rbasis) {
          Element ex = a.basis_element(gx);
          auto ax = a.multiply(ea, ex);  // defined: x in R(A)
          for (int gy : rbasis) {
            Element ey = a.basis_element(gy);
            Element eys = a.star(ey);
            // (1) y*(ax) = (y*a)x where defined.
            auto ys_ax = ax ? a.multiply(eys, *ax) : std::nullopt;
            auto ys_a = a.multiply(eys, ea);
            auto ysa_x = ys_a ? a.multiply(*ys_a, ex) : std::nullopt;
            if (ys_ax && ysa_x) {
              ++count;
              double d = diff_residual(ys_ax, ysa_x);
              if (d > res) {
                res = d;
                worst = "y*(ax)=(y*a)x at (a=" + a.basis_name(ga) +
                        ", x=" + a.basis_name(gx) + ", y=" + a.basis_name(gy) +
                        ")";
              }
            }
            // (2) a(xy) = (ax)y where defined.
            auto xy = a.multiply(ex, ey);
            auto a_xy = xy ? a.multiply(ea, *xy) : std::nullopt;
            auto ax_y = ax ? a.multiply(*ax, ey) : std::nullopt;
            if (a_xy && ax_y) {
              ++count;
              double d = diff_residual(a_xy, ax_y);
              if (d > res) {
                res = d;
                worst = "a(xy)=(ax)y at (a=" + a.basis_name(ga) +
                        ", x=" + a.basis_name(gx) + ", y=" + a.basis_name(gy) +
                        ")";
              }
            }
          }
        }
      });
}

AxiomReport check_semi_associative(const PartialStarAlgebra& a, double tol,
                                   Exec exec) {
  const auto r_secs = a.universal_right_multipliers();
  const auto rbasis = sector_basis_indices(a, r_secs);
  const int n = a.basis_count();
  constexpr double kDefinednessViolation = 1.0;
  return reduce_over_outer(
      n, exec, tol,
      [&](int gx, double& res, std::string& worst, long& count) {
        Element ex = a.basis_element(gx);
        const std::string xs = a.basis_ref(gx).first;
        for (int gy = 0; gy < n; ++gy) {
          const std::string ys = a.basis_ref(gy).first;
          if (!a.product_defined(xs, ys)) continue;  // y not in R(x)
          Element ey = a.basis_element(gy);
          auto xy = a.multiply(ex, ey);
          for (int gz : rbasis) {
            Element ez = a.basis_element(gz);
            auto yz = a.multiply(ey, ez);  // defined: z in R(A)
            ++count;
            auto x_yz = yz ? a.multiply(ex, *yz) : std::nullopt;
            if (!x_yz) {
              // y*z left R(x): a genuine violation of semi-associativity.
              if (kDefinednessViolation > res) {
                res = kDefinednessViolation;
                worst = "y*z not a right multiplier of x at (x=" +
                        a.basis_name(gx) + ", y=" + a.basis_name(gy) +
                        ", z=" + a.basis_name(gz) + ")";
              }
              continue;
            }
            auto xy_z = xy ? a.multiply(*xy, ez) : std::nullopt;
            if (!xy_z) continue;
            double d = diff_residual(xy_z, x_yz);
            if (d > res) {
              res = d;
              worst = "(xy)z=x(yz) at (x=" + a.basis_name(gx) +
                      ", y=" + a.basis_name(gy) + ", z=" + a.basis_name(gz) +
                      ")";
            }
          }
        }
      });
}

AxiomReport check_involution_compat(const PartialStarAlgebra& a, double tol,
                                    Exec exec) {
  const int n = a.basis_count();
  return reduce_over_outer(
      n, exec, tol,
      [&](int gx, double& res, std::string& worst, long& count) {
        Element ex = a.basis_element(gx);
        Element xss = a.star(a.star(ex));
        ++count;
        double d = (xss - ex).max_abs();
        if (d > res) {
          res = d;
          worst = "x** = x at x=" + a.basis_name(gx);
        }
        for (int gy = 0; gy < n; ++gy) {
          Element ey = a.basis_element(gy);
          auto xy = a.multiply(ex, ey);
          if (!xy) continue;
          auto ysxs = a.multiply(a.star(ey), a.star(ex));
          ++count;
          if (!ysxs) {
            if (1.0 > res) {
              res = 1.0;
              worst = "(y*,x*) undefined while (x,y) defined at (x=" +
                      a.basis_name(gx) + ", y=" + a.basis_name(gy) + ")";
            }
            continue;
          }
          double e = (a.star(*xy) - *ysxs).max_abs();
          if (e > res) {
            res = e;
            worst = "(xy)* = y*x* at (x=" + a.basis_name(gx) +
                    ", y=" + a.basis_name(gy) + ")";
          }
        }
      });
}

AxiomReport check_unit(const PartialStarAlgebra& a, double tol) {
  AxiomReport rep;
  if (!a.unit()) {
    rep.pass = true;
    return rep;
  }
  const Element& e = *a.unit();
  auto track = [&](double d, const std::string& what) {
    ++rep.checked;
    if (d > rep.max_residual) {
      rep.max_residual = d;
      rep.worst = what;
    }
  };
  track((a.star(e) - e).max_abs(), "e* = e");
  for (int g = 0; g < a.basis_count(); ++g) {
    Element x = a.basis_element(g);
    auto ex = a.multiply(e, x);
    auto xe = a.multiply(x, e);
    if (!ex || !xe) {
      track(1.0, "unit not multipliable with " + a.basis_name(g));
      continue;
    }
    track((*ex - x).max_abs(), "ex = x at x=" + a.basis_name(g));
    track((*xe - x).max_abs(), "xe = x at x=" + a.basis_name(g));
  }
  rep.pass = rep.max_residual <= tol;
  return rep;
}

}  // namespace pstar
