#pragma once

#include <cstdint>
#include <vector>

#include "cloneq/tensor.hpp"

namespace cloneq {

// ||x||_Q = (d * lambda_max(S_x) - ||x||_1) / (d^2 - 1), via the reduced
// eigenvalue route. A norm on R^N for every d >= 2.
double q_norm(const std::vector<double>& x, int d);

// Closed form for N = 2:
// lambda = (d(|x1|+|x2|) + sqrt(d^2 (|x1|-|x2|)^2 + 4 |x1 x2|)) / 2.
double q_norm_closed_n2(double x1, double x2, int d);

struct RegionVerdict {
  double dual_norm = 0.0;
  bool inside = false;  // dual_norm <= 1 + tol
  double margin = 0.0;  // 1 - dual_norm
  std::vector<double> witness_alpha;  // maximizing direction, on the simplex
};

struct DualNormOptions {
  int resolution = 0;     // grid points per simplex axis; 0 picks a default by N
  int refine_iters = 50;  // pattern-search iterations from the top grid cells
  double tol = 1e-6;      // inside threshold on the dual norm
};

// ||p||_Q* = sup_{x != 0} <p, x> / ||x||_Q, evaluated by a simplex grid scan
// plus local refinement of the best cells. N > 6 is refused (resolution
// guard); p is reduced to |p| first.
RegionVerdict dual_q_norm(const std::vector<double>& p, int d,
                          const DualNormOptions& opts = {});

// Membership of p in the admissible-marginal region: ||p||_Q* <= 1 + tol.
// Requires p in [0,1]^N.
RegionVerdict in_region(const std::vector<double>& p, int d, double tol = 1e-6);

// Residual of the trade-off relation, RHS - LHS of
//   N + (d^2-1) sum p_i = d(d-1) + (sum_i sqrt((d^2-1) p_i + 1))^2 / (N+d-1).
// Zero on the optimal surface; positive strictly inside it.
double kay_residual(const std::vector<double>& p, int d);

// Marginal vector of the optimal cloner for a normalized weight vector beta:
// p_i = (d s_i^2 - 1) / (d^2 - 1) with s_i = (d-1) beta_i + sum_j beta_j.
std::vector<double> optimal_surface_point(const std::vector<double>& beta, int d);

// f_i = ((d-1) p_i + 1) / d and its inverse.
std::vector<double> fidelities_from_p(const std::vector<double>& p, int d);
std::vector<double> p_from_fidelities(const std::vector<double>& f, int d);

// Invert the fidelity map on the optimal surface:
// beta_i = (sqrt((d+1) f_i - 1) - (1/(N+d-1)) sum_j sqrt((d+1) f_j - 1))/(d-1).
// The result is put back on the normalization surface, which is a no-op for
// on-surface inputs. Requires f_i >= 1/(d+1); f identically 1/(d+1) is
// rejected (the zero vector cannot be normalized).
std::vector<double> fidelities_to_beta(const std::vector<double>& f, int d, int N);

struct BoundaryRow {
  std::vector<double> beta;
  std::vector<double> p;
  double dual_norm = 0.0;
  double kay_residual = 0.0;
  bool feasible = true;  // kay_residual <= +1e-9; never silently clipped
};

// Deterministic sweep of the optimal surface: directions on the unit simplex
// at `grid` points per axis, rescaled to the beta normalization.
std::vector<BoundaryRow> boundary_export(int d, int N, int grid,
                                         const DualNormOptions& opts = {});

struct ExtensionReport {
  std::vector<double> extended;  // (p, 0)
  double residual = 0.0;         // kay_residual of the extension at N
  bool on_surface = false;       // |residual| <= tol
};

// Append a fully depolarizing clone to a surface point of the N-1 problem and
// report whether the extension still lies on the N surface. The input must be
// on the N-1 surface within surface_tol.
ExtensionReport extension_check(const std::vector<double>& p, int d,
                                double surface_tol = 1e-9);

}  // namespace cloneq
