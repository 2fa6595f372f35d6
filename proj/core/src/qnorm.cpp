#include "cloneq/qnorm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cloneq/spectral.hpp"
#include "grid.hpp"

namespace cloneq {

namespace {

void check_dim(int d) {
  if (d < 2) throw std::invalid_argument("local dimension must be at least 2");
}

double l1_norm(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += std::abs(v);
  return s;
}

int default_resolution(int n) {
  switch (n) {
    case 2: return 200;
    case 3: return 60;
    case 4: return 24;
    case 5: return 15;
    default: return 12;
  }
}

}  // namespace

double q_norm(const std::vector<double>& x, int d) {
  check_dim(d);
  if (x.empty()) throw std::invalid_argument("weight vector must be nonempty");
  return (d * lambda_max_reduced(x, d) - l1_norm(x)) / (double(d) * d - 1.0);
}

double q_norm_closed_n2(double x1, double x2, int d) {
  check_dim(d);
  const double a = std::abs(x1), b = std::abs(x2);
  const double lambda =
      0.5 * (d * (a + b) + std::sqrt(double(d) * d * (a - b) * (a - b) + 4.0 * a * b));
  return (d * lambda - (a + b)) / (double(d) * d - 1.0);
}

RegionVerdict dual_q_norm(const std::vector<double>& p, int d,
                          const DualNormOptions& opts) {
  check_dim(d);
  const int N = static_cast<int>(p.size());
  if (N == 0) throw std::invalid_argument("input vector must be nonempty");
  if (N > 6)
    throw dimension_error("dual norm grid search supports at most 6 components");

  std::vector<double> q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[i] = std::abs(p[i]);

  RegionVerdict verdict;
  if (N == 1) {
    verdict.dual_norm = q[0];
    verdict.witness_alpha = {1.0};
  } else {
    const int res = opts.resolution > 0 ? opts.resolution : default_resolution(N);
    const auto value = [&](const std::vector<double>& alpha) {
      double dot = 0.0;
      for (int i = 0; i < N; ++i) dot += q[i] * alpha[i];
      if (dot == 0.0) return 0.0;
      return dot / q_norm(alpha, d);
    };

    // coarse scan over the weight simplex, keeping the best few cells
    struct Cell {
      double val;
      std::vector<double> alpha;
    };
    std::vector<Cell> top;
    std::vector<double> alpha(N);
    detail::for_each_composition(res, N, [&](const std::vector<int>& comp) {
      for (int i = 0; i < N; ++i) alpha[i] = double(comp[i]) / res;
      const double v = value(alpha);
      if (top.size() < 5) {
        top.push_back({v, alpha});
        std::sort(top.begin(), top.end(),
                  [](const Cell& a, const Cell& b) { return a.val > b.val; });
      } else if (v > top.back().val) {
        top.back() = {v, alpha};
        std::sort(top.begin(), top.end(),
                  [](const Cell& a, const Cell& b) { return a.val > b.val; });
      }
    });

    // pattern search along simplex edge directions, shrinking the step
    double best_val = 0.0;
    std::vector<double> best_alpha = top.front().alpha;
    for (auto& cell : top) {
      std::vector<double> a = cell.alpha;
      double cur = cell.val;
      double h = 1.0 / res;
      for (int it = 0; it < opts.refine_iters; ++it) {
        bool improved = false;
        for (int i = 0; i < N; ++i) {
          for (int j = 0; j < N; ++j) {
            if (i == j || a[j] <= 0.0) continue;
            const double step = std::min(h, a[j]);
            std::vector<double> cand = a;
            cand[i] += step;
            cand[j] -= step;
            const double v = value(cand);
            if (v > cur) {
              cur = v;
              a = std::move(cand);
              improved = true;
            }
          }
        }
        if (!improved) h *= 0.5;
      }
      if (cur > best_val) {
        best_val = cur;
        best_alpha = a;
      }
    }
    verdict.dual_norm = best_val;
    verdict.witness_alpha = best_alpha;
  }

  verdict.inside = verdict.dual_norm <= 1.0 + opts.tol;
  verdict.margin = 1.0 - verdict.dual_norm;
  return verdict;
}

RegionVerdict in_region(const std::vector<double>& p, int d, double tol) {
  for (double v : p)
    if (v < 0.0 || v > 1.0)
      throw std::invalid_argument("marginal weights must lie in [0, 1]");
  DualNormOptions opts;
  opts.tol = tol;
  return dual_q_norm(p, d, opts);
}

double kay_residual(const std::vector<double>& p, int d) {
  check_dim(d);
  if (p.empty()) throw std::invalid_argument("input vector must be nonempty");
  const int N = static_cast<int>(p.size());
  const double dd = double(d) * d - 1.0;
  double sum_p = 0.0, sum_rt = 0.0;
  for (double v : p) {
    const double arg = dd * v + 1.0;
    if (arg < 0.0)
      throw std::invalid_argument("trade-off residual undefined below -1/(d^2-1)");
    sum_p += v;
    sum_rt += std::sqrt(arg);
  }
  const double lhs = N + dd * sum_p;
  const double rhs = d * (d - 1.0) + sum_rt * sum_rt / (N + d - 1.0);
  return rhs - lhs;
}

std::vector<double> optimal_surface_point(const std::vector<double>& beta, int d) {
  check_dim(d);
  if (std::abs(beta_normalization_residual(beta, d)) > 1e-9)
    throw std::invalid_argument("beta is not normalized");
  const double sum = [&] {
    double s = 0.0;
    for (double b : beta) s += b;
    return s;
  }();
  std::vector<double> p(beta.size());
  for (std::size_t i = 0; i < beta.size(); ++i) {
    const double s = (d - 1) * beta[i] + sum;
    p[i] = (d * s * s - 1.0) / (double(d) * d - 1.0);
  }
  return p;
}

std::vector<double> fidelities_from_p(const std::vector<double>& p, int d) {
  check_dim(d);
  std::vector<double> f(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) f[i] = ((d - 1) * p[i] + 1.0) / d;
  return f;
}

std::vector<double> p_from_fidelities(const std::vector<double>& f, int d) {
  check_dim(d);
  std::vector<double> p(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) p[i] = (d * f[i] - 1.0) / (d - 1.0);
  return p;
}

std::vector<double> fidelities_to_beta(const std::vector<double>& f, int d, int N) {
  check_dim(d);
  if (static_cast<int>(f.size()) != N)
    throw std::invalid_argument("fidelity vector must have N entries");
  std::vector<double> root(f.size());
  double sum_root = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double arg = (d + 1.0) * f[i] - 1.0;
    if (arg < -1e-12)
      throw std::invalid_argument("fidelities below 1/(d+1) are not invertible");
    root[i] = std::sqrt(std::max(arg, 0.0));
    sum_root += root[i];
  }
  std::vector<double> beta(f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    beta[i] = (root[i] - sum_root / (N + d - 1.0)) / (d - 1.0);
  // a no-op on the optimal surface; rejects the all-zero inversion
  return rescale_to_beta_normalization(std::move(beta), d);
}

std::vector<BoundaryRow> boundary_export(int d, int N, int grid,
                                         const DualNormOptions& opts) {
  check_dim(d);
  if (N < 1) throw std::invalid_argument("N must be at least 1");
  if (grid < 1) throw std::invalid_argument("grid must be at least 1");
  if (detail::composition_count(grid, N) > 2000000)
    throw dimension_error("boundary grid too large");

  std::vector<BoundaryRow> rows;
  rows.reserve(static_cast<std::size_t>(detail::composition_count(grid, N)));
  std::vector<double> u(N);
  detail::for_each_composition(grid, N, [&](const std::vector<int>& comp) {
    for (int i = 0; i < N; ++i) u[i] = double(comp[i]) / grid;
    BoundaryRow row;
    row.beta = rescale_to_beta_normalization(u, d);
    row.p = optimal_surface_point(row.beta, d);
    row.dual_norm = dual_q_norm(row.p, d, opts).dual_norm;
    row.kay_residual = kay_residual(row.p, d);
    row.feasible = row.kay_residual <= 1e-9;
    rows.push_back(std::move(row));
  });
  return rows;
}

ExtensionReport extension_check(const std::vector<double>& p, int d,
                                double surface_tol) {
  check_dim(d);
  if (p.empty()) throw std::invalid_argument("input vector must be nonempty");
  const double base = kay_residual(p, d);
  if (std::abs(base) > surface_tol)
    throw std::invalid_argument("input is not on the optimal surface of its own size");

  ExtensionReport report;
  report.extended = p;
  report.extended.push_back(0.0);
  report.residual = kay_residual(report.extended, d);
  report.on_surface = std::abs(report.residual) <= surface_tol;
  return report;
}

}  // namespace cloneq
