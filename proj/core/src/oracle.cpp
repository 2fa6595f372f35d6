#include "cloneq/oracle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cloneq/cloner.hpp"
#include "cloneq/permutation.hpp"
#include "cloneq/qnorm.hpp"
#include "cloneq/random.hpp"
#include "cloneq/spectral.hpp"
#include "cloneq/tensor.hpp"
#include "grid.hpp"

namespace cloneq {

namespace {

// Grid resolution per support size, tuned so the chord-to-surface gap stays
// well inside the 1e-4 agreement band.
int default_resolution(int support) {
  switch (support) {
    case 1: return 1;
    case 2: return 1024;
    case 3: return 128;
    case 4: return 24;
    case 5: return 12;
    default: return 8;
  }
}

void append_surface_samples(int d, int N, const std::vector<int>& support,
                            int resolution, std::vector<std::vector<double>>& out) {
  const int m = static_cast<int>(support.size());
  detail::for_each_composition(resolution, m, [&](const std::vector<int>& comp) {
    std::vector<double> u(m);
    for (int i = 0; i < m; ++i) u[i] = double(comp[i]) / resolution;
    const std::vector<double> beta = rescale_to_beta_normalization(u, d);
    const std::vector<double> ps = optimal_surface_point(beta, d);
    std::vector<double> p(N, 0.0);
    for (int i = 0; i < m; ++i) p[support[i]] = ps[i];
    out.push_back(std::move(p));
  });
}

}  // namespace

HullModel build_hull_model(int d, int N, int surface_budget) {
  if (d < 2) throw std::invalid_argument("d must be at least 2");
  if (N < 1) throw std::invalid_argument("N must be at least 1");

  int full_res = default_resolution(N);
  if (surface_budget > 0) {
    full_res = 1;
    while (detail::composition_count(full_res, N) < surface_budget) ++full_res;
  }

  HullModel model;
  model.d = d;
  model.N = N;
  model.vertices.push_back(std::vector<double>(N, 0.0));

  // Every nonempty support pattern contributes its own surface; the embedded
  // lower-support surfaces supply the flat faces of the region, which the
  // full-support surface alone cannot reach.
  for (unsigned mask = 1; mask < (1u << N); ++mask) {
    std::vector<int> support;
    for (int i = 0; i < N; ++i)
      if (mask & (1u << i)) support.push_back(i);
    const int m = static_cast<int>(support.size());
    const int res = (m == N) ? full_res : default_resolution(m);
    append_surface_samples(d, N, support, res, model.vertices);
  }
  return model;
}

bool hull_membership(const std::vector<double>& p, const HullModel& model,
                     double tol) {
  if (static_cast<int>(p.size()) != model.N)
    throw std::invalid_argument("p must have N entries");
  const int rows = model.N + 1;  // coordinates plus the convexity row
  const std::int64_t cols = static_cast<std::int64_t>(model.vertices.size());

  // Phase-one simplex on: V lambda = p, 1^T lambda = 1, lambda >= 0.
  // Tableau columns: lambda | artificials | rhs.
  Eigen::MatrixXd t(rows + 1, cols + rows + 1);
  t.setZero();
  for (std::int64_t j = 0; j < cols; ++j) {
    for (int i = 0; i < model.N; ++i) t(i, j) = model.vertices[j][i];
    t(model.N, j) = 1.0;
  }
  for (int i = 0; i < rows; ++i) {
    t(i, cols + i) = 1.0;
    t(i, cols + rows) = (i < model.N) ? p[i] : 1.0;
    if (t(i, cols + rows) < 0.0) {
      t.row(i) = -t.row(i);
      t(i, cols + i) = 1.0;  // keep the artificial column positive
    }
  }
  // Reduced-cost row for min of the artificial sum, basis = artificials.
  for (int i = 0; i < rows; ++i) t.row(rows) -= t.row(i);
  for (int i = 0; i < rows; ++i) t(rows, cols + i) = 0.0;

  std::vector<std::int64_t> basis(rows);
  for (int i = 0; i < rows; ++i) basis[i] = cols + i;

  // Dantzig pricing for speed; a persistent switch to Bland's rule after a
  // stall guarantees termination. Deterministic either way.
  const double eps = 1e-12;
  bool bland = false;
  int stall = 0;
  double last_obj = t(rows, cols + rows);
  for (int iter = 0; iter < 100000; ++iter) {
    std::int64_t enter = -1;
    if (bland) {
      for (std::int64_t j = 0; j < cols + rows; ++j)
        if (t(rows, j) < -eps) { enter = j; break; }
    } else {
      double most = -eps;
      for (std::int64_t j = 0; j < cols + rows; ++j)
        if (t(rows, j) < most) { most = t(rows, j); enter = j; }
    }
    if (enter < 0) break;

    int leave = -1;
    double best = 0.0;
    for (int i = 0; i < rows; ++i) {
      if (t(i, enter) <= eps) continue;
      const double ratio = t(i, cols + rows) / t(i, enter);
      if (leave < 0 || ratio < best - eps ||
          (ratio < best + eps && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) break;  // unbounded can't happen here, belt only

    t.row(leave) /= t(leave, enter);
    for (int i = 0; i <= rows; ++i) {
      if (i == leave) continue;
      const double f = t(i, enter);
      if (f != 0.0) t.row(i) -= f * t.row(leave);
    }
    basis[leave] = enter;

    if (!bland) {
      const double obj = t(rows, cols + rows);
      stall = (obj > last_obj - eps) ? stall + 1 : 0;
      last_obj = obj;
      if (stall > 2 * rows + 10) bland = true;
    }
  }

  const double misfit = -t(rows, cols + rows);
  return misfit <= tol;
}

AgreementReport agreement_report(int d, int N, int trials, std::uint64_t seed,
                                 double band) {
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  const HullModel model = build_hull_model(d, N);
  Rng rng(seed);

  AgreementReport report;
  report.d = d;
  report.N = N;
  report.trials = trials;
  report.rows.reserve(trials);

  for (int trial = 0; trial < trials; ++trial) {
    AgreementRow row;
    row.p.resize(N);
    for (int i = 0; i < N; ++i) row.p[i] = rng.uniform();

    const RegionVerdict verdict = dual_q_norm(row.p, d);
    row.dual_norm = verdict.dual_norm;
    row.inside_dual = verdict.inside;
    row.inside_hull = hull_membership(row.p, model);
    row.kay = kay_residual(row.p, d);
    row.in_band = std::abs(row.dual_norm - 1.0) <= band;

    if (!row.in_band && row.inside_dual != row.inside_hull)
      ++report.disagreements_outside_band;
    if (!row.inside_dual && row.kay > 0.0)
      ++report.rejected_with_positive_kay;
    report.rows.push_back(std::move(row));
  }
  return report;
}

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

// omega_{(0,1)} ⊗ Pi_sigma_hat on N+1 sites, sigma_hat acting on sites 2..N.
Matrix omega01_tensor(const Permutation& sigma_hat, int d, int N) {
  const TensorOperator om = omega_projector(d, 2, 0, 1);
  if (N == 1) return om.matrix();
  const TensorOperator rest = permutation_operator(sigma_hat, d);
  return tensor_product(om, rest).matrix();
}

}  // namespace

LemmaSuiteReport lemma_suite(int d, int N, double coeff_perturbation) {
  if (d < 2) throw std::invalid_argument("d must be at least 2");
  if (N < 1) throw std::invalid_argument("N must be at least 1");

  LemmaSuiteReport report;
  report.d = d;
  report.N = N;
  const double tol = 1e-10;
  const double scale = 1.0 + coeff_perturbation;
  const auto add = [&](const std::string& name, double residual) {
    report.checks.push_back(LemmaCheck{name, residual, tol, residual <= tol});
  };

  const std::int64_t side = tensor_side(d, N + 1);
  const auto perms = all_permutations(N + 1);

  // Deterministic generic coefficients and a generic rest vector.
  std::vector<double> beta(N);
  for (int i = 0; i < N; ++i) beta[i] = 1.0 + double(i + 1) / (N + 1);
  beta = rescale_to_beta_normalization(beta, d);
  Rng rng(12345);
  const TensorVector phi(d, N - 1, haar_pure_state(tensor_side(d, N - 1), rng));

  // Partially transposed permutations factor through a single pair projector:
  // Pi_sigma^G = Pi_(1a) (omega_{(0,1)} ⊗ Pi_sigma_hat) Pi_(1b).
  {
    double worst = 0.0;
    for (const auto& sigma : perms) {
      if (sigma(0) == 0) continue;
      const Matrix lhs = ptp_operator(sigma, d).matrix();
      const PtDecomposition dec = decompose_partial_transpose(sigma);
      const Matrix swap_a =
          permutation_operator(Permutation::transposition(N + 1, 1, dec.a), d).matrix();
      const Matrix swap_b =
          permutation_operator(Permutation::transposition(N + 1, 1, dec.b), d).matrix();
      const Matrix rhs = swap_a * omega01_tensor(dec.sigma_hat, d, N) * swap_b;
      worst = std::max(worst, max_abs(lhs - scale * rhs));
    }
    add("pt_decomposition", worst);
  }

  // Gram matrix of the pair vectors Omega_{(0,i)} ⊗ v with uniform rest:
  // d on the diagonal, 1 off it.
  {
    const double amp = 1.0 / std::sqrt(double(tensor_side(d, N - 1)));
    const TensorVector rest(
        d, N - 1, CVector::Constant(tensor_side(d, N - 1), amp));
    std::vector<CVector> g(N);
    for (int i = 0; i < N; ++i)
      g[i] = omega_embed(d, N + 1, 0, i + 1, rest).vector();
    double worst = 0.0;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        const double expected = (i == j) ? double(d) : 1.0;
        worst = std::max(worst,
                         std::abs(g[i].dot(g[j]) - Complex(scale * expected, 0.0)));
      }
    add("pair_gram", worst);
  }

  // Clone-side partial trace of one class sum is a multiple of the identity,
  // with an extra 1/d when the class is off-diagonal.
  {
    const double unit = [&] {
      double f = 1.0;
      for (int i = 2; i <= N - 1; ++i) f *= i;
      return f * sym_dim(N - 1, d);
    }();
    double worst = 0.0;
    for (int a = 1; a <= N; ++a)
      for (int b = 1; b <= N; ++b) {
        Matrix sum = Matrix::Zero(side, side);
        for (const auto& sigma : enumerate_sigma_ab(N, a, b))
          sum += ptp_operator(sigma, d).matrix();
        const Matrix traced =
            partial_trace(TensorOperator(d, N + 1, std::move(sum)), {0}).matrix();
        const double expected = (a == b) ? unit : unit / d;
        worst = std::max(
            worst, max_abs(traced - scale * expected * Matrix::Identity(d, d)));
      }
    add("class_partial_trace", worst);
  }

  // A whole class assembles into the pair projector against the symmetric
  // projector of the clones' complement.
  {
    double worst = 0.0;
    const Matrix core = omega01_tensor(Permutation::identity(std::max(N - 1, 1)), d, N);
    Matrix sym_core;
    if (N == 1) {
      sym_core = core;
    } else {
      const Matrix psym = symmetric_projector(N - 1, d).matrix();
      double f = 1.0;
      for (int i = 2; i <= N - 1; ++i) f *= i;
      sym_core = f * tensor_product(omega_projector(d, 2, 0, 1),
                                    TensorOperator(d, N - 1, psym))
                         .matrix();
    }
    for (int a = 1; a <= N; ++a)
      for (int b = 1; b <= N; ++b) {
        Matrix sum = Matrix::Zero(side, side);
        for (const auto& sigma : enumerate_sigma_ab(N, a, b))
          sum += ptp_operator(sigma, d).matrix();
        const Matrix swap_a =
            permutation_operator(Permutation::transposition(N + 1, 1, a), d).matrix();
        const Matrix swap_b =
            permutation_operator(Permutation::transposition(N + 1, 1, b), d).matrix();
        worst = std::max(worst, max_abs(sum - scale * (swap_a * sym_core * swap_b)));
      }
    add("class_assembly", worst);
  }

  // A partially transposed permutation maps one pair vector to another, with
  // the rest of the sites permuted by the composite of the cycle pieces.
  {
    double worst = 0.0;
    for (const auto& sigma : perms) {
      if (sigma(0) == 0) continue;
      const PtDecomposition dec = decompose_partial_transpose(sigma);
      const Matrix op = ptp_operator(sigma, d).matrix();
      for (int c = 1; c <= N; ++c) {
        const CVector in = omega_embed(d, N + 1, 0, c, phi).vector();
        TensorVector mapped = phi;
        if (N > 1) {
          const Permutation comp = sigma_hat_composite(dec.sigma_hat, dec.a, dec.b, c);
          mapped = TensorVector(
              d, N - 1, permutation_operator(comp, d).matrix() * phi.vector());
        }
        const double factor = (dec.b == c) ? double(d) : 1.0;
        const CVector out = omega_embed(d, N + 1, 0, dec.a, mapped).vector();
        worst = std::max(worst,
                         (op * in - scale * factor * out).cwiseAbs().maxCoeff());
      }
    }
    add("pair_action", worst);
  }

  // Trace bookkeeping: permutation traces count cycles, the unscaled Choi
  // matrix has the rank of the smaller symmetric subspace, the scaled one
  // traces to d.
  {
    double worst = 0.0;
    for (const auto& sigma : perms) {
      const double tr = permutation_operator(sigma, d).matrix().trace().real();
      worst = std::max(worst,
                       std::abs(tr - scale * std::pow(double(d), sigma.cycle_count())));
    }
    const ChoiMatrix tilde = build_choi_unscaled(beta, d, N);
    worst = std::max(worst, std::abs(tilde.op.matrix().trace().real() -
                                     scale * sym_dim(N - 1, d)));
    const ChoiMatrix c = build_choi(beta, d, N);
    worst = std::max(worst,
                     std::abs(c.op.matrix().trace().real() - scale * double(d)));
    add("trace_bookkeeping", worst);
  }

  report.all_pass = std::all_of(report.checks.begin(), report.checks.end(),
                                [](const LemmaCheck& c) { return c.pass; });
  return report;
}

}  // namespace cloneq
