#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cloneq {

// Inner polytope model of the admissible region: convex hull of sampled
// optimal-surface points over every support pattern (lower-support surfaces
// fill the flat faces), the basis vectors e_i and the origin.
struct HullModel {
  int d = 0;
  int N = 0;
  std::vector<std::vector<double>> vertices;
};

// surface_budget is the target vertex count for the full-support surface;
// 0 picks a default tuned for agreement within a 1e-4 boundary band.
HullModel build_hull_model(int d, int N, int surface_budget = 0);

// Is p within tol (l1 residual) of the convex hull of the model vertices?
// Phase-one simplex, Dantzig pricing with a Bland anti-cycling fallback;
// fully deterministic.
bool hull_membership(const std::vector<double>& p, const HullModel& model,
                     double tol = 1e-6);

struct AgreementRow {
  std::vector<double> p;
  double dual_norm = 0.0;
  bool inside_dual = false;
  bool inside_hull = false;
  double kay = 0.0;
  bool in_band = false;  // |dual_norm - 1| <= band: verdicts may differ here
};

struct AgreementReport {
  int d = 0;
  int N = 0;
  int trials = 0;
  std::vector<AgreementRow> rows;
  int disagreements_outside_band = 0;
  // Points the dual norm rejects although the trade-off residual is positive;
  // the surface encloses all such points, so this must stay zero.
  int rejected_with_positive_kay = 0;
};

// Cross-validates the dual-norm region test against hull membership and the
// sign of the trade-off residual on uniform random p in [0,1]^N.
AgreementReport agreement_report(int d, int N, int trials, std::uint64_t seed,
                                 double band = 1e-4);

struct LemmaCheck {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct LemmaSuiteReport {
  int d = 0;
  int N = 0;
  std::vector<LemmaCheck> checks;
  bool all_pass = false;
};

// Matrix-level verification of the reduction identities behind the toolkit:
// the partially transposed permutation decomposition, pair-vector scalar
// products, class partial traces, single-class Choi assembly and the
// Choi/omega action and trace formulas. Residual tolerance 1e-10.
// coeff_perturbation != 0 scales one side of every identity by (1 + eps);
// it is a sensitivity control for the harness and must make checks fail.
LemmaSuiteReport lemma_suite(int d, int N, double coeff_perturbation = 0.0);

}  // namespace cloneq
