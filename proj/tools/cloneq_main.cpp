// Command-line front end: region membership, norms, cloner construction and
// certification, boundary sweeps, self-verification and figure data export.
//
// Exit codes: 0 success / inside, 1 outside or failed verification, 2 usage,
// 3 numerical size guard.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cloneq/cloner.hpp"
#include "cloneq/errors.hpp"
#include "cloneq/oracle.hpp"
#include "cloneq/qnorm.hpp"
#include "cloneq/random.hpp"
#include "cloneq/spectral.hpp"

using json = nlohmann::ordered_json;

namespace {

std::vector<double> parse_vec(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = std::stod(item, &used);
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used])))
      ++used;
    if (used != item.size())
      throw std::invalid_argument("not a number: '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty vector");
  return out;
}

// Relative output paths are resolved against CLONEQ_OUTPUT_DIR when set.
std::filesystem::path resolve_out(const std::string& out) {
  std::filesystem::path p(out);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("CLONEQ_OUTPUT_DIR"))
      p = std::filesystem::path(dir) / p;
  }
  return p;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  const auto path = resolve_out(out);
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path.string());
  f << text;
}

void emit_json(const json& j, const std::string& out) {
  emit(j.dump(2) + "\n", out);
}

std::string csv_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int run(int argc, char** argv) {
  CLI::App app{"asymmetric quantum cloning region toolkit"};
  app.require_subcommand(1);
  int status = 0;

  // qnorm
  auto* qn = app.add_subcommand("qnorm", "Q-norm of a coefficient vector");
  static std::string qn_x, qn_out;
  static int qn_d = 2;
  qn->add_option("--x", qn_x, "comma-separated components")->required();
  qn->add_option("--d", qn_d, "local dimension")->required();
  qn->add_option("--out", qn_out, "output file (default stdout)");
  qn->callback([&] {
    const auto x = parse_vec(qn_x);
    double l1 = 0.0;
    for (double v : x) l1 += std::abs(v);
    json j;
    j["d"] = qn_d;
    j["x"] = x;
    j["l1"] = l1;
    j["lambda_max"] = cloneq::lambda_max_reduced(x, qn_d);
    j["q_norm"] = cloneq::q_norm(x, qn_d);
    emit_json(j, qn_out);
  });

  // dualnorm
  auto* dn = app.add_subcommand("dualnorm", "dual Q-norm of a marginal vector");
  static std::string dn_p, dn_out;
  static int dn_d = 2, dn_res = 0, dn_refine = 50;
  dn->add_option("--p", dn_p, "comma-separated marginal weights")->required();
  dn->add_option("--d", dn_d, "local dimension")->required();
  dn->add_option("--resolution", dn_res, "grid points per simplex axis");
  dn->add_option("--refine", dn_refine, "pattern-search iterations");
  dn->add_option("--out", dn_out, "output file (default stdout)");
  dn->callback([&] {
    const auto p = parse_vec(dn_p);
    cloneq::DualNormOptions opts;
    opts.resolution = dn_res;
    opts.refine_iters = dn_refine;
    const auto v = cloneq::dual_q_norm(p, dn_d, opts);
    json j;
    j["d"] = dn_d;
    j["p"] = p;
    j["dual_norm"] = v.dual_norm;
    j["inside"] = v.inside;
    j["margin"] = v.margin;
    j["witness_alpha"] = v.witness_alpha;
    emit_json(j, dn_out);
    if (!v.inside) status = 1;
  });

  // member
  auto* mb = app.add_subcommand("member", "is p an admissible marginal vector");
  static std::string mb_p, mb_out;
  static int mb_d = 2;
  static double mb_tol = 1e-6;
  mb->add_option("--p", mb_p, "comma-separated marginal weights")->required();
  mb->add_option("--d", mb_d, "local dimension")->required();
  mb->add_option("--tol", mb_tol, "inside threshold on the dual norm");
  mb->add_option("--out", mb_out, "output file (default stdout)");
  mb->callback([&] {
    const auto p = parse_vec(mb_p);
    const auto v = cloneq::in_region(p, mb_d, mb_tol);
    json j;
    j["d"] = mb_d;
    j["p"] = p;
    j["dual_norm"] = v.dual_norm;
    j["kay_residual"] = cloneq::kay_residual(p, mb_d);
    j["inside"] = v.inside;
    emit_json(j, mb_out);
    if (!v.inside) status = 1;
  });

  // cloner
  auto* cl = app.add_subcommand("cloner", "construct and certify an optimal cloner");
  static std::string cl_alpha, cl_beta, cl_f, cl_out;
  static int cl_d = 2, cl_fit = 0, cl_cov = 10;
  static std::uint64_t cl_seed = 12345;
  static bool cl_certify = false, cl_strict = false;
  auto* src = cl->add_option_group("source", "cloner specification");
  src->add_option("--alpha", cl_alpha, "fidelity weights; the channel maximizing "
                  "their weighted mean is built");
  src->add_option("--beta", cl_beta, "normalized weight vector");
  src->add_option("--f", cl_f, "target clone fidelities on the optimal surface");
  src->require_option(1);
  cl->add_option("--d", cl_d, "local dimension")->required();
  cl->add_flag("--certify", cl_certify, "attach the Choi certificate");
  cl->add_flag("--strict", cl_strict, "reject an unnormalized --beta instead of rescaling");
  cl->add_option("--fit", cl_fit, "fit marginals over this many random inputs");
  cl->add_option("--cov-trials", cl_cov, "covariance check trials under --certify");
  cl->add_option("--seed", cl_seed, "seed for sampled checks");
  cl->add_option("--out", cl_out, "output file (default stdout)");
  cl->callback([&] {
    json j;
    j["d"] = cl_d;
    std::vector<double> beta;
    if (!cl_alpha.empty()) {
      const auto alpha = parse_vec(cl_alpha);
      const auto pr = cloneq::perron_beta(alpha, cl_d);
      beta = pr.beta;
      j["N"] = static_cast<int>(alpha.size());
      j["alpha"] = alpha;
      j["lambda_max"] = pr.lambda;
      double l1 = 0.0;
      for (double a : alpha) l1 += std::abs(a);
      j["fidelity_bound"] = (l1 + pr.lambda) / (cl_d + 1.0);
      if (pr.degenerate) j["degenerate"] = true;
    } else if (!cl_f.empty()) {
      const auto f = parse_vec(cl_f);
      beta = cloneq::fidelities_to_beta(f, cl_d, static_cast<int>(f.size()));
      j["N"] = static_cast<int>(f.size());
    } else {
      beta = parse_vec(cl_beta);
      j["N"] = static_cast<int>(beta.size());
      const double res = cloneq::beta_normalization_residual(beta, cl_d);
      if (std::abs(res) > 1e-9) {
        if (cl_strict)
          throw std::invalid_argument("beta violates the normalization by " +
                                      std::to_string(res));
        std::cerr << "warning: rescaling beta (normalization residual "
                  << res << ")\n";
        beta = cloneq::rescale_to_beta_normalization(beta, cl_d);
      }
    }
    const int N = j["N"].get<int>();
    const auto p = cloneq::optimal_surface_point(beta, cl_d);
    j["beta"] = beta;
    j["p"] = p;
    j["fidelities"] = cloneq::fidelities_from_p(p, cl_d);
    if (!cl_alpha.empty()) {
      const auto c = cloneq::build_choi(beta, cl_d, N);
      const auto alpha = parse_vec(cl_alpha);
      j["mean_fidelity"] = cloneq::average_fidelity(c, alpha);
    }
    if (cl_certify) {
      const auto cert = cloneq::certify_choi(beta, cl_d, N);
      json jc;
      jc["hermiticity_residual"] = cert.hermiticity_residual;
      jc["projector_residual"] = cert.projector_residual;
      jc["min_eigenvalue"] = cert.min_eigenvalue;
      jc["tp_residual"] = cert.tp_residual;
      jc["covariance_residual"] = cloneq::covariance_check(
          cloneq::build_choi(beta, cl_d, N), cl_cov, cl_seed);
      j["certificate"] = jc;
    }
    if (cl_fit > 0) {
      const cloneq::CloningChannel ch(beta, cl_d, N);
      const auto fit = cloneq::fit_marginals(ch, cl_fit, cl_seed);
      json jf;
      jf["p"] = fit.p;
      jf["max_residual"] = fit.max_residual;
      j["marginal_fit"] = jf;
    }
    emit_json(j, cl_out);
  });

  // boundary
  auto* bd = app.add_subcommand("boundary", "sweep the optimal surface to CSV");
  static std::string bd_out;
  static int bd_d = 2, bd_n = 2, bd_grid = 64, bd_res = 0;
  bd->add_option("--d", bd_d, "local dimension")->required();
  bd->add_option("--N", bd_n, "number of clones")->required();
  bd->add_option("--grid", bd_grid, "simplex grid points per axis");
  bd->add_option("--resolution", bd_res, "dual-norm grid resolution");
  bd->add_option("--out", bd_out, "output file (default stdout)");
  bd->callback([&] {
    cloneq::DualNormOptions opts;
    opts.resolution = bd_res;
    const auto rows = cloneq::boundary_export(bd_d, bd_n, bd_grid, opts);
    std::string text;
    for (int i = 1; i <= bd_n; ++i) text += "beta_" + std::to_string(i) + ",";
    for (int i = 1; i <= bd_n; ++i) text += "p_" + std::to_string(i) + ",";
    text += "dual_norm,kay_residual,feasible\n";
    for (const auto& r : rows) {
      for (double b : r.beta) text += csv_num(b) + ",";
      for (double p : r.p) text += csv_num(p) + ",";
      text += csv_num(r.dual_norm) + "," + csv_num(r.kay_residual) + "," +
              (r.feasible ? "1" : "0") + "\n";
    }
    emit(text, bd_out);
  });

  // verify
  auto* vf = app.add_subcommand("verify", "cross-validate the region machinery");
  static std::string vf_out;
  static int vf_d = 2, vf_n = 2, vf_trials = 200;
  static std::uint64_t vf_seed = 12345;
  static double vf_band = 1e-4, vf_perturb = 0.0;
  vf->add_option("--d", vf_d, "local dimension")->required();
  vf->add_option("--N", vf_n, "number of clones")->required();
  vf->add_option("--trials", vf_trials, "random marginal vectors to test");
  vf->add_option("--seed", vf_seed, "sampling seed");
  vf->add_option("--band", vf_band, "boundary band where verdicts may differ");
  vf->add_option("--perturb", vf_perturb, "identity perturbation (sensitivity control)");
  vf->add_option("--out", vf_out, "output file (default stdout)");
  vf->callback([&] {
    const auto rep = cloneq::agreement_report(vf_d, vf_n, vf_trials, vf_seed, vf_band);
    const auto lemmas = cloneq::lemma_suite(vf_d, vf_n, vf_perturb);
    json j;
    j["d"] = vf_d;
    j["N"] = vf_n;
    j["trials"] = rep.trials;
    j["band"] = vf_band;
    j["disagreements_outside_band"] = rep.disagreements_outside_band;
    j["rejected_with_positive_kay"] = rep.rejected_with_positive_kay;
    json checks = json::array();
    for (const auto& c : lemmas.checks) {
      json jc;
      jc["name"] = c.name;
      jc["residual"] = c.residual;
      jc["tolerance"] = c.tolerance;
      jc["pass"] = c.pass;
      checks.push_back(jc);
    }
    j["lemma_checks"] = checks;
    j["lemma_all_pass"] = lemmas.all_pass;
    const bool ok = rep.disagreements_outside_band == 0 &&
                    rep.rejected_with_positive_kay == 0 && lemmas.all_pass;
    j["ok"] = ok;
    emit_json(j, vf_out);
    if (!ok) status = 1;
  });

  // figures
  auto* fg = app.add_subcommand("figures", "figure data export to CSV");
  static std::string fg_which, fg_out;
  static int fg_d = 2, fg_samples = 256;
  fg->add_option("--which", fg_which, "ellipse | qnorm-sphere | flat-slice")
      ->required()
      ->check(CLI::IsMember({"ellipse", "qnorm-sphere", "flat-slice"}));
  fg->add_option("--d", fg_d, "local dimension");
  fg->add_option("--samples", fg_samples, "rows to generate");
  fg->add_option("--out", fg_out, "output file (default stdout)");
  fg->callback([&] {
    const double pi = std::acos(-1.0);
    std::string text;
    if (fg_which == "ellipse") {
      // region boundary for N = 2: radial solve along directions in the quadrant
      text = "theta,p_1,p_2\n";
      for (int k = 0; k <= fg_samples; ++k) {
        const double th = (pi / 2) * k / fg_samples;
        const std::vector<double> u{std::cos(th), std::sin(th)};
        const double r = 1.0 / cloneq::dual_q_norm(u, fg_d).dual_norm;
        text += csv_num(th) + "," + csv_num(r * u[0]) + "," + csv_num(r * u[1]) + "\n";
      }
    } else if (fg_which == "qnorm-sphere") {
      text = "theta,x_1,x_2\n";
      for (int k = 0; k < fg_samples; ++k) {
        const double th = 2 * pi * k / fg_samples;
        std::vector<double> u{std::cos(th), std::sin(th)};
        const double nrm = cloneq::q_norm(u, fg_d);
        text += csv_num(th) + "," + csv_num(u[0] / nrm) + "," + csv_num(u[1] / nrm) + "\n";
      }
    } else {
      // flat-slice: p = (a, a, q) with a the symmetric two-clone optimum; the
      // whole segment up to the tangency point is admissible although the
      // trade-off residual is negative on it away from the tangency.
      const double a = (fg_d + 2.0) / (2.0 * (fg_d + 1.0));
      // tangency: kay is concave in q and touches zero at its maximum
      double lo = 0.0, hi = 0.5;
      for (int it = 0; it < 200; ++it) {
        const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
        if (cloneq::kay_residual({a, a, m1}, fg_d) <
            cloneq::kay_residual({a, a, m2}, fg_d))
          lo = m1;
        else
          hi = m2;
      }
      const double qstar = (lo + hi) / 2;
      text = "q,p_1,p_2,dual_norm,kay_residual,inside\n";
      auto row = [&](double q) {
        const auto v = cloneq::dual_q_norm({a, a, q}, fg_d);
        text += csv_num(q) + "," + csv_num(a) + "," + csv_num(a) + "," +
                csv_num(v.dual_norm) + "," +
                csv_num(cloneq::kay_residual({a, a, q}, fg_d)) + "," +
                (v.inside ? "1" : "0") + "\n";
      };
      for (int k = 0; k < fg_samples; ++k) row(2.0 * qstar * k / fg_samples);
      row(qstar);
    }
    emit(text, fg_out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const cloneq::dimension_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
