#include "commands.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "dynamics.hpp"
#include "numkernel.hpp"
#include "io.hpp"
#include "robustness.hpp"
#include "scenarios.hpp"

namespace qsym::cmd {

namespace {

struct Context {
  const json& request;
  json inputs = json::object();
  json warnings = json::array();

  double tol() const {
    return request.is_object() ? request.value("tol", 1e-8) : 1e-8;
  }
  std::uint64_t seed() const {
    return request.is_object() ? request.value("seed", 42ULL) : 42ULL;
  }

  ComplexMatrix matrix(const std::string& key) {
    if (!request.contains(key))
      throw UsageError("missing required input '" + key + "'");
    return matrix_spec(request.at(key), key);
  }

  ComplexMatrix matrix_spec(const json& spec, const std::string& key) {
    if (spec.is_string()) {
      const std::string path = spec.get<std::string>();
      ComplexMatrix m = io::load_matrix(path);
      inputs[key] = {{"path", path},
                     {"hash", io::file_hash(path)},
                     {"dim", m.rows()}};
      return m;
    }
    ComplexMatrix m = io::matrix_from_json(spec);
    inputs[key] = {{"hash", io::bytes_hash(spec.dump())}, {"dim", m.rows()}};
    return m;
  }

  HermitianMatrix hermitian(const std::string& key) {
    try {
      return HermitianMatrix(matrix(key));
    } catch (const UsageError& e) {
      throw UsageError(std::string("input '") + key + "': " + e.what());
    }
  }

  void warn(const std::string& msg) { warnings.push_back(msg); }
};

ComplexVector random_unit_vector(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexVector psi(n);
  for (Eigen::Index i = 0; i < n; ++i) psi(i) = Complex(gauss(rng), gauss(rng));
  psi /= psi.norm();
  return psi;
}

json witness_json(const robust::FragilityWitness& w) {
  return {{"n", w.n}, {"m", w.m}, {"lower_bound", w.lower_bound}};
}

json verdict_json(const robust::RobustnessVerdict& v) {
  json j{{"status", v.status_name()},
         {"robust", v.robust},
         {"max_commutator", v.max_commutator},
         {"residual_degeneracy_caveat", v.residual_degeneracy_caveat}};
  if (v.witness) j["witness"] = witness_json(*v.witness);
  return j;
}

int verdict_exit(const robust::RobustnessVerdict& v) {
  switch (v.status) {
    case robust::Status::Robust: return kOk;
    case robust::Status::Fragile: return kFragile;
    default: return kInconclusive;
  }
}

json family_json(const kato::KatoFamily& fam) {
  json rows = json::array();
  for (int i = 0; i < fam.count(); ++i) {
    json row{{"parent", fam.parent[i]},
             {"rank", fam.rank(i)},
             {"slope", fam.slope[i]},
             {"splitting_order", fam.splitting_order[i]},
             {"residual", static_cast<bool>(fam.residual_flag[i])}};
    if (std::isfinite(fam.second_order[i]))
      row["second_order"] = fam.second_order[i];
    rows.push_back(std::move(row));
  }
  return rows;
}

dyn::TimeSamplingPlan plan_from(const Context& ctx) {
  dyn::TimeSamplingPlan plan;
  plan.grid_count = ctx.request.value("grid_count", plan.grid_count);
  plan.grid_horizon = ctx.request.value("grid_horizon", plan.grid_horizon);
  plan.random_count = ctx.request.value("random_count", plan.random_count);
  plan.seed = ctx.seed();
  return plan;
}

CommandResult cmd_classify(Context& ctx) {
  const HermitianMatrix h = ctx.hermitian("h");
  const HermitianMatrix v = ctx.hermitian("v");
  const ComplexMatrix s = ctx.matrix("s");

  robust::ClassifyOptions opts;
  opts.tol_rel = ctx.tol();
  const auto dec = spectral::decompose(h);
  if (dec.ambiguous_clustering)
    ctx.warn("eigenvalue clustering of H is ambiguous at this tolerance");
  const auto fam = kato::subprojections(h, v, dec, opts.kato);
  const auto sym = robust::is_symmetry(s, h, opts.tol_rel);
  if (!sym.is_symmetry)
    throw NotASymmetry("S is not a symmetry of H, [S,H] residual " +
                       std::to_string(sym.residual));
  const auto verdict = robust::classify(s, fam, opts);
  const double eps_safe = kato::safe_epsilon(v, fam);

  json results{{"verdict", verdict_json(verdict)},
               {"eps_safe", eps_safe},
               {"subprojections", family_json(fam)}};
  if (verdict.residual_degeneracy_caveat)
    ctx.warn("residual degeneracy beyond splitting order 2; verdict is "
             "conservative");

  if (ctx.request.contains("eps_sweep")) {
    const dyn::TimeSamplingPlan plan = plan_from(ctx);
    json sweep = json::array();
    for (double eps : ctx.request.at("eps_sweep").get<std::vector<double>>()) {
      if (eps > eps_safe)
        ctx.warn("eps " + std::to_string(eps) +
                 " exceeds the perturbative radius eps_safe");
      ComplexVector psi = verdict.witness ? verdict.witness->psi_n
                                          : random_unit_vector(h.dim(), ctx.seed());
      const auto est = dyn::wandering_range(s, h, v, eps, psi, plan);
      const auto bound = dyn::finite_dim_bound(s, v, eps, dec);
      sweep.push_back({{"eps", eps},
                       {"lower", est.lower},
                       {"upper", est.upper},
                       {"finite_dim_bound", bound.value}});
    }
    results["sweep"] = std::move(sweep);
  }
  return {verdict_exit(verdict), std::move(results)};
}

std::vector<ComplexMatrix> generator_list(Context& ctx) {
  std::vector<ComplexMatrix> gens;
  if (ctx.request.contains("generators")) {
    const json& list = ctx.request.at("generators");
    if (!list.is_array() || list.empty())
      throw UsageError("'generators' must be a non-empty array");
    for (size_t i = 0; i < list.size(); ++i)
      gens.push_back(
          ctx.matrix_spec(list.at(i), "generator" + std::to_string(i)));
  } else {
    gens.push_back(ctx.matrix("h"));
  }
  return gens;
}

CommandResult cmd_commutant(Context& ctx, bool twice) {
  const std::vector<ComplexMatrix> gens = generator_list(ctx);
  const auto alg = twice ? algebra::bicommutant(gens, ctx.tol())
                         : algebra::commutant(gens, ctx.tol());
  json results{{"dimension", alg.dimension()},
               {"space_dim", alg.dim_space}};
  if (ctx.request.value("emit_basis", false)) {
    json basis = json::array();
    for (const ComplexMatrix& b : alg.basis)
      basis.push_back(io::matrix_to_json(b));
    results["basis"] = std::move(basis);
  }
  return {kOk, std::move(results)};
}

CommandResult cmd_kato(Context& ctx) {
  const HermitianMatrix h = ctx.hermitian("h");
  const HermitianMatrix v = ctx.hermitian("v");
  const double eps = ctx.request.value("eps", 0.1);

  const auto dec = spectral::decompose(h);
  if (dec.ambiguous_clustering)
    ctx.warn("eigenvalue clustering of H is ambiguous at this tolerance");
  const auto fam = kato::subprojections(h, v, dec);
  const double eps_safe = kato::safe_epsilon(v, fam);
  if (eps > eps_safe)
    ctx.warn("eps exceeds the perturbative radius eps_safe");

  const auto u = kato::kato_unitary(h, v, eps, fam);
  const Eigen::Index n = h.dim();
  const double unit_res =
      (u.matrix * u.matrix.adjoint() - ComplexMatrix::Identity(n, n)).norm();
  const auto pf = kato::perturbed_family(h, v, eps, fam);
  double intertwine_res = 0.0;
  for (int j = 0; j < fam.count(); ++j)
    intertwine_res = std::max(
        intertwine_res,
        (u.matrix * fam.subprojections[j] * u.matrix.adjoint() -
         pf.projections[j])
            .norm());
  const HermitianMatrix ht = kato::block_diagonal_approx(h, v, eps, fam);
  const ComplexMatrix he = h.mat() + eps * v.mat();
  const double block_res =
      (ht.mat() - u.matrix.adjoint() * he * u.matrix).norm();

  json results{{"eps", eps},
               {"eps_safe", eps_safe},
               {"subprojections", family_json(fam)},
               {"unitarity_residual", unit_res},
               {"intertwining_residual", intertwine_res},
               {"block_diagonal_residual", block_res},
               {"max_rn_norm", u.max_rn_norm},
               {"branch_values", pf.values}};
  return {kOk, std::move(results)};
}

CommandResult cmd_wander(Context& ctx) {
  const HermitianMatrix h = ctx.hermitian("h");
  const HermitianMatrix v = ctx.hermitian("v");
  const ComplexMatrix s = ctx.matrix("s");
  const double eps = ctx.request.value("eps", 0.01);

  ComplexVector psi;
  if (ctx.request.contains("psi")) {
    const json& raw = ctx.request.at("psi");
    psi.resize(static_cast<Eigen::Index>(raw.size()));
    for (size_t i = 0; i < raw.size(); ++i)
      psi(static_cast<Eigen::Index>(i)) =
          Complex(raw.at(i).at(0).get<double>(), raw.at(i).at(1).get<double>());
    if (psi.size() != h.dim()) throw UsageError("psi has wrong dimension");
    if (std::abs(psi.norm() - 1.0) > 1e-10)
      throw UsageError("psi must be a unit vector");
  } else {
    psi = random_unit_vector(h.dim(), ctx.seed());
  }

  const auto est = dyn::wandering_range(s, h, v, eps, psi, plan_from(ctx));
  const auto dec = spectral::decompose(h);
  const auto bound = dyn::finite_dim_bound(s, v, eps, dec);
  if (bound.vacuous_gap)
    ctx.warn("single-cluster spectrum: finite-dimensional bound is vacuous");

  json results{{"eps", eps},
               {"lower", est.lower},
               {"upper", est.upper},
               {"t_argmax", est.t_argmax},
               {"samples_used", est.samples_used},
               {"finite_dim_bound", bound.value}};
  return {kOk, std::move(results)};
}

CommandResult cmd_adiabatic(Context& ctx) {
  const HermitianMatrix h = ctx.hermitian("h");
  const HermitianMatrix v = ctx.hermitian("v");
  const ComplexMatrix s = ctx.matrix("s");
  const double eps = ctx.request.value("eps", 0.1);

  const auto dec = spectral::decompose(h);
  const auto fam = kato::subprojections(h, v, dec);
  const auto u = kato::kato_unitary(h, v, eps, fam);
  const ComplexMatrix s_eps = kato::adiabatic_invariant(s, u, fam);
  const ComplexMatrix he = h.mat() + eps * v.mat();
  const double comm_res = commutator(s_eps, he).norm();
  const double drift = (s_eps - s).norm();

  json results{{"eps", eps},
               {"commutator_residual", comm_res},
               {"drift_from_s", drift},
               {"max_rn_norm", u.max_rn_norm}};
  if (ctx.request.value("emit_matrix", false))
    results["s_eps"] = io::matrix_to_json(s_eps);
  return {kOk, std::move(results)};
}

CommandResult cmd_restricted(Context& ctx) {
  const HermitianMatrix h = ctx.hermitian("h");
  std::vector<HermitianMatrix> j_set;
  if (ctx.request.contains("j")) {
    const json& list = ctx.request.at("j");
    if (list.is_array()) {
      for (size_t i = 0; i < list.size(); ++i)
        j_set.emplace_back(
            ctx.matrix_spec(list.at(i), "j" + std::to_string(i)));
    } else {
      j_set.emplace_back(ctx.matrix_spec(list, "j"));
    }
  }
  const int samples = ctx.request.value("samples", 25);
  const auto res =
      robust::robust_algebra_restricted(h, j_set, samples, ctx.seed());
  json results{{"samples", res.samples_used},
               {"intersection_dim", res.intersection.dimension()},
               {"predicted_dim", res.predicted.dimension()},
               {"matches_prediction", res.matches_prediction}};
  return {kOk, std::move(results)};
}

CommandResult cmd_scenario(Context& ctx) {
  const std::string name = ctx.request.value("name", "");
  const json params = ctx.request.value("params", json::object());

  if (name == "degenerate-diag") {
    const auto mult = params.value("multiplicities", std::vector<int>{2, 1});
    const auto vals = params.value("values", std::vector<double>{0.0, 1.0});
    const auto model = scenario::degenerate_diag(mult, vals);
    json verdicts = json::object();
    for (const auto& sym : model.symmetries) {
      const auto check = robust::is_symmetry(sym.op, model.h);
      json entry{{"is_symmetry", check.is_symmetry},
                 {"symmetry_residual", check.residual}};
      if (check.is_symmetry) {
        const auto verdict = robust::classify(sym.op, model.h, model.v);
        entry["verdict"] = verdict_json(verdict);
      }
      verdicts[sym.name] = std::move(entry);
    }
    return {kOk, json{{"scenario", name}, {"verdicts", std::move(verdicts)}}};
  }

  if (name == "oscillator") {
    const int n_levels = params.value("N", 60);
    const double eps = params.value("eps", 0.2);
    const auto model = scenario::truncated_oscillator(n_levels);
    const auto shift = scenario::oscillator_shift_check(n_levels, eps);
    // parity against i e^{-i pi H}
    const ComplexMatrix expm = num::unitary_exp(model.h, std::numbers::pi);
    const Complex im(0.0, 1.0);
    const double parity_res = (model.symmetries.front().op - im * expm).norm();
    const bool parity_complete =
        robust::completely_robust(model.symmetries.front().op, model.h);
    json results{{"scenario", name},
                 {"N", n_levels},
                 {"eps", eps},
                 {"shift_modes_checked", shift.modes_checked},
                 {"shift_max_deviation", shift.max_deviation},
                 {"parity_exponential_residual", parity_res},
                 {"parity_completely_robust", parity_complete}};
    return {kOk, std::move(results)};
  }

  if (name == "oscillator-alpha") {
    const double alpha = params.value("alpha", 2.0);
    const double eps = params.value("eps", 0.5);
    const double cutoff = params.value("cutoff", 1e4);
    const double abs_tol = params.value("abs_tol", 1e-8);
    const auto integral =
        scenario::oscillator_alpha_integral(alpha, eps, cutoff, abs_tol);
    json results{{"scenario", name},
                 {"alpha", alpha},
                 {"eps", eps},
                 {"cutoff", cutoff},
                 {"g", integral.g},
                 {"c_alpha", integral.c_alpha}};
    if (alpha == 2.0) {
      const double closed =
          std::sqrt(std::numbers::pi / 2.0 * (1.0 - std::exp(-4.0)));
      results["c_2_closed_form"] = closed;
      results["c_2_deviation"] = std::abs(integral.c_alpha - closed);
    }
    return {kOk, std::move(results)};
  }

  std::string known;
  for (const auto& s : scenario::scenario_names()) known += " " + s;
  throw UsageError("unknown scenario '" + name + "'; available:" + known);
}

}  // namespace

std::vector<std::string> command_names() {
  return {"classify", "commutant",  "bicommutant", "kato",
          "wander",   "adiabatic", "restricted",  "scenario"};
}

CommandResult run_command(const std::string& command, const json& request) {
  Context ctx{request};
  CommandResult result;
  try {
    if (!request.is_object())
      throw UsageError("request must be a JSON object");
    if (command == "classify") result = cmd_classify(ctx);
    else if (command == "commutant") result = cmd_commutant(ctx, false);
    else if (command == "bicommutant") result = cmd_commutant(ctx, true);
    else if (command == "kato") result = cmd_kato(ctx);
    else if (command == "wander") result = cmd_wander(ctx);
    else if (command == "adiabatic") result = cmd_adiabatic(ctx);
    else if (command == "restricted") result = cmd_restricted(ctx);
    else if (command == "scenario") result = cmd_scenario(ctx);
    else {
      std::string known;
      for (const auto& s : command_names()) known += " " + s;
      throw UsageError("unknown command '" + command + "'; available:" + known);
    }
  } catch (const UsageError& e) {
    result.exit_code = kUsage;
    result.report = json{{"error", e.what()}};
  } catch (const Error& e) {
    result.exit_code = kNumericFailure;
    result.report = json{{"error", e.what()}};
  } catch (const std::exception& e) {
    result.exit_code = kNumericFailure;
    result.report = json{{"error", e.what()}};
  }

  json wrapped{{"command", command},
               {"inputs", std::move(ctx.inputs)},
               {"tolerances", json{{"tol", ctx.tol()}}},
               {"seed", ctx.seed()},
               {"warnings", std::move(ctx.warnings)}};
  wrapped["results"] = std::move(result.report);
  wrapped["exit_code"] = result.exit_code;
  result.report = std::move(wrapped);
  return result;
}

}  // namespace qsym::cmd
