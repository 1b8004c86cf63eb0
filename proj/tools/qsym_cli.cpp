// Command-line front end; all analysis goes through the qsym C API.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "qsym.h"

namespace {

using nlohmann::json;

struct GlobalOpts {
  double tol = 1e-8;
  std::uint64_t seed = 42;
  bool as_json = false;
  bool quiet = false;
};

void print_human(const json& report) {
  const json& results = report.value("results", json::object());
  if (results.contains("error")) {
    std::cerr << "error: " << results.at("error").get<std::string>() << "\n";
    return;
  }
  if (results.contains("verdict")) {
    const json& v = results.at("verdict");
    std::cout << "verdict: " << v.at("status").get<std::string>() << "\n"
              << "max commutator with subprojections: "
              << v.at("max_commutator").get<double>() << "\n";
    if (v.contains("witness"))
      std::cout << "fragility witness lower bound: "
                << v.at("witness").at("lower_bound").get<double>() << "\n";
  }
  for (const auto& key :
       {"dimension", "lower", "upper", "finite_dim_bound", "eps_safe",
        "intersection_dim", "predicted_dim", "matches_prediction",
        "commutator_residual", "drift_from_s", "unitarity_residual",
        "intertwining_residual", "g", "c_alpha", "shift_max_deviation",
        "parity_completely_robust"}) {
    if (results.contains(key)) std::cout << key << ": " << results.at(key) << "\n";
  }
  const json& warnings = report.value("warnings", json::array());
  for (const auto& w : warnings)
    std::cerr << "warning: " << w.get<std::string>() << "\n";
}

int execute(const std::string& command, json request, const GlobalOpts& g) {
  request["tol"] = g.tol;
  request["seed"] = g.seed;
  qsym_report* report = nullptr;
  const int status = qsym_execute(command.c_str(), request.dump().c_str(), &report);
  if (report == nullptr) {
    std::cerr << "error: engine returned no report\n";
    return QSYM_NUMERIC;
  }
  const json doc = json::parse(qsym_report_json(report));
  if (g.as_json)
    std::cout << doc.dump(2) << "\n";
  else if (!g.quiet)
    print_human(doc);
  qsym_report_free(report);
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qsym: which symmetries of a Hamiltonian survive perturbation"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--tol", g.tol, "relative tolerance for verdicts");
  app.add_option("--seed", g.seed, "seed for all randomness");
  app.add_flag("--json", g.as_json, "emit the full JSON report");
  app.add_flag("--quiet", g.quiet, "suppress human-readable output");

  std::string h_path, v_path, s_path;
  std::vector<std::string> j_paths;
  double eps = 0.1;
  std::vector<double> eps_sweep;
  int samples = 25;
  std::string scenario_name;
  std::vector<std::string> params;

  auto* classify = app.add_subcommand("classify", "V-robustness of a symmetry S");
  classify->add_option("--H", h_path, "Hamiltonian matrix file")->required();
  classify->add_option("--V", v_path, "perturbation matrix file")->required();
  classify->add_option("--S", s_path, "symmetry matrix file")->required();
  classify->add_option("--eps-sweep", eps_sweep,
                       "eps values for the dynamics consistency sweep");

  auto* commutant = app.add_subcommand("commutant", "commutant of generators");
  commutant->add_option("--G", j_paths, "generator matrix files")->required();

  auto* bicommutant =
      app.add_subcommand("bicommutant", "bicommutant of generators");
  bicommutant->add_option("--G", j_paths, "generator matrix files")->required();

  auto* kato = app.add_subcommand(
      "kato", "subprojections, intertwining unitary, block-diagonal approx");
  kato->add_option("--H", h_path)->required();
  kato->add_option("--V", v_path)->required();
  kato->add_option("--eps", eps, "perturbation strength");

  auto* wander = app.add_subcommand("wander", "wandering-range estimate");
  wander->add_option("--H", h_path)->required();
  wander->add_option("--V", v_path)->required();
  wander->add_option("--S", s_path)->required();
  wander->add_option("--eps", eps, "perturbation strength");

  auto* adiabatic =
      app.add_subcommand("adiabatic", "adiabatic invariant of a robust symmetry");
  adiabatic->add_option("--H", h_path)->required();
  adiabatic->add_option("--V", v_path)->required();
  adiabatic->add_option("--S", s_path)->required();
  adiabatic->add_option("--eps", eps, "perturbation strength");

  auto* restricted = app.add_subcommand(
      "restricted", "robust algebra under symmetry-restricted perturbations");
  restricted->add_option("--H", h_path)->required();
  restricted->add_option("--J", j_paths, "protected symmetry files");
  restricted->add_option("--samples", samples, "Monte-Carlo sample count");

  auto* scenario = app.add_subcommand("scenario", "run a built-in scenario");
  scenario->add_option("name", scenario_name, "scenario name")->required();
  scenario->add_option("--param", params, "key=value scenario parameters");

  CLI11_PARSE(app, argc, argv);

  json request = json::object();
  std::string command;
  if (*classify) {
    command = "classify";
    request["h"] = h_path;
    request["v"] = v_path;
    request["s"] = s_path;
    if (!eps_sweep.empty()) request["eps_sweep"] = eps_sweep;
  } else if (*commutant || *bicommutant) {
    command = *commutant ? "commutant" : "bicommutant";
    request["generators"] = j_paths;
  } else if (*kato) {
    command = "kato";
    request["h"] = h_path;
    request["v"] = v_path;
    request["eps"] = eps;
  } else if (*wander) {
    command = "wander";
    request["h"] = h_path;
    request["v"] = v_path;
    request["s"] = s_path;
    request["eps"] = eps;
  } else if (*adiabatic) {
    command = "adiabatic";
    request["h"] = h_path;
    request["v"] = v_path;
    request["s"] = s_path;
    request["eps"] = eps;
  } else if (*restricted) {
    command = "restricted";
    request["h"] = h_path;
    request["j"] = j_paths;
    request["samples"] = samples;
  } else if (*scenario) {
    command = "scenario";
    request["name"] = scenario_name;
    json p = json::object();
    for (const std::string& kv : params) {
      const auto pos = kv.find('=');
      if (pos == std::string::npos) {
        std::cerr << "error: --param expects key=value, got '" << kv << "'\n";
        return QSYM_USAGE;
      }
      const std::string key = kv.substr(0, pos);
      const std::string val = kv.substr(pos + 1);
      try {
        p[key] = json::parse(val);
      } catch (const json::parse_error&) {
        p[key] = val;
      }
    }
    request["params"] = std::move(p);
  }

  return execute(command, std::move(request), g);
}
