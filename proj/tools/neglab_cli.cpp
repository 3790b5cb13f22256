// neglab: command-line front end.
//
//   neglab measure      --input state.json [--party 0|1]
//   neglab bounds       --input state.json [--target-dim d --delta e]
//   neglab gaussian     --input cov.json
//   neglab multi        --input state.json
//   neglab monotonicity --seed S [--trials T]
//   neglab sneg         --input state.json [--cone all|ppt] [--tol t] [--pt]
//
// Common: --format json|csv, --output path. Errors go to stderr as one JSON line.
// Exit codes: 2 parse, 3 invariant/shape, 4 domain, 5 convergence, 1 other.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "neglab/neglab.hpp"

using namespace neglab;

namespace {

struct RunConfig {
  std::string input;
  std::string output;
  std::string format = "json";
  int party = 0;
  std::optional<std::uint64_t> seed;
  int trials = 1000;
  std::string cone = "all";
  double tol = BaseNormOptions{}.bisection_tol;
  bool apply_pt = false;
  std::optional<int> target_dim;
  double delta = 0.0;
};

constexpr double kOutputZero = 1e-12;

/// Every number leaves the program rounded to 12 significant digits; magnitudes
/// below 1e-12 are round-off and print as 0.
double round12(double x) {
  if (std::abs(x) < kOutputZero) return 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

std::string fmt12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", round12(x));
  return buf;
}

Json num(double x) { return round12(x); }

Json num_array(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

/// A JSON object emitted as a single CSV row: header of keys, then values.
/// Array-valued fields are joined with ';'.
struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  [[nodiscard]] std::string str() const {
    std::ostringstream out;
    out << "# neg-lab v1\n";
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
      out << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out.str();
  }
};

std::string cell(const Json& v) {
  if (v.is_number_float()) return fmt12(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + cell(v[i]);
    return s;
  }
  return v.dump();
}

Csv flat_csv(const Json& obj) {
  Csv c;
  c.rows.emplace_back();
  for (const auto& [k, v] : obj.items()) {
    c.header.push_back(k);
    c.rows.back().push_back(cell(v));
  }
  return c;
}

// ---------------------------------------------------------------------------

Json measure_json(const RunConfig& cfg) {
  const DensityMatrix rho = load_state(cfg.input);
  const MeasureReport r = measure(rho, cfg.party);
  return Json{{"negativity", num(r.negativity)},
              {"log_negativity", num(r.log_negativity)},
              {"trace_norm_pt", num(r.trace_norm_pt)},
              {"negative_eigvals", num_array(r.negative_eigvals)},
              {"party", cfg.party},
              {"dims", rho.dims().values()}};
}

Json bounds_json(const RunConfig& cfg) {
  const DensityMatrix rho = load_state(cfg.input);
  const BoundsReport r = teleportation_bounds(rho);
  Json j{{"m", r.m},
         {"negativity", num(r.negativity)},
         {"singlet_distance_lb", num(r.singlet_distance_lb)},
         {"teleport_distance_lb", num(r.teleport_distance_lb)},
         {"singlet_fidelity_ub", num(r.singlet_fidelity_ub)},
         {"channel_fidelity_ub", num(r.channel_fidelity_ub)},
         {"distillation_ub_bits", num(r.distillation_ub_bits)},
         {"raw_singlet_distance_lb", num(r.raw_singlet_distance_lb)},
         {"raw_teleport_distance_lb", num(r.raw_teleport_distance_lb)},
         {"raw_singlet_fidelity_ub", num(r.raw_singlet_fidelity_ub)},
         {"raw_channel_fidelity_ub", num(r.raw_channel_fidelity_ub)}};
  if (cfg.target_dim) {
    j["target_dim"] = *cfg.target_dim;
    j["delta"] = num(cfg.delta);
    j["one_shot_slack"] = num(one_shot_distill_bound(rho, *cfg.target_dim, cfg.delta));
  }
  return j;
}

Json gaussian_json(const RunConfig& cfg) {
  const CovarianceMatrix cov = load_covariance(cfg.input);
  Json j{{"nA", cov.n_a()},
         {"nB", cov.n_b()},
         {"physical", cov.is_physical()},
         {"symplectic_spectrum", num_array(symplectic_spectrum(cov))},
         {"pt_symplectic_spectrum", num_array(symplectic_spectrum(gaussian_partial_transpose(cov)))},
         {"log_negativity", num(gaussian_log_negativity(cov))}};
  if (cov.n_a() == 1 && cov.n_b() == 1) {
    const auto q = two_mode_pt_spectrum_via_quartic(cov);
    j["pt_spectrum_quartic"] = num_array({q[0], q[1]});
  }
  return j;
}

Json multi_json(const RunConfig& cfg) {
  const DensityMatrix rho = load_state(cfg.input);
  Json rows = Json::array();
  for (const auto& v : splitting_table(rho))
    rows.push_back(Json{{"splitting", v.label}, {"negativity", num(v.negativity)}, {"log_negativity", num(v.log_negativity)}});
  Json j{{"parties", rho.dims().parties()}, {"splittings", rows}};
  if (rho.dims().parties() == 4) {
    int violated = 0;
    const auto chains = hierarchy_report(rho);
    for (const auto& h : chains) violated += h.satisfied ? 0 : 1;
    j["hierarchy_chains"] = chains.size();
    j["hierarchy_violations"] = violated;
  }
  return j;
}

Json monotonicity_json(const RunConfig& cfg) {
  detail::require<ParseError>(cfg.seed.has_value(), "monotonicity: --seed is required");
  detail::require<DomainError>(cfg.trials >= 0, "monotonicity: --trials must be nonnegative");
  const SweepReport r = monotonicity_sweep(cfg.trials, *cfg.seed);
  return Json{{"trials", r.trials}, {"violations", r.violations}, {"max_slack", num(r.max_slack)}, {"seed", *cfg.seed}};
}

Json sneg_json(const RunConfig& cfg) {
  const DensityMatrix rho = load_state(cfg.input);
  const Cone tag = cfg.cone == "ppt" ? Cone::PptStates : Cone::AllStates;
  BaseNormOptions opt;
  opt.bisection_tol = cfg.tol;
  const ComplexMatrix a = cfg.apply_pt ? partial_transpose(rho.matrix(), rho.dims(), cfg.party) : rho.matrix();
  const SNegativityResult r = s_negativity_detailed(a, ConeSpec(tag, rho.dims()), opt);
  return Json{{"cone", cfg.cone},
              {"partial_transpose", cfg.apply_pt},
              {"value", num(r.value)},
              {"lower", num(r.lower)},
              {"tol", num(cfg.tol)},
              {"probes", r.probes},
              {"undecided", r.undecided}};
}

std::string render(const std::string& sub, const Json& j, const std::string& format) {
  if (format == "json") return j.dump() + "\n";
  if (sub == "multi") {
    Csv c;
    c.header = {"splitting", "negativity", "log_negativity"};
    for (const auto& row : j.at("splittings"))
      c.rows.push_back({cell(row.at("splitting")), cell(row.at("negativity")), cell(row.at("log_negativity"))});
    return c.str();
  }
  return flat_csv(j).str();
}

int error_exit(const char* kind, int code, const std::string& message) {
  const Json rec{{"error", kind}, {"exit_code", code}, {"message", message}};
  std::cerr << rec.dump() << std::endl;
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement negativity toolkit"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub, bool needs_input) {
    sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--output", cfg.output, "write the report here instead of stdout");
    if (needs_input) sub->add_option("--input", cfg.input, "input file")->required();
  };

  auto* measure_cmd = app.add_subcommand("measure", "negativity and log-negativity of a state");
  add_common(measure_cmd, true);
  measure_cmd->add_option("--party", cfg.party, "transposed party (0 or 1)");

  auto* bounds_cmd = app.add_subcommand("bounds", "singlet-distance, teleportation and distillation bounds");
  add_common(bounds_cmd, true);
  bounds_cmd->add_option("--target-dim", cfg.target_dim, "target dimension for the one-shot distillation slack");
  bounds_cmd->add_option("--delta", cfg.delta, "achieved error for the one-shot distillation slack");

  auto* gaussian_cmd = app.add_subcommand("gaussian", "log-negativity of a Gaussian covariance matrix");
  add_common(gaussian_cmd, true);

  auto* multi_cmd = app.add_subcommand("multi", "negativities across all splittings");
  add_common(multi_cmd, true);

  auto* mono_cmd = app.add_subcommand("monotonicity", "random LOCC monotonicity sweep");
  add_common(mono_cmd, false);
  mono_cmd->add_option("--seed", cfg.seed, "PRNG seed (required)");
  mono_cmd->add_option("--trials", cfg.trials, "number of random trials");

  auto* sneg_cmd = app.add_subcommand("sneg", "base-norm S-negativity by bisection");
  add_common(sneg_cmd, true);
  sneg_cmd->add_option("--cone", cfg.cone, "all or ppt")->check(CLI::IsMember({"all", "ppt"}));
  sneg_cmd->add_option("--tol", cfg.tol, "bisection tolerance (>= 1e-6)");
  sneg_cmd->add_option("--party", cfg.party, "party transposed with --pt");
  sneg_cmd->add_flag("--pt", cfg.apply_pt, "evaluate on the partial transpose of the input");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return error_exit("parse", 2, e.what());
  }

  const std::string sub = app.get_subcommands().front()->get_name();
  try {
    Json report;
    if (sub == "measure") report = measure_json(cfg);
    else if (sub == "bounds") report = bounds_json(cfg);
    else if (sub == "gaussian") report = gaussian_json(cfg);
    else if (sub == "multi") report = multi_json(cfg);
    else if (sub == "monotonicity") report = monotonicity_json(cfg);
    else report = sneg_json(cfg);

    const std::string text = render(sub, report, cfg.format);
    if (cfg.output.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(cfg.output);
      if (!out) return error_exit("io", 1, "cannot write '" + cfg.output + "'");
      out << text;
    }
  } catch (const ParseError& e) {
    return error_exit("parse", 2, e.what());
  } catch (const InvariantError& e) {
    return error_exit("invariant", 3, e.what());
  } catch (const ShapeError& e) {
    return error_exit("shape", 3, e.what());
  } catch (const DomainError& e) {
    return error_exit("domain", 4, e.what());
  } catch (const ConvergenceError& e) {
    return error_exit("convergence", 5, e.what());
  } catch (const std::exception& e) {
    return error_exit("internal", 1, e.what());
  }
  return 0;
}
