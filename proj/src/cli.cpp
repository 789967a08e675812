#include "polyflow/cli.hpp"

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "polyflow/analysis.hpp"
#include "polyflow/error.hpp"
#include "polyflow/reproduce.hpp"
#include "polyflow/scenario.hpp"
#include "polyflow/spectral.hpp"
#include "polyflow/trajectory_io.hpp"
#include "polyflow/validation.hpp"

namespace polyflow {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct SimulateArgs {
  std::string scenario;
  std::optional<std::string> flow;
  std::optional<double> dt;
  std::optional<double> t_end;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_csv;
  std::optional<std::string> out_svg;
  std::optional<std::string> out_report;
  std::string out_dir = ".";
};

struct AnalyzeArgs {
  std::string csv;
  std::vector<std::string> checks{"perimeter"};
  std::optional<std::string> report_json;
};

struct ValidateArgs {
  std::size_t ensemble_size = 100;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::optional<std::string> report_json;
};

bool all_passed(const std::vector<CheckReport>& reports) {
  for (const auto& r : reports) {
    if (!r.passed) return false;
  }
  return true;
}

// A check whose precondition does not hold is reported as failed.
CheckReport run_check(const std::string& name, const Trajectory& traj, std::ostream& err) {
  try {
    if (name == "star") return check_star_preservation(traj);
    if (name == "convex") return check_convexity_preservation(traj);
    if (name == "perimeter") return check_perimeter_monotone(traj);
    if (name == "area") return check_area_monotone(traj);
    if (name == "ellipse") return check_ellipse_convergence(traj);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidArgument) throw;
    err << name << ": " << e.what() << "\n";
    CheckReport r;
    r.check_name = name;
    r.passed = false;
    r.first_violation_time = traj.times.front();
    return r;
  }
  throw Error(ErrorCode::InvalidArgument,
              "unknown check '" + name + "' (expected star, convex, perimeter, area or ellipse)");
}

// Checks that apply to a fresh run of the given flow.
std::vector<std::string> default_checks(const Trajectory& traj, FlowKind kind) {
  if (kind != FlowKind::Linear) return {};
  std::vector<std::string> names{"perimeter"};
  const Polygon& start = traj.states.front();
  if (classify_star(start).tag != StarTag::NotStar) names.push_back("star");
  if (classify_convexity(start).tag != ConvexityTag::NotConvex) names.push_back("convex");
  return names;
}

int do_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
  Scenario sc = load_scenario(a.scenario);
  if (a.flow) {
    const FlowKind kind = flow_kind_from_string(*a.flow);
    if (kind != sc.flow.kind()) {
      sc.flow = kind == FlowKind::Linear           ? FlowSpec::linear()
                : kind == FlowKind::MengerMelnikov ? FlowSpec::menger_melnikov()
                                                   : FlowSpec::bisector();
      const SimConfig defaults = default_config(kind, diameter(initial_polygon(sc)));
      sc.sim.adaptive = defaults.adaptive;
      sc.sim.min_edge_capture = defaults.min_edge_capture;
    }
  }
  if (a.seed) sc.seed = *a.seed;
  if (a.dt) sc.sim.dt = *a.dt;
  if (a.t_end) sc.sim.t_end = *a.t_end;
  sc.sim.validate();

  const Trajectory traj = run(initial_polygon(sc), sc.flow, sc.sim);
  const std::filesystem::path dir(a.out_dir);
  std::filesystem::create_directories(dir);
  const auto target = [&](const std::optional<std::string>& flag, OutputKind kind,
                          const char* suffix) -> std::optional<std::filesystem::path> {
    if (flag) return std::filesystem::path(*flag);
    if (sc.outputs.count(kind)) return dir / (sc.name + suffix);
    return std::nullopt;
  };

  if (const auto p = target(a.out_csv, OutputKind::Csv, ".csv")) write_trajectory_csv(traj, *p);
  if (const auto p = target(a.out_svg, OutputKind::Svg, ".svg")) {
    write_text_file(*p, render_svg(traj, figure_svg_options(sc)));
  }
  bool checks_ok = true;
  if (const auto p = target(a.out_report, OutputKind::ReportJson, "_report.json")) {
    std::vector<CheckReport> reports;
    for (const auto& name : default_checks(traj, sc.flow.kind())) reports.push_back(run_check(name, traj, err));
    write_text_file(*p, reports_to_json(reports));
    checks_ok = all_passed(reports);
  }

  out << sc.name << ": " << traj.size() << " samples, t=" << traj.times.back()
      << ", termination=" << to_string(traj.termination) << "\n";
  if (traj.termination == Termination::Degenerate) return kExitCheckFailed;
  return checks_ok ? kExitOk : kExitCheckFailed;
}

int do_spectrum(std::size_t n, const std::optional<std::string>& scenario, std::ostream& out) {
  const auto lambda = eigenvalues(n);
  std::optional<SpectralDecomposition> decomp;
  if (scenario) {
    decomp = decompose(initial_polygon(load_scenario(*scenario)));
    if (decomp->n != n) {
      throw Error(ErrorCode::InvalidArgument, "--n does not match the scenario polygon size");
    }
  }
  char line[128];
  std::snprintf(line, sizeof line, decomp ? "%-6s %-24s %s\n" : "%-6s %s\n", "i", "lambda_i", "|c_i|");
  out << line;
  for (std::size_t i = 0; i < n; ++i) {
    if (decomp) {
      std::snprintf(line, sizeof line, "%-6zu %-24.15g %.15g\n", i + 1, lambda[i],
                    std::abs(decomp->modal_coeffs[i]));
    } else {
      std::snprintf(line, sizeof line, "%-6zu %.15g\n", i + 1, lambda[i]);
    }
    out << line;
  }
  return kExitOk;
}

int do_analyze(const AnalyzeArgs& a, std::ostream& out, std::ostream& err) {
  const Trajectory traj = read_trajectory_csv(a.csv);
  std::vector<CheckReport> reports;
  for (const auto& name : a.checks) reports.push_back(run_check(name, traj, err));
  out << format_report_table(reports);
  if (a.report_json) write_text_file(*a.report_json, reports_to_json(reports));
  return all_passed(reports) ? kExitOk : kExitCheckFailed;
}

int do_reproduce(const std::string& figure, const std::string& out_dir, std::ostream& out) {
  std::filesystem::create_directories(out_dir);
  for (const auto& f : reproduce_figure(figure, out_dir)) {
    out << f.path.string() << " (" << f.description << ")\n";
  }
  return kExitOk;
}

int do_validate(const ValidateArgs& a, std::ostream& out) {
  ValidationConfig cfg;
  cfg.ensemble_size = a.ensemble_size;
  cfg.seed = a.seed;
  cfg.threads = a.threads;
  const auto reports = run_validation(cfg);
  out << format_report_table(reports);
  if (a.report_json) write_text_file(*a.report_json, reports_to_json(reports));
  return all_passed(reports) ? kExitOk : kExitCheckFailed;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Polygon shortening flows: simulation, spectra and theorem checks", "polyflow"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run a scenario file");
  simulate->add_option("--scenario", sim.scenario, "Scenario JSON")->required()->check(CLI::ExistingFile);
  simulate->add_option("--flow", sim.flow, "linear, menger-melnikov or bisector");
  simulate->add_option("--dt", sim.dt, "Time step");
  simulate->add_option("--t-end", sim.t_end, "Final time");
  simulate->add_option("--seed", sim.seed, "Generator seed");
  simulate->add_option("--out-csv", sim.out_csv, "Trajectory CSV path");
  simulate->add_option("--out-svg", sim.out_svg, "SVG figure path");
  simulate->add_option("--out-report", sim.out_report, "Check report JSON path");
  simulate->add_option("--out-dir", sim.out_dir, "Directory for the scenario's listed outputs");

  std::size_t spectrum_n = 0;
  std::optional<std::string> spectrum_scenario;
  auto* spectrum = app.add_subcommand("spectrum", "Print the eigenvalue table");
  spectrum->add_option("--n", spectrum_n, "Number of vertices")->required();
  spectrum->add_option("--scenario", spectrum_scenario, "Also print modal magnitudes of this polygon")
      ->check(CLI::ExistingFile);

  AnalyzeArgs ana;
  auto* analyze = app.add_subcommand("analyze", "Replay checks on a saved trajectory");
  analyze->add_option("--csv", ana.csv, "Trajectory CSV")->required()->check(CLI::ExistingFile);
  analyze->add_option("--checks", ana.checks, "star,convex,perimeter,area,ellipse")->delimiter(',');
  analyze->add_option("--report-json", ana.report_json, "Write the reports as JSON");

  std::string figure;
  std::string figure_dir = ".";
  auto* reproduce = app.add_subcommand("reproduce", "Emit a figure");
  reproduce->add_option("figure", figure, "fig7, fig8, fig9 or fig10")->required();
  reproduce->add_option("--out-dir", figure_dir, "Output directory");

  ValidateArgs val;
  auto* validate = app.add_subcommand("validate", "Run the randomized theorem suite");
  validate->add_option("--ensemble-size", val.ensemble_size, "Base ensemble size")->check(CLI::PositiveNumber);
  validate->add_option("--seed", val.seed, "Suite seed");
  validate->add_option("--threads", val.threads, "Worker threads (0: all cores)");
  validate->add_option("--report-json", val.report_json, "Write the reports as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (simulate->parsed()) return do_simulate(sim, out, err);
    if (spectrum->parsed()) return do_spectrum(spectrum_n, spectrum_scenario, out);
    if (analyze->parsed()) return do_analyze(ana, out, err);
    if (reproduce->parsed()) return do_reproduce(figure, figure_dir, out);
    if (validate->parsed()) return do_validate(val, out);
  } catch (const Error& e) {
    err << "polyflow: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "polyflow: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

int cli_main(int argc, const char* const* argv) { return cli_main(argc, argv, std::cout, std::cerr); }

}  // namespace polyflow
