#include "polyflow/reproduce.hpp"

#include "polyflow/error.hpp"

namespace polyflow {

namespace {

Scenario make(std::string name, std::variant<std::vector<Point>, GeneratorSpec> source, FlowSpec flow,
              double t_end, std::size_t record_every, std::uint64_t seed) {
  Scenario sc;
  sc.name = std::move(name);
  sc.polygon_source = std::move(source);
  sc.flow = flow;
  sc.seed = seed;
  sc.sim = default_config(flow.kind(), diameter(initial_polygon(sc)));
  sc.sim.t_end = t_end;
  sc.sim.record_every = record_every;
  sc.outputs = {OutputKind::Csv, OutputKind::Svg};
  return sc;
}

// Fixed polygons are shipped as explicit vertex lists.
std::vector<Point> fixture(GeneratorKind kind) {
  const Polygon p = generate(GeneratorSpec{kind}, 0);
  return {p.vertices().begin(), p.vertices().end()};
}

GeneratorSpec star10() { return GeneratorSpec{GeneratorKind::RandomStar, 10, 0.5, 1.5}; }

}  // namespace

std::vector<std::string> figure_names() { return {"fig7", "fig8", "fig9", "fig10"}; }

std::vector<Scenario> figure_scenarios(std::string_view figure) {
  if (figure == "fig7") {
    return {make("fig7", star10(), FlowSpec::linear(), 15.0, 50, 42)};
  }
  if (figure == "fig8") {
    return {make("fig8", fixture(GeneratorKind::Boomerang), FlowSpec::linear(), 3.0, 10, 0)};
  }
  if (figure == "fig9") {
    return {
        make("fig9_linear", star10(), FlowSpec::linear(), 6.0, 20, 42),
        make("fig9_bisector", star10(), FlowSpec::bisector(BisectorSpeedMode::NormMatched), 6.0, 20, 42),
        make("fig9_capture", fixture(GeneratorKind::Elongated), FlowSpec::bisector(), 5.0, 10, 0),
    };
  }
  if (figure == "fig10") {
    return {make("fig10", fixture(GeneratorKind::EmbeddedLoss), FlowSpec::linear(), 3.0, 10, 0)};
  }
  throw Error(ErrorCode::InvalidArgument, "unknown figure '" + std::string(figure) +
                                              "' (expected fig7, fig8, fig9 or fig10)");
}

SvgOptions figure_svg_options(const Scenario& scenario) {
  SvgOptions opt;
  opt.show_trajectories = true;
  opt.mark_centroid = true;
  const double t = scenario.sim.t_end;
  opt.snapshot_times = {0.0, 0.1 * t, 0.3 * t, t};
  return opt;
}

std::vector<EmittedFile> reproduce_figure(std::string_view figure, const std::filesystem::path& out_dir) {
  std::vector<EmittedFile> emitted;
  for (const auto& sc : figure_scenarios(figure)) {
    const Trajectory traj = run(initial_polygon(sc), sc.flow, sc.sim);
    const auto svg_path = out_dir / (sc.name + ".svg");
    write_text_file(svg_path, render_svg(traj, figure_svg_options(sc)));
    emitted.push_back({svg_path, "figure"});
    const auto csv_path = out_dir / (sc.name + ".csv");
    write_trajectory_csv(traj, csv_path);
    emitted.push_back({csv_path, "trajectory"});
    if (figure == "fig8") {
      const auto area_path = out_dir / (sc.name + "_area.csv");
      write_text_file(area_path, format_area_csv(traj));
      emitted.push_back({area_path, "area vs time"});
    }
  }
  return emitted;
}

}  // namespace polyflow
