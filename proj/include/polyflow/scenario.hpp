#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "polyflow/flows.hpp"
#include "polyflow/generators.hpp"
#include "polyflow/simulate.hpp"

namespace polyflow {

enum class OutputKind { Csv, Svg, ReportJson };

/// A runnable experiment. On disk it is one JSON document:
///
///   {
///     "name": "fig7",
///     "polygon": [[x, y], ...]                      explicit vertices, or
///     "polygon": {"generator": "random_star", "n": 10, "radius": [0.5, 1.5]},
///     "flow": {"kind": "linear" | "menger-melnikov" | "bisector",
///              "mode": "unit" | "norm-matched", "speed": 1.0},
///     "sim": {"dt": 0.001, "t_end": 10, "stop_diameter": 1e-6,
///             "record_every": 10, "adaptive": false, "min_edge_capture": 0},
///     "seed": 42,
///     "outputs": ["csv", "svg", "report_json"]
///   }
///
/// "mode" and "speed" apply only to the bisector flow. Missing "sim" keys
/// take the flow's defaults (see default_config).
struct Scenario {
  std::string name;
  std::variant<std::vector<Point>, GeneratorSpec> polygon_source;
  FlowSpec flow = FlowSpec::linear();
  SimConfig sim;
  std::uint64_t seed = 0;
  std::set<OutputKind> outputs;
};

/// Throws Error(InvalidArgument) naming the offending key.
Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario(const std::filesystem::path& path);
std::string scenario_to_json(const Scenario& scenario);

/// Explicit vertices, or generate(spec, scenario.seed).
Polygon initial_polygon(const Scenario& scenario);

std::string_view to_string(FlowKind kind);
/// Accepts "linear", "menger-melnikov", "bisector".
FlowKind flow_kind_from_string(std::string_view s);

}  // namespace polyflow
