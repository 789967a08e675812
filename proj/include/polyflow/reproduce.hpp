#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "polyflow/scenario.hpp"
#include "polyflow/trajectory_io.hpp"

namespace polyflow {

/// Figure names accepted by reproduce: fig7, fig8, fig9, fig10.
std::vector<std::string> figure_names();

/// The shipped scenarios behind a figure. fig9 has three: the same star
/// polygon under the linear and norm-matched bisector flows, and a thin
/// polygon on which the unit-speed bisector flow captures. Throws
/// Error(InvalidArgument) for an unknown figure.
std::vector<Scenario> figure_scenarios(std::string_view figure);

/// Snapshot times used when drawing a scenario's figure.
SvgOptions figure_svg_options(const Scenario& scenario);

struct EmittedFile {
  std::filesystem::path path;
  std::string description;
};

/// Runs the figure's scenarios and writes `<scenario>.svg` and
/// `<scenario>.csv` into out_dir (plus `<scenario>_area.csv` for fig8).
std::vector<EmittedFile> reproduce_figure(std::string_view figure, const std::filesystem::path& out_dir);

}  // namespace polyflow
