#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "polyflow/simulate.hpp"

namespace polyflow {

// Trajectory CSV:
//   t,x1,y1,...,xn,yn,perimeter,area,minF,minH,min_edge
//   <one row per sample, 17 significant digits, '.' decimal separator>
//   # termination=<T_END|COLLAPSED|CAPTURE|DEGENERATE>
// Lines end in '\n'. Reading a written file reproduces the trajectory
// bit-for-bit, diagnostics included.

/// Throws Error(InvalidArgument) for an empty trajectory.
std::string format_trajectory_csv(const Trajectory& traj);
/// Throws Error(Io) on malformed input.
Trajectory parse_trajectory_csv(std::string_view text);

/// Throws Error(Io) with the path on I/O failure.
void write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path);
Trajectory read_trajectory_csv(const std::filesystem::path& path);

/// Two-column `t,area` series (signed area), same number formatting.
std::string format_area_csv(const Trajectory& traj);

struct SvgOptions {
  bool show_trajectories = true;
  /// Requested snapshot times; each draws the recorded sample nearest to it.
  /// Empty means the first and last samples.
  std::vector<double> snapshot_times;
  bool mark_centroid = true;
};

/// SVG 1.1 document: snapshot outlines as closed solid paths, vertex paths
/// as dashed polylines and the initial centroid as an asterisk. The viewBox
/// fits every drawn point with a 5% margin; output is a pure function of
/// the inputs. Throws Error(InvalidArgument) for an empty trajectory.
std::string render_svg(const Trajectory& traj, const SvgOptions& options);

/// Writes text to a file, throwing Error(Io) with the path on failure.
void write_text_file(const std::filesystem::path& path, std::string_view text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace polyflow
