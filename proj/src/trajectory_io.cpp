#include "polyflow/trajectory_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "polyflow/error.hpp"

namespace polyflow {

namespace {

constexpr std::string_view kTerminationPrefix = "# termination=";
constexpr std::size_t kDiagnosticColumns = 5;

void append_number(std::string& out, double v, int precision = 17) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, precision);
  out.append(buf, res.ptr);
}

std::string number(double v, int precision) {
  std::string s;
  append_number(s, v, precision);
  return s;
}

double parse_number(std::string_view field, std::size_t line_no) {
  double v = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw Error(ErrorCode::Io, "line " + std::to_string(line_no) + ": bad number '" +
                                   std::string(field) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string header(std::size_t n) {
  std::string h = "t";
  for (std::size_t i = 1; i <= n; ++i) {
    h += ",x" + std::to_string(i) + ",y" + std::to_string(i);
  }
  h += ",perimeter,area,minF,minH,min_edge";
  return h;
}

}  // namespace

std::string format_trajectory_csv(const Trajectory& traj) {
  if (traj.empty()) throw Error(ErrorCode::InvalidArgument, "cannot write an empty trajectory");
  const std::size_t n = traj.states.front().size();
  std::string out = header(n) + "\n";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    append_number(out, traj.times[k]);
    for (const auto& p : traj.states[k].vertices()) {
      out += ',';
      append_number(out, p.real());
      out += ',';
      append_number(out, p.imag());
    }
    const auto& d = traj.diagnostics[k];
    for (double v : {d.perimeter, d.signed_area, d.min_f, d.min_h, d.min_edge}) {
      out += ',';
      append_number(out, v);
    }
    out += '\n';
  }
  out += kTerminationPrefix;
  out += to_string(traj.termination);
  out += '\n';
  return out;
}

Trajectory parse_trajectory_csv(std::string_view text) {
  auto lines = split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.size() < 2) throw Error(ErrorCode::Io, "trajectory CSV needs a header and data rows");

  const auto columns = split(lines.front(), ',');
  if (columns.size() < 1 + 2 * 3 + kDiagnosticColumns || (columns.size() - 1 - kDiagnosticColumns) % 2 != 0) {
    throw Error(ErrorCode::Io, "unexpected trajectory CSV header");
  }
  const std::size_t n = (columns.size() - 1 - kDiagnosticColumns) / 2;
  if (lines.front() != header(n)) throw Error(ErrorCode::Io, "unexpected trajectory CSV header");

  Trajectory traj;
  bool have_termination = false;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto line = lines[li];
    if (line.starts_with(kTerminationPrefix)) {
      const auto reason = termination_from_string(line.substr(kTerminationPrefix.size()));
      if (!reason || li + 1 != lines.size()) {
        throw Error(ErrorCode::Io, "line " + std::to_string(li + 1) + ": bad termination line");
      }
      traj.termination = *reason;
      have_termination = true;
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != columns.size()) {
      throw Error(ErrorCode::Io, "line " + std::to_string(li + 1) + ": expected " +
                                     std::to_string(columns.size()) + " columns");
    }
    std::vector<Point> z(n);
    for (std::size_t i = 0; i < n; ++i) {
      z[i] = Point{parse_number(fields[1 + 2 * i], li + 1), parse_number(fields[2 + 2 * i], li + 1)};
    }
    const std::size_t base = 1 + 2 * n;
    SampleDiagnostics d{parse_number(fields[base], li + 1), parse_number(fields[base + 1], li + 1),
                        parse_number(fields[base + 2], li + 1), parse_number(fields[base + 3], li + 1),
                        parse_number(fields[base + 4], li + 1)};
    traj.times.push_back(parse_number(fields[0], li + 1));
    traj.states.emplace_back(std::move(z));
    traj.diagnostics.push_back(d);
  }
  if (!have_termination) throw Error(ErrorCode::Io, "missing '# termination=' line");
  if (traj.empty()) throw Error(ErrorCode::Io, "trajectory CSV has no samples");
  return traj;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorCode::Io, "failed writing '" + path.string() + "'");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path) {
  write_text_file(path, format_trajectory_csv(traj));
}

Trajectory read_trajectory_csv(const std::filesystem::path& path) {
  try {
    return parse_trajectory_csv(read_text_file(path));
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::string format_area_csv(const Trajectory& traj) {
  std::string out = "t,area\n";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    append_number(out, traj.times[k]);
    out += ',';
    append_number(out, traj.diagnostics[k].signed_area);
    out += '\n';
  }
  return out;
}

std::string render_svg(const Trajectory& traj, const SvgOptions& options) {
  if (traj.empty()) throw Error(ErrorCode::InvalidArgument, "cannot render an empty trajectory");

  std::vector<std::size_t> snapshots;
  if (options.snapshot_times.empty()) {
    snapshots = {0, traj.size() - 1};
  } else {
    for (double want : options.snapshot_times) {
      std::size_t best = 0;
      for (std::size_t k = 1; k < traj.size(); ++k) {
        if (std::abs(traj.times[k] - want) < std::abs(traj.times[best] - want)) best = k;
      }
      snapshots.push_back(best);
    }
  }
  std::sort(snapshots.begin(), snapshots.end());
  snapshots.erase(std::unique(snapshots.begin(), snapshots.end()), snapshots.end());

  // Bounds over everything that will be drawn (y is flipped for SVG).
  double min_x = std::numeric_limits<double>::infinity();
  double max_x = -min_x;
  double min_y = min_x;
  double max_y = -min_x;
  auto include = [&](Point p) {
    min_x = std::min(min_x, p.real());
    max_x = std::max(max_x, p.real());
    min_y = std::min(min_y, 0.0 - p.imag());
    max_y = std::max(max_y, 0.0 - p.imag());
  };
  if (options.show_trajectories) {
    for (const auto& s : traj.states) {
      for (const auto& p : s.vertices()) include(p);
    }
  } else {
    for (auto k : snapshots) {
      for (const auto& p : traj.states[k].vertices()) include(p);
    }
  }
  const Point center = centroid(traj.states.front());
  if (options.mark_centroid) include(center);

  double span = std::max(max_x - min_x, max_y - min_y);
  if (!(span > 0.0)) span = 1.0;
  const double margin = 0.05 * span;
  const double vb_x = min_x - margin;
  const double vb_y = min_y - margin;
  const double vb_w = (max_x - min_x) + 2.0 * margin;
  const double vb_h = (max_y - min_y) + 2.0 * margin;
  const double stroke = 0.004 * span;
  constexpr int kDigits = 9;
  auto xy = [&](Point p) { return number(p.real(), kDigits) + " " + number(0.0 - p.imag(), kDigits); };

  std::string svg = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"600\" height=\"" +
         number(std::round(600.0 * vb_h / vb_w), kDigits) + "\" viewBox=\"" + number(vb_x, kDigits) + " " +
         number(vb_y, kDigits) + " " + number(vb_w, kDigits) + " " + number(vb_h, kDigits) + "\">\n";

  if (options.show_trajectories) {
    svg += "<g id=\"trajectories\" fill=\"none\" stroke=\"#7f7f7f\" stroke-width=\"" +
           number(0.5 * stroke, kDigits) + "\" stroke-dasharray=\"" + number(3.0 * stroke, kDigits) +
           " " + number(2.0 * stroke, kDigits) + "\">\n";
    const std::size_t n = traj.states.front().size();
    for (std::size_t i = 0; i < n; ++i) {
      svg += "<polyline id=\"vertex-" + std::to_string(i + 1) + "\" points=\"";
      for (std::size_t k = 0; k < traj.size(); ++k) {
        const Point p = traj.states[k].vertices()[i];
        if (k > 0) svg += ' ';
        svg += number(p.real(), kDigits) + "," + number(0.0 - p.imag(), kDigits);
      }
      svg += "\"/>\n";
    }
    svg += "</g>\n";
  }

  svg += "<g id=\"snapshots\" fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"" + number(stroke, kDigits) +
         "\" stroke-linejoin=\"round\">\n";
  for (std::size_t s = 0; s < snapshots.size(); ++s) {
    const auto& poly = traj.states[snapshots[s]];
    svg += "<path id=\"snapshot-" + std::to_string(s + 1) + "\" data-t=\"" +
           number(traj.times[snapshots[s]], kDigits) + "\" d=\"M " + xy(poly.vertices()[0]);
    for (std::size_t i = 1; i < poly.size(); ++i) svg += " L " + xy(poly.vertices()[i]);
    svg += " Z\"/>\n";
  }
  svg += "</g>\n";

  if (options.mark_centroid) {
    const double r = 0.02 * span;
    svg += "<g id=\"centroid\" stroke=\"#c0392b\" stroke-width=\"" + number(stroke, kDigits) + "\">\n";
    for (int arm = 0; arm < 3; ++arm) {
      const Point d = std::polar(r, std::numbers::pi / 2.0 + arm * std::numbers::pi / 3.0);
      const Point a = center + d;
      const Point b = center - d;
      svg += "<line x1=\"" + number(a.real(), kDigits) + "\" y1=\"" + number(0.0 - a.imag(), kDigits) +
             "\" x2=\"" + number(b.real(), kDigits) + "\" y2=\"" + number(0.0 - b.imag(), kDigits) + "\"/>\n";
    }
    svg += "</g>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace polyflow
