#include "polyflow/scenario.hpp"

#include "json.hpp"

#include "polyflow/error.hpp"
#include "polyflow/trajectory_io.hpp"

namespace polyflow {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); }

double number_at(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number()) bad(std::string("scenario key '") + key + "' must be a number");
  return v.get<double>();
}

std::vector<Point> parse_vertices(const json& arr) {
  std::vector<Point> z;
  for (const auto& v : arr) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      bad("polygon vertices must be [x, y] number pairs");
    }
    z.emplace_back(v[0].get<double>(), v[1].get<double>());
  }
  return z;
}

GeneratorSpec parse_generator(const json& obj) {
  if (!obj.contains("generator") || !obj.at("generator").is_string()) {
    bad("polygon object needs a 'generator' name");
  }
  const auto kind = generator_kind_from_string(obj.at("generator").get<std::string>());
  if (!kind) bad("unknown generator '" + obj.at("generator").get<std::string>() + "'");
  GeneratorSpec spec;
  spec.kind = *kind;
  if (obj.contains("n")) {
    if (!obj.at("n").is_number_unsigned()) bad("generator 'n' must be a positive integer");
    spec.n = obj.at("n").get<std::size_t>();
  }
  if (obj.contains("radius")) {
    const auto& r = obj.at("radius");
    if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number()) {
      bad("generator 'radius' must be [r_min, r_max]");
    }
    spec.r_min = r[0].get<double>();
    spec.r_max = r[1].get<double>();
  }
  return spec;
}

FlowSpec parse_flow(const json& obj) {
  if (!obj.is_object() || !obj.contains("kind") || !obj.at("kind").is_string()) {
    bad("'flow' must be an object with a 'kind'");
  }
  const FlowKind kind = flow_kind_from_string(obj.at("kind").get<std::string>());
  if (kind == FlowKind::Linear) return FlowSpec::linear();
  if (kind == FlowKind::MengerMelnikov) return FlowSpec::menger_melnikov();
  BisectorSpeedMode mode = BisectorSpeedMode::Unit;
  if (obj.contains("mode")) {
    const auto m = obj.at("mode").get<std::string>();
    if (m == "unit") {
      mode = BisectorSpeedMode::Unit;
    } else if (m == "norm-matched") {
      mode = BisectorSpeedMode::NormMatched;
    } else {
      bad("bisector 'mode' must be 'unit' or 'norm-matched'");
    }
  }
  return FlowSpec::bisector(mode, number_at(obj, "speed", 1.0));
}

}  // namespace

std::string_view to_string(FlowKind kind) {
  switch (kind) {
    case FlowKind::Linear: return "linear";
    case FlowKind::MengerMelnikov: return "menger-melnikov";
    case FlowKind::Bisector: return "bisector";
  }
  return "unknown";
}

FlowKind flow_kind_from_string(std::string_view s) {
  for (auto k : {FlowKind::Linear, FlowKind::MengerMelnikov, FlowKind::Bisector}) {
    if (to_string(k) == s) return k;
  }
  bad("unknown flow kind '" + std::string(s) + "'");
}

Scenario parse_scenario(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    bad(std::string("scenario is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) bad("scenario must be a JSON object");

  try {
    Scenario sc;
    sc.name = doc.value("name", std::string("scenario"));
    if (!doc.contains("polygon")) bad("scenario needs a 'polygon'");
    const auto& poly = doc.at("polygon");
    if (poly.is_array()) {
      sc.polygon_source = parse_vertices(poly);
    } else if (poly.is_object()) {
      sc.polygon_source = parse_generator(poly);
    } else {
      bad("'polygon' must be a vertex list or a generator object");
    }
    if (doc.contains("seed")) {
      if (!doc.at("seed").is_number_unsigned()) bad("'seed' must be a non-negative integer");
      sc.seed = doc.at("seed").get<std::uint64_t>();
    }
    sc.flow = doc.contains("flow") ? parse_flow(doc.at("flow")) : FlowSpec::linear();

    const json sim = doc.value("sim", json::object());
    if (!sim.is_object()) bad("'sim' must be an object");
    sc.sim = default_config(sc.flow.kind(), 1.0);
    sc.sim.dt = number_at(sim, "dt", sc.sim.dt);
    sc.sim.t_end = number_at(sim, "t_end", sc.sim.t_end);
    sc.sim.stop_diameter = number_at(sim, "stop_diameter", sc.sim.stop_diameter);
    if (sim.contains("record_every")) {
      if (!sim.at("record_every").is_number_unsigned()) bad("'record_every' must be a positive integer");
      sc.sim.record_every = sim.at("record_every").get<std::size_t>();
    }
    if (sim.contains("adaptive")) sc.sim.adaptive = sim.at("adaptive").get<bool>();
    if (sim.contains("min_edge_capture")) {
      sc.sim.min_edge_capture = number_at(sim, "min_edge_capture", 0.0);
    } else if (sc.flow.kind() == FlowKind::Bisector) {
      sc.sim.min_edge_capture = 1e-6 * diameter(initial_polygon(sc));
    }
    sc.sim.validate();

    for (const auto& o : doc.value("outputs", json::array())) {
      const auto s = o.get<std::string>();
      if (s == "csv") {
        sc.outputs.insert(OutputKind::Csv);
      } else if (s == "svg") {
        sc.outputs.insert(OutputKind::Svg);
      } else if (s == "report_json") {
        sc.outputs.insert(OutputKind::ReportJson);
      } else {
        bad("unknown output '" + s + "'");
      }
    }
    return sc;
  } catch (const json::exception& e) {
    bad(std::string("malformed scenario: ") + e.what());
  }
}

Scenario load_scenario(const std::filesystem::path& path) {
  try {
    return parse_scenario(read_text_file(path));
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::string scenario_to_json(const Scenario& sc) {
  nlohmann::ordered_json doc;
  doc["name"] = sc.name;
  if (const auto* z = std::get_if<std::vector<Point>>(&sc.polygon_source)) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& p : *z) arr.push_back({p.real(), p.imag()});
    doc["polygon"] = arr;
  } else {
    const auto& g = std::get<GeneratorSpec>(sc.polygon_source);
    nlohmann::ordered_json obj;
    obj["generator"] = std::string(to_string(g.kind));
    const bool fixed = g.kind == GeneratorKind::Boomerang || g.kind == GeneratorKind::EmbeddedLoss ||
                       g.kind == GeneratorKind::Elongated;
    if (!fixed) obj["n"] = g.n;
    if (g.kind == GeneratorKind::RandomStar) obj["radius"] = {g.r_min, g.r_max};
    doc["polygon"] = obj;
  }
  nlohmann::ordered_json flow;
  flow["kind"] = std::string(to_string(sc.flow.kind()));
  if (const auto& b = sc.flow.bisector_params()) {
    flow["mode"] = b->mode == BisectorSpeedMode::Unit ? "unit" : "norm-matched";
    flow["speed"] = b->speed;
  }
  doc["flow"] = flow;
  doc["sim"] = {{"dt", sc.sim.dt},
                {"t_end", sc.sim.t_end},
                {"stop_diameter", sc.sim.stop_diameter},
                {"record_every", sc.sim.record_every},
                {"adaptive", sc.sim.adaptive},
                {"min_edge_capture", sc.sim.min_edge_capture}};
  doc["seed"] = sc.seed;
  nlohmann::ordered_json outputs = nlohmann::ordered_json::array();
  for (auto o : sc.outputs) {
    outputs.push_back(o == OutputKind::Csv ? "csv" : o == OutputKind::Svg ? "svg" : "report_json");
  }
  doc["outputs"] = outputs;
  return doc.dump(2) + "\n";
}

Polygon initial_polygon(const Scenario& sc) {
  if (const auto* z = std::get_if<std::vector<Point>>(&sc.polygon_source)) return Polygon(*z);
  return generate(std::get<GeneratorSpec>(sc.polygon_source), sc.seed);
}

}  // namespace polyflow
