#include "graphprod/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "graphprod/error.hpp"

namespace graphprod {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw ParseError("config " + path + ": " + what);
}

void only_keys(const json& j, const std::string& path, std::initializer_list<const char*> keys) {
  if (!j.is_object()) {
    schema_error(path, "expected an object");
  }
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [key, value] : j.items()) {
    if (allowed.count(key) == 0) {
      schema_error(path + "." + key, "unknown key");
    }
  }
}

template <typename T>
T read(const json& j, const std::string& path) {
  try {
    if constexpr (std::is_unsigned_v<T>) {
      if (!j.is_number_unsigned()) {
        schema_error(path, "expected a non-negative integer");
      }
    } else if constexpr (std::is_integral_v<T>) {
      if (!j.is_number_integer()) {
        schema_error(path, "expected an integer");
      }
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!j.is_number()) {
        schema_error(path, "expected a number");
      }
    }
    return j.get<T>();
  } catch (const json::exception& e) {
    schema_error(path, e.what());
  }
}

template <typename T>
void read_optional(const json& parent, const char* key, const std::string& path, T& target) {
  if (parent.contains(key)) {
    target = read<T>(parent.at(key), path + "." + key);
  }
}

const json& required(const json& parent, const char* key, const std::string& path) {
  if (!parent.contains(key)) {
    schema_error(path + "." + key, "missing");
  }
  return parent.at(key);
}

VertexDecl read_vertex(const json& j, const std::string& path) {
  only_keys(j, path, {"group", "order", "table", "lengths"});
  VertexDecl out;
  const auto kind = read<std::string>(required(j, "group", path), path + ".group");
  if (kind == "cyclic") {
    out.kind = GroupKind::Cyclic;
    out.order = read<std::int64_t>(required(j, "order", path), path + ".order");
    if (out.order < 1) {
      schema_error(path + ".order", "expected a positive integer, got " + std::to_string(out.order));
    }
  } else if (kind == "integers") {
    out.kind = GroupKind::Integers;
    out.order = 0;
    if (j.contains("order") || j.contains("table") || j.contains("lengths")) {
      schema_error(path, "the integers take no order, table or lengths");
    }
  } else if (kind == "table") {
    out.kind = GroupKind::CayleyTable;
    out.table = read<std::vector<std::vector<std::int64_t>>>(required(j, "table", path),
                                                              path + ".table");
    out.order = static_cast<std::int64_t>(out.table.size());
  } else {
    schema_error(path + ".group", "expected 'cyclic', 'integers' or 'table', got '" + kind + "'");
  }
  if (out.kind != GroupKind::CayleyTable && j.contains("table")) {
    schema_error(path + ".table", "only table groups take a table");
  }
  if (out.kind == GroupKind::CayleyTable && j.contains("order")) {
    schema_error(path + ".order", "table groups take their order from the table");
  }
  if (j.contains("lengths")) {
    out.lengths = read<std::vector<Length>>(j.at("lengths"), path + ".lengths");
  }
  return out;
}

std::size_t line_of(std::string_view text, std::size_t byte, std::size_t& column) {
  std::size_t line = 1;
  column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return line;
}

}  // namespace

WorkbenchConfig parse_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // e.byte is 1-based and points at the offending character.
    std::size_t column = 0;
    const auto line = line_of(text, e.byte > 0 ? e.byte - 1 : 0, column);
    std::string what = e.what();
    if (auto pos = what.find("syntax error"); pos != std::string::npos) {
      what = what.substr(pos);
    }
    throw ParseError(what, line, column);
  }

  WorkbenchConfig config;
  only_keys(root, "$", {"graph", "window", "scan", "seed", "output"});

  const auto& graph = required(root, "graph", "$");
  only_keys(graph, "$.graph", {"vertices", "edges"});
  const auto& vertices = required(graph, "vertices", "$.graph");
  if (!vertices.is_array()) {
    schema_error("$.graph.vertices", "expected an array");
  }
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    config.vertices.push_back(read_vertex(vertices[i], "$.graph.vertices[" + std::to_string(i) + "]"));
  }
  if (graph.contains("edges")) {
    const auto& edges = graph.at("edges");
    if (!edges.is_array()) {
      schema_error("$.graph.edges", "expected an array of [u, v] pairs");
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const auto path = "$.graph.edges[" + std::to_string(i) + "]";
      const auto pair = read<std::vector<Vertex>>(edges[i], path);
      if (pair.size() != 2) {
        schema_error(path, "expected a pair [u, v]");
      }
      config.edges.emplace_back(pair[0], pair[1]);
    }
  }

  const auto& window = required(root, "window", "$");
  only_keys(window, "$.window", {"lambda_max", "ell_max"});
  config.window.lambda_max = read<std::size_t>(required(window, "lambda_max", "$.window"),
                                               "$.window.lambda_max");
  read_optional(window, "ell_max", "$.window", config.window.ell_max);

  if (root.contains("scan")) {
    const auto& scan = root.at("scan");
    only_keys(scan, "$.scan",
              {"k_max", "l_max", "budget", "iterations", "tolerance", "r_grid",
               "stability_tolerance", "trials"});
    read_optional(scan, "k_max", "$.scan", config.scan.k_max);
    read_optional(scan, "l_max", "$.scan", config.scan.l_max);
    read_optional(scan, "budget", "$.scan", config.scan.budget);
    read_optional(scan, "iterations", "$.scan", config.scan.iterations);
    read_optional(scan, "tolerance", "$.scan", config.scan.tolerance);
    read_optional(scan, "r_grid", "$.scan", config.scan.r_grid);
    read_optional(scan, "stability_tolerance", "$.scan", config.scan.stability_tolerance);
    read_optional(scan, "trials", "$.scan", config.scan.trials);
  }
  read_optional(root, "seed", "$", config.seed);
  if (root.contains("output")) {
    const auto& output = root.at("output");
    only_keys(output, "$.output", {"dir", "format"});
    read_optional(output, "dir", "$.output", config.output_dir);
    read_optional(output, "format", "$.output", config.format);
  }
  validate(config);
  return config;
}

WorkbenchConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open config file '" + path.string() + "'");
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string dump_config(const WorkbenchConfig& config) {
  json vertices = json::array();
  for (const auto& v : config.vertices) {
    json j;
    switch (v.kind) {
      case GroupKind::Cyclic:
        j["group"] = "cyclic";
        j["order"] = v.order;
        break;
      case GroupKind::Integers:
        j["group"] = "integers";
        break;
      case GroupKind::CayleyTable:
        j["group"] = "table";
        j["table"] = v.table;
        break;
    }
    if (v.lengths) {
      j["lengths"] = *v.lengths;
    }
    vertices.push_back(std::move(j));
  }
  json edges = json::array();
  for (const auto& [u, v] : config.edges) {
    edges.push_back({u, v});
  }
  json root{
      {"graph", {{"vertices", vertices}, {"edges", edges}}},
      {"window", {{"lambda_max", config.window.lambda_max}, {"ell_max", config.window.ell_max}}},
      {"scan",
       {{"k_max", config.scan.k_max},
        {"l_max", config.scan.l_max},
        {"budget", config.scan.budget},
        {"iterations", config.scan.iterations},
        {"tolerance", config.scan.tolerance},
        {"r_grid", config.scan.r_grid},
        {"stability_tolerance", config.scan.stability_tolerance},
        {"trials", config.scan.trials}}},
      {"seed", config.seed},
      {"output", {{"dir", config.output_dir}, {"format", config.format}}}};
  return root.dump(2) + "\n";
}

void validate(const WorkbenchConfig& config) {
  if (config.vertices.empty()) {
    throw PreconditionError("config declares no vertices");
  }
  // Building the graph checks vertex groups, lengths and edges.
  build_graph(config);
  bool infinite = false;
  for (const auto& v : config.vertices) {
    infinite = infinite || v.kind == GroupKind::Integers;
  }
  if (infinite && config.window.ell_max == 0) {
    throw PreconditionError("window.ell_max must be positive when a vertex group is infinite");
  }
  if (config.window.lambda_max > kMaxVertices) {
    throw PreconditionError("window.lambda_max = " + std::to_string(config.window.lambda_max) +
                            " exceeds " + std::to_string(kMaxVertices));
  }
  if (config.scan.k_max > config.window.lambda_max || config.scan.l_max > config.window.lambda_max) {
    throw PreconditionError("scan.k_max = " + std::to_string(config.scan.k_max) +
                            " and scan.l_max = " + std::to_string(config.scan.l_max) +
                            " must not exceed window.lambda_max = " +
                            std::to_string(config.window.lambda_max));
  }
  if (config.scan.budget == 0 || config.scan.iterations == 0) {
    throw PreconditionError("scan.budget and scan.iterations must be positive");
  }
  if (!(config.scan.tolerance > 0.0) || !(config.scan.stability_tolerance >= 0.0)) {
    throw PreconditionError("scan.tolerance must be positive and scan.stability_tolerance non-negative");
  }
  if (config.scan.r_grid.empty()) {
    throw PreconditionError("scan.r_grid must not be empty");
  }
  for (auto r : config.scan.r_grid) {
    if (!(r >= 0.0)) {
      throw PreconditionError("scan.r_grid values must be non-negative");
    }
  }
  if (config.format != "csv" && config.format != "json") {
    throw PreconditionError("output.format must be 'csv' or 'json', got '" + config.format + "'");
  }
}

std::unique_ptr<PresentationGraph> build_graph(const WorkbenchConfig& config) {
  std::vector<VertexGroup> groups;
  for (const auto& v : config.vertices) {
    switch (v.kind) {
      case GroupKind::Cyclic:
        groups.push_back(VertexGroup::cyclic(v.order, v.lengths));
        break;
      case GroupKind::Integers:
        groups.push_back(VertexGroup::integers());
        break;
      case GroupKind::CayleyTable:
        groups.push_back(VertexGroup::cayley_table(v.table, v.lengths));
        break;
    }
  }
  return std::make_unique<PresentationGraph>(std::move(groups), config.edges);
}

ScanOptions scan_options(const WorkbenchConfig& config, std::size_t threads) {
  ScanOptions out;
  out.k_max = config.scan.k_max;
  out.l_max = config.scan.l_max;
  out.trials = config.scan.trials;
  out.seed = config.seed;
  out.threads = threads;
  out.constants.r_grid = config.scan.r_grid;
  out.constants.stability_tolerance = config.scan.stability_tolerance;
  out.constants.power.restarts = config.scan.budget;
  out.constants.power.iterations = config.scan.iterations;
  out.constants.power.tolerance = config.scan.tolerance;
  out.constants.power.seed = config.seed;
  out.constants.power.threads = threads;
  return out;
}

}  // namespace graphprod
