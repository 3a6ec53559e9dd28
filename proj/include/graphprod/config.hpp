#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "graphprod/rd_verifier.hpp"

namespace graphprod {

/// One vertex of the graph section: `cyclic` (with `order`), `integers`, or
/// `table` (with a Cayley `table`); finite kinds accept an explicit `lengths` list.
struct VertexDecl {
  GroupKind kind = GroupKind::Cyclic;
  std::int64_t order = 2;
  std::vector<std::vector<std::int64_t>> table;
  std::optional<std::vector<Length>> lengths;

  friend bool operator==(const VertexDecl&, const VertexDecl&) = default;
};

struct ScanSettings {
  std::size_t k_max = 4;
  std::size_t l_max = 4;
  /// Random restarts of the power iteration.
  std::size_t budget = 16;
  std::size_t iterations = 200;
  double tolerance = 1e-10;
  std::vector<double> r_grid{0.0, 0.5, 1.0, 1.5, 2.0, 3.0};
  double stability_tolerance = 0.1;
  /// Random (phi, psi) samples per row or per (k, l) pair.
  std::size_t trials = 4;

  friend bool operator==(const ScanSettings&, const ScanSettings&) = default;
};

struct WorkbenchConfig {
  std::vector<VertexDecl> vertices;
  std::vector<std::pair<Vertex, Vertex>> edges;
  BallSpec window;
  ScanSettings scan;
  std::uint64_t seed = 42;
  std::string output_dir = "out";
  std::string format = "csv";

  friend bool operator==(const WorkbenchConfig&, const WorkbenchConfig&) = default;
};

/// Parses the JSON config; syntax errors carry line and column, schema errors
/// name the offending key path. The result is validated.
WorkbenchConfig parse_config(std::string_view text);
WorkbenchConfig load_config(const std::filesystem::path& path);
/// Inverse of parse_config (pretty-printed JSON).
std::string dump_config(const WorkbenchConfig& config);

/// Window and range consistency: k_max, l_max <= lambda_max, ell_max > 0 when
/// some vertex group is infinite, sensible scan parameters.
void validate(const WorkbenchConfig& config);

std::unique_ptr<PresentationGraph> build_graph(const WorkbenchConfig& config);
ScanOptions scan_options(const WorkbenchConfig& config, std::size_t threads);

}  // namespace graphprod
