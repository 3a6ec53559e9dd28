#pragma once

#include <memory>
#include <string>
#include <vector>

#include "graphprod/config.hpp"

namespace testing_support {

/// One of the shipped example configs with its graph built.
struct Fixture {
  std::string name;
  graphprod::WorkbenchConfig config;
  std::unique_ptr<graphprod::PresentationGraph> graph;

  graphprod::BallSpec spec() const { return config.window; }
};

/// Names of the shipped fixtures, in a fixed order.
const std::vector<std::string>& fixture_names();
Fixture load_fixture(const std::string& name);
std::vector<Fixture> load_all_fixtures();
std::string config_path(const std::string& name);

/// Single-vertex and two-vertex graphs built directly, for tests that need a
/// particular vertex group.
std::unique_ptr<graphprod::PresentationGraph> make_graph(
    std::vector<graphprod::VertexGroup> groups,
    std::vector<std::pair<graphprod::Vertex, graphprod::Vertex>> edges = {});

}  // namespace testing_support
