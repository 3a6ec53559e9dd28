#include "fixtures.hpp"

namespace testing_support {

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names{"dihedral", "klein", "path_z2", "path_integers",
                                              "triangle_z3"};
  return names;
}

std::string config_path(const std::string& name) {
  return std::string(GRAPHPROD_CONFIG_DIR) + "/" + name + ".json";
}

Fixture load_fixture(const std::string& name) {
  Fixture f;
  f.name = name;
  f.config = graphprod::load_config(config_path(name));
  f.graph = graphprod::build_graph(f.config);
  return f;
}

std::vector<Fixture> load_all_fixtures() {
  std::vector<Fixture> out;
  for (const auto& name : fixture_names()) {
    out.push_back(load_fixture(name));
  }
  return out;
}

std::unique_ptr<graphprod::PresentationGraph> make_graph(
    std::vector<graphprod::VertexGroup> groups,
    std::vector<std::pair<graphprod::Vertex, graphprod::Vertex>> edges) {
  return std::make_unique<graphprod::PresentationGraph>(std::move(groups), edges);
}

}  // namespace testing_support
