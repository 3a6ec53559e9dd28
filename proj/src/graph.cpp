#include "graphprod/graph.hpp"

#include <algorithm>
#include <set>

#include "graphprod/error.hpp"
#include "graphprod/normal_form.hpp"

namespace graphprod {

VertexSet::VertexSet(std::initializer_list<Vertex> vertices) {
  for (auto v : vertices) {
    insert(v);
  }
}

VertexSet VertexSet::from(std::span<const Vertex> vertices) {
  VertexSet out;
  for (auto v : vertices) {
    out.insert(v);
  }
  return out;
}

void VertexSet::insert(Vertex v) {
  if (v >= kMaxVertices) {
    throw PreconditionError("vertex id " + std::to_string(v) + " exceeds the 64-vertex limit");
  }
  bits_ |= std::uint64_t{1} << v;
}

std::vector<Vertex> VertexSet::vertices() const {
  std::vector<Vertex> out;
  out.reserve(size());
  for (auto rest = bits_; rest != 0; rest &= rest - 1) {
    out.push_back(static_cast<Vertex>(std::countr_zero(rest)));
  }
  return out;
}

std::string VertexSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (auto v : vertices()) {
    if (!first) {
      out += ",";
    }
    out += std::to_string(v);
    first = false;
  }
  return out + "}";
}

namespace {

void bron_kerbosch(const std::vector<std::uint64_t>& adj, std::uint64_t r, std::uint64_t p,
                   std::uint64_t x, std::vector<std::uint64_t>& maximal) {
  if (p == 0 && x == 0) {
    maximal.push_back(r);
    return;
  }
  // Pivot on the vertex of P u X with most neighbours in P.
  std::uint64_t best = 0;
  int best_count = -1;
  for (auto rest = p | x; rest != 0; rest &= rest - 1) {
    const auto u = std::countr_zero(rest);
    const int count = std::popcount(p & adj[static_cast<std::size_t>(u)]);
    if (count > best_count) {
      best_count = count;
      best = adj[static_cast<std::size_t>(u)];
    }
  }
  for (auto rest = p & ~best; rest != 0; rest &= rest - 1) {
    const auto v = static_cast<std::size_t>(std::countr_zero(rest));
    const auto bit = std::uint64_t{1} << v;
    bron_kerbosch(adj, r | bit, p & adj[v], x & adj[v], maximal);
    p &= ~bit;
    x |= bit;
  }
}

bool clique_less(const Clique& a, const Clique& b) {
  if (a.size() != b.size()) {
    return a.size() < b.size();
  }
  return a.vertices() < b.vertices();
}

}  // namespace

PresentationGraph::PresentationGraph(std::vector<VertexGroup> groups,
                                     const std::vector<std::pair<Vertex, Vertex>>& edges)
    : groups_(std::move(groups)) {
  const auto n = groups_.size();
  if (n > kMaxVertices) {
    throw PreconditionError("graph has " + std::to_string(n) + " vertices; at most 64 supported");
  }
  adjacency_.assign(n, 0);
  for (auto [u, v] : edges) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) {
      throw PreconditionError("self-loop at vertex " + std::to_string(u));
    }
    const auto bit_v = std::uint64_t{1} << v;
    if ((adjacency_[u] & bit_v) != 0) {
      throw PreconditionError("duplicate edge {" + std::to_string(u) + "," + std::to_string(v) +
                              "}");
    }
    adjacency_[u] |= bit_v;
    adjacency_[v] |= std::uint64_t{1} << u;
    edges_.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(edges_.begin(), edges_.end());
  has_infinite_ = std::any_of(groups_.begin(), groups_.end(),
                              [](const VertexGroup& g) { return !g.is_finite(); });

  std::vector<std::uint64_t> maximal;
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  bron_kerbosch(adjacency_, 0, all, 0, maximal);
  std::set<std::uint64_t> every;
  for (auto m : maximal) {
    // every subset of a maximal clique; |V| is small so this stays cheap
    for (std::uint64_t sub = m;; sub = (sub - 1) & m) {
      every.insert(sub);
      if (sub == 0) {
        break;
      }
    }
  }
  for (auto bits : every) {
    cliques_.emplace_back(bits);
  }
  std::sort(cliques_.begin(), cliques_.end(), clique_less);
  size_offsets_.assign(n + 2, cliques_.size());
  for (std::size_t i = cliques_.size(); i-- > 0;) {
    size_offsets_[cliques_[i].size()] = i;
  }
  for (std::size_t m = n + 1; m-- > 0;) {
    size_offsets_[m] = std::min(size_offsets_[m], size_offsets_[m + 1]);
  }
}

const VertexGroup& PresentationGraph::group(Vertex v) const {
  check_vertex(v);
  return groups_[v];
}

void PresentationGraph::check_vertex(Vertex v) const {
  if (v >= groups_.size()) {
    throw PreconditionError("vertex id " + std::to_string(v) + " out of range (graph has " +
                            std::to_string(groups_.size()) + " vertices)");
  }
}

bool PresentationGraph::adjacent(Vertex u, Vertex v) const {
  check_vertex(u);
  check_vertex(v);
  return ((adjacency_[u] >> v) & 1U) != 0;
}

std::span<const Clique> PresentationGraph::cliques_of_size(std::size_t m) const {
  if (m > vertex_count()) {
    return {};
  }
  return std::span<const Clique>(cliques_).subspan(size_offsets_[m],
                                                   size_offsets_[m + 1] - size_offsets_[m]);
}

bool PresentationGraph::is_clique(VertexSet set) const noexcept {
  const auto n = vertex_count();
  if (n < 64 && (set.bits() >> n) != 0) {
    return false;
  }
  for (auto rest = set.bits(); rest != 0; rest &= rest - 1) {
    const auto v = static_cast<std::size_t>(std::countr_zero(rest));
    const auto others = set.bits() & ~(std::uint64_t{1} << v);
    if ((others & ~adjacency_[v]) != 0) {
      return false;
    }
  }
  return true;
}

VertexSet support(const NormalForm& g) {
  VertexSet out;
  for (const auto& s : g.syllables()) {
    out.insert(s.vertex);
  }
  return out;
}

bool support_in_clique(const NormalForm& g, VertexSet J) {
  return support(g).is_subset_of(J);
}

}  // namespace graphprod
