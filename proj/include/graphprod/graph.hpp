#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "graphprod/vertex_group.hpp"

namespace graphprod {

using Vertex = std::uint32_t;

/// Graphs are limited to 64 vertices so vertex sets fit in one word.
inline constexpr std::size_t kMaxVertices = 64;

/// A set of vertex ids stored as a bitmask. Iteration is in increasing id order.
class VertexSet {
 public:
  constexpr VertexSet() = default;
  constexpr explicit VertexSet(std::uint64_t bits) : bits_(bits) {}
  VertexSet(std::initializer_list<Vertex> vertices);
  static VertexSet from(std::span<const Vertex> vertices);

  constexpr std::uint64_t bits() const noexcept { return bits_; }
  constexpr std::size_t size() const noexcept {
    return static_cast<std::size_t>(std::popcount(bits_));
  }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr bool contains(Vertex v) const noexcept {
    return v < kMaxVertices && ((bits_ >> v) & 1U) != 0;
  }
  constexpr bool is_subset_of(VertexSet other) const noexcept {
    return (bits_ & ~other.bits_) == 0;
  }
  void insert(Vertex v);

  std::vector<Vertex> vertices() const;
  /// `{0,2}` style rendering; `{}` for the empty set.
  std::string to_string() const;

  friend constexpr auto operator<=>(VertexSet, VertexSet) = default;

 private:
  std::uint64_t bits_ = 0;
};

/// A clique of the presentation graph (possibly empty).
using Clique = VertexSet;

class NormalForm;

/**
 * Finite simplicial graph with a vertex group on every vertex.
 *
 * The clique catalogue is computed once at construction (Bron-Kerbosch with
 * pivoting for the maximal cliques, then all their subsets) and is ordered by
 * size, then by sorted vertex list.
 *
 * Normal forms keep a pointer to the graph they live in, so a graph is neither
 * copyable nor movable; share it by reference or shared_ptr.
 */
class PresentationGraph {
 public:
  PresentationGraph(std::vector<VertexGroup> groups,
                    const std::vector<std::pair<Vertex, Vertex>>& edges);

  PresentationGraph(const PresentationGraph&) = delete;
  PresentationGraph& operator=(const PresentationGraph&) = delete;

  std::size_t vertex_count() const noexcept { return groups_.size(); }
  const VertexGroup& group(Vertex v) const;
  const std::vector<VertexGroup>& groups() const noexcept { return groups_; }

  /// True iff {u, v} is an edge; false for u == v.
  bool adjacent(Vertex u, Vertex v) const;
  /// Neighbourhood of v as a bitmask, unchecked.
  std::uint64_t neighbours(Vertex v) const noexcept { return adjacency_[v]; }
  const std::vector<std::pair<Vertex, Vertex>>& edges() const noexcept { return edges_; }

  /// All cliques including the empty one, each listed once.
  const std::vector<Clique>& cliques() const noexcept { return cliques_; }
  /// The cliques of size m.
  std::span<const Clique> cliques_of_size(std::size_t m) const;
  bool is_clique(VertexSet set) const noexcept;

  bool has_infinite_vertex_group() const noexcept { return has_infinite_; }

  /// Vertex-id range check.
  void check_vertex(Vertex v) const;

 private:
  std::vector<VertexGroup> groups_;
  std::vector<std::uint64_t> adjacency_;
  std::vector<std::pair<Vertex, Vertex>> edges_;
  std::vector<Clique> cliques_;
  std::vector<std::size_t> size_offsets_;  // cliques_ index where size m starts
  bool has_infinite_ = false;
};

/// True iff every syllable of g lies on a vertex of J (g is in G_J).
bool support_in_clique(const NormalForm& g, VertexSet J);

/// Vertex set carrying the syllables of g.
VertexSet support(const NormalForm& g);

}  // namespace graphprod
