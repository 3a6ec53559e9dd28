#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "graphprod/graph.hpp"

namespace graphprod {

/// One letter of an expression: a non-identity element of the group on `vertex`.
struct Syllable {
  Vertex vertex = 0;
  Element value = 0;

  friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

/// A finite word over the syllable alphabet; need not be reduced.
using Expression = std::vector<Syllable>;

/**
 * Canonical representative of a graph-product element.
 *
 * The syllable sequence is reduced (no merge or delete move applies) and,
 * among all reduced words related by commuting swaps, has the
 * lexicographically least vertex-id sequence. Two normal forms are equal iff
 * they represent the same element of the same graph.
 */
class NormalForm {
 public:
  const PresentationGraph& graph() const noexcept { return *graph_; }
  std::span<const Syllable> syllables() const noexcept { return syllables_; }

  /// Syllable length: number of syllables in any reduced expression.
  std::size_t syllable_length() const noexcept { return syllables_.size(); }
  /// Weighted length: sum of vertex-group lengths of the syllables.
  Length ell() const noexcept { return ell_; }
  bool is_identity() const noexcept { return syllables_.empty(); }

  /// `v0:1 v2:-3` syntax; the identity renders as the empty string.
  std::string to_string() const;
  std::size_t hash() const noexcept;

  friend bool operator==(const NormalForm& a, const NormalForm& b) noexcept {
    return a.graph_ == b.graph_ && a.syllables_ == b.syllables_;
  }
  /// Shortlex on (syllable length, syllables); graphs are not compared.
  friend std::strong_ordering operator<=>(const NormalForm& a, const NormalForm& b) noexcept;

 private:
  friend class NormalFormBuilder;
  NormalForm(const PresentationGraph& graph, std::vector<Syllable> syllables, Length ell)
      : graph_(&graph), syllables_(std::move(syllables)), ell_(ell) {}

  const PresentationGraph* graph_;
  std::vector<Syllable> syllables_;
  Length ell_ = 0;
};

struct NormalFormHash {
  std::size_t operator()(const NormalForm& g) const noexcept { return g.hash(); }
};

/// The identity element of `graph`.
NormalForm identity(const PresentationGraph& graph);

/// Canonical form of the element represented by `expr`. Every syllable must
/// name a valid vertex and a non-identity element of its group.
NormalForm reduce(const PresentationGraph& graph, std::span<const Syllable> expr);

/// Canonical form of a word already known to be reduced; only the
/// commuting-swap canonicalisation is applied. Throws if `reduced` is not reduced.
NormalForm from_reduced(const PresentationGraph& graph, std::span<const Syllable> reduced);

/// True iff no merge or delete move can be reached by commuting swaps.
bool is_reduced(const PresentationGraph& graph, std::span<const Syllable> expr);

/// Lexicographically least commuting-swap rearrangement of a reduced word.
Expression canonical_order(const PresentationGraph& graph, std::span<const Syllable> reduced);

NormalForm multiply(const NormalForm& g, const NormalForm& h);
NormalForm invert(const NormalForm& g);

/// h is a left divisor of g iff lambda(g) = lambda(h) + lambda(h^-1 g).
bool is_left_divisor(const NormalForm& h, const NormalForm& g);
/// h is a right divisor of g iff lambda(g) = lambda(g h^-1) + lambda(h).
bool is_right_divisor(const NormalForm& h, const NormalForm& g);

/// Parses whitespace-separated `v<i>:<elt>` syllables into an expression.
Expression parse_expression(const PresentationGraph& graph, std::string_view text);
/// parse_expression followed by reduce.
NormalForm parse_element(const PresentationGraph& graph, std::string_view text);
std::string format_expression(std::span<const Syllable> expr);

}  // namespace graphprod

template <>
struct std::hash<graphprod::NormalForm> {
  std::size_t operator()(const graphprod::NormalForm& g) const noexcept { return g.hash(); }
};
