#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace graphprod {

/// Element of a vertex group. Table-backed groups use ids 0..n-1, the
/// integers use the value itself; 0 is always the identity.
using Element = std::int64_t;

/// Values of the positive integer length functions.
using Length = std::uint64_t;

enum class GroupKind { CayleyTable, Cyclic, Integers };

std::string to_string(GroupKind kind);

/**
 * A concrete vertex group together with a length function.
 *
 * Three kinds are supported: an explicit Cayley table, the cyclic group
 * Z/n (arithmetic, no table), and the integers. Finite groups may carry an
 * explicit per-element length table; otherwise the defaults are
 *   cayley-table: 0 at the identity, 1 elsewhere
 *   cyclic(n):    min(a, n - a)
 *   integers:     |a|
 *
 * Values are immutable after construction, and the constructors check the
 * group and length-function axioms exhaustively for finite groups.
 */
class VertexGroup {
 public:
  static VertexGroup cyclic(std::int64_t order,
                            std::optional<std::vector<Length>> lengths = std::nullopt);
  static VertexGroup integers();
  /// `table[a][b]` is the id of a*b. Id 0 must be the identity.
  static VertexGroup cayley_table(const std::vector<std::vector<std::int64_t>>& table,
                                  std::optional<std::vector<Length>> lengths = std::nullopt);

  GroupKind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ != GroupKind::Integers; }
  /// Group order, or 0 for the integers.
  std::int64_t order() const noexcept { return order_; }
  Element identity() const noexcept { return 0; }

  bool contains(Element a) const noexcept;
  Element multiply(Element a, Element b) const;
  Element inverse(Element a) const;
  Length length(Element a) const;

  /// Every element y with length(y) <= cap, in increasing id order.
  std::vector<Element> enumerate_up_to_length(Length cap) const;

  /// True when an explicit length table replaced the default.
  bool has_custom_lengths() const noexcept { return custom_lengths_; }
  /// Cayley table (row-major, order() x order()); empty unless kind is CayleyTable.
  const std::vector<std::int64_t>& table() const noexcept { return table_; }
  const std::vector<Length>& length_table() const noexcept { return lengths_; }

  friend bool operator==(const VertexGroup&, const VertexGroup&) = default;

 private:
  VertexGroup() = default;

  void check_element(Element a) const;
  void install_lengths(std::optional<std::vector<Length>> lengths);
  // Also fills the inverse table.
  void validate_group_axioms();
  void validate_length_axioms() const;

  GroupKind kind_ = GroupKind::Integers;
  std::int64_t order_ = 0;
  std::vector<std::int64_t> table_;
  std::vector<std::int64_t> inverses_;
  std::vector<Length> lengths_;
  bool custom_lengths_ = false;
};

}  // namespace graphprod
