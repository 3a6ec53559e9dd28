#include "graphprod/vertex_group.hpp"

#include <algorithm>
#include <limits>

#include "graphprod/error.hpp"

namespace graphprod {

std::string to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::CayleyTable:
      return "cayley-table";
    case GroupKind::Cyclic:
      return "cyclic";
    case GroupKind::Integers:
      return "integers";
  }
  return "unknown";
}

VertexGroup VertexGroup::cyclic(std::int64_t order, std::optional<std::vector<Length>> lengths) {
  if (order < 1) {
    throw PreconditionError("cyclic group order must be positive, got " + std::to_string(order));
  }
  VertexGroup g;
  g.kind_ = GroupKind::Cyclic;
  g.order_ = order;
  g.install_lengths(std::move(lengths));
  return g;
}

VertexGroup VertexGroup::integers() {
  VertexGroup g;
  g.kind_ = GroupKind::Integers;
  return g;
}

VertexGroup VertexGroup::cayley_table(const std::vector<std::vector<std::int64_t>>& table,
                                      std::optional<std::vector<Length>> lengths) {
  const auto n = static_cast<std::int64_t>(table.size());
  if (n < 1) {
    throw PreconditionError("Cayley table must have at least one row");
  }
  VertexGroup g;
  g.kind_ = GroupKind::CayleyTable;
  g.order_ = n;
  g.table_.reserve(static_cast<std::size_t>(n * n));
  for (std::int64_t a = 0; a < n; ++a) {
    const auto& row = table[static_cast<std::size_t>(a)];
    if (static_cast<std::int64_t>(row.size()) != n) {
      throw PreconditionError("Cayley table row " + std::to_string(a) + " has " +
                              std::to_string(row.size()) + " entries, expected " +
                              std::to_string(n));
    }
    for (auto entry : row) {
      if (entry < 0 || entry >= n) {
        throw PreconditionError("Cayley table entry " + std::to_string(entry) +
                                " is not an element id");
      }
      g.table_.push_back(entry);
    }
  }
  g.validate_group_axioms();
  g.install_lengths(std::move(lengths));
  return g;
}

bool VertexGroup::contains(Element a) const noexcept {
  return kind_ == GroupKind::Integers || (a >= 0 && a < order_);
}

void VertexGroup::check_element(Element a) const {
  if (!contains(a)) {
    throw PreconditionError("element " + std::to_string(a) + " is out of range for " +
                            to_string(kind_) + " group of order " + std::to_string(order_));
  }
}

Element VertexGroup::multiply(Element a, Element b) const {
  check_element(a);
  check_element(b);
  switch (kind_) {
    case GroupKind::Cyclic:
      return (a + b) % order_;
    case GroupKind::CayleyTable:
      return table_[static_cast<std::size_t>(a * order_ + b)];
    case GroupKind::Integers: {
      Element out = 0;
      if (__builtin_add_overflow(a, b, &out)) {
        throw PreconditionError("integer vertex group overflow");
      }
      return out;
    }
  }
  return 0;
}

Element VertexGroup::inverse(Element a) const {
  check_element(a);
  switch (kind_) {
    case GroupKind::Cyclic:
      return a == 0 ? 0 : order_ - a;
    case GroupKind::CayleyTable:
      return inverses_[static_cast<std::size_t>(a)];
    case GroupKind::Integers:
      if (a == std::numeric_limits<Element>::min()) {
        throw PreconditionError("integer vertex group overflow");
      }
      return -a;
  }
  return 0;
}

Length VertexGroup::length(Element a) const {
  check_element(a);
  if (kind_ == GroupKind::Integers) {
    if (a == std::numeric_limits<Element>::min()) {
      throw PreconditionError("integer vertex group overflow");
    }
    return static_cast<Length>(a < 0 ? -a : a);
  }
  return lengths_[static_cast<std::size_t>(a)];
}

std::vector<Element> VertexGroup::enumerate_up_to_length(Length cap) const {
  std::vector<Element> out;
  if (kind_ == GroupKind::Integers) {
    if (cap > static_cast<Length>(std::numeric_limits<std::int32_t>::max())) {
      throw PreconditionError("length cap too large to enumerate the integers");
    }
    const auto c = static_cast<Element>(cap);
    out.reserve(static_cast<std::size_t>(2 * c + 1));
    for (Element a = -c; a <= c; ++a) {
      out.push_back(a);
    }
    return out;
  }
  for (Element a = 0; a < order_; ++a) {
    if (lengths_[static_cast<std::size_t>(a)] <= cap) {
      out.push_back(a);
    }
  }
  return out;
}

void VertexGroup::install_lengths(std::optional<std::vector<Length>> lengths) {
  const auto n = static_cast<std::size_t>(order_);
  if (lengths) {
    if (lengths->size() != n) {
      throw PreconditionError("length table has " + std::to_string(lengths->size()) +
                              " entries, group order is " + std::to_string(n));
    }
    lengths_ = std::move(*lengths);
    custom_lengths_ = true;
  } else {
    lengths_.assign(n, 0);
    for (std::size_t a = 1; a < n; ++a) {
      lengths_[a] = kind_ == GroupKind::Cyclic ? std::min<Length>(a, n - a) : 1;
    }
    custom_lengths_ = false;
  }
  validate_length_axioms();
}

void VertexGroup::validate_group_axioms() {
  const auto n = order_;
  auto at = [&](std::int64_t a, std::int64_t b) {
    return table_[static_cast<std::size_t>(a * n + b)];
  };
  for (std::int64_t a = 0; a < n; ++a) {
    if (at(0, a) != a || at(a, 0) != a) {
      throw PreconditionError("Cayley table: id 0 is not a two-sided identity at element " +
                              std::to_string(a));
    }
  }
  auto& inv = inverses_;
  inv.assign(static_cast<std::size_t>(n), -1);
  for (std::int64_t a = 0; a < n; ++a) {
    for (std::int64_t b = 0; b < n; ++b) {
      if (at(a, b) == 0) {
        if (at(b, a) != 0) {
          throw PreconditionError("Cayley table: one-sided inverse for element " +
                                  std::to_string(a));
        }
        inv[static_cast<std::size_t>(a)] = b;
        break;
      }
    }
    if (inv[static_cast<std::size_t>(a)] < 0) {
      throw PreconditionError("Cayley table: element " + std::to_string(a) + " has no inverse");
    }
  }
  for (std::int64_t a = 0; a < n; ++a) {
    for (std::int64_t b = 0; b < n; ++b) {
      for (std::int64_t c = 0; c < n; ++c) {
        if (at(at(a, b), c) != at(a, at(b, c))) {
          throw PreconditionError("Cayley table is not associative at (" + std::to_string(a) +
                                  ", " + std::to_string(b) + ", " + std::to_string(c) + ")");
        }
      }
    }
  }
}

void VertexGroup::validate_length_axioms() const {
  const auto n = order_;
  if (lengths_[0] != 0) {
    throw PreconditionError("length of the identity must be 0");
  }
  for (Element a = 1; a < n; ++a) {
    if (lengths_[static_cast<std::size_t>(a)] == 0) {
      throw PreconditionError("length of non-identity element " + std::to_string(a) +
                              " must be positive");
    }
  }
  for (Element a = 0; a < n; ++a) {
    const auto la = lengths_[static_cast<std::size_t>(a)];
    if (la != lengths_[static_cast<std::size_t>(inverse(a))]) {
      throw PreconditionError("length function is not symmetric at element " +
                              std::to_string(a));
    }
    for (Element b = 0; b < n; ++b) {
      const auto lab = lengths_[static_cast<std::size_t>(multiply(a, b))];
      if (lab > la + lengths_[static_cast<std::size_t>(b)]) {
        throw PreconditionError("length function is not subadditive at (" + std::to_string(a) +
                                ", " + std::to_string(b) + ")");
      }
    }
  }
}

}  // namespace graphprod
