#include "graphprod/normal_form.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "graphprod/error.hpp"

namespace graphprod {

class NormalFormBuilder {
 public:
  static NormalForm make(const PresentationGraph& graph, std::vector<Syllable> canonical) {
    Length ell = 0;
    for (const auto& s : canonical) {
      ell += graph.groups()[s.vertex].length(s.value);
    }
    return NormalForm(graph, std::move(canonical), ell);
  }
};

std::string NormalForm::to_string() const { return format_expression(syllables_); }

std::size_t NormalForm::hash() const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t x) {
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  for (const auto& s : syllables_) {
    mix(s.vertex);
    mix(static_cast<std::uint64_t>(s.value));
  }
  return static_cast<std::size_t>(h);
}

std::strong_ordering operator<=>(const NormalForm& a, const NormalForm& b) noexcept {
  if (auto c = a.syllables_.size() <=> b.syllables_.size(); c != 0) {
    return c;
  }
  return std::lexicographical_compare_three_way(a.syllables_.begin(), a.syllables_.end(),
                                                b.syllables_.begin(), b.syllables_.end());
}

namespace {

void check_syllable(const PresentationGraph& graph, const Syllable& s) {
  graph.check_vertex(s.vertex);
  const auto& group = graph.groups()[s.vertex];
  if (!group.contains(s.value)) {
    throw PreconditionError("syllable v" + std::to_string(s.vertex) + ":" +
                            std::to_string(s.value) + " is not an element of its vertex group");
  }
  if (s.value == group.identity()) {
    throw PreconditionError("syllable v" + std::to_string(s.vertex) +
                            ":0 is the identity; syllables must be non-trivial");
  }
}

bool commute(const PresentationGraph& graph, Vertex u, Vertex v) noexcept {
  return ((graph.neighbours(u) >> v) & 1U) != 0;
}

}  // namespace

Expression canonical_order(const PresentationGraph& graph, std::span<const Syllable> reduced) {
  const auto n = reduced.size();
  // Dependency DAG: j -> i for j < i whose vertices do not commute (same vertex included).
  std::vector<std::size_t> pending(n, 0);
  std::vector<std::vector<std::size_t>> successors(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (!commute(graph, reduced[j].vertex, reduced[i].vertex)) {
        successors[j].push_back(i);
        ++pending[i];
      }
    }
  }
  std::vector<bool> done(n, false);
  Expression out;
  out.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    // Available syllables sit on distinct vertices, so the minimum is unique.
    std::size_t pick = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!done[i] && pending[i] == 0 &&
          (pick == n || reduced[i].vertex < reduced[pick].vertex)) {
        pick = i;
      }
    }
    done[pick] = true;
    out.push_back(reduced[pick]);
    for (auto k : successors[pick]) {
      --pending[k];
    }
  }
  return out;
}

bool is_reduced(const PresentationGraph& graph, std::span<const Syllable> expr) {
  const auto n = expr.size();
  for (std::size_t i = 0; i < n; ++i) {
    check_syllable(graph, expr[i]);
    const auto v = expr[i].vertex;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (expr[j].vertex == v) {
        return false;
      }
      if (!commute(graph, expr[j].vertex, v)) {
        break;
      }
    }
  }
  return true;
}

NormalForm identity(const PresentationGraph& graph) { return NormalFormBuilder::make(graph, {}); }

NormalForm reduce(const PresentationGraph& graph, std::span<const Syllable> expr) {
  // Left-to-right insertion keeps `work` reduced: an incoming v-syllable
  // travels left past syllables on vertices adjacent to v and either merges
  // with a v-syllable (deleting it when the product is trivial) or stops.
  Expression work;
  work.reserve(expr.size());
  for (const auto& s : expr) {
    check_syllable(graph, s);
    const auto& group = graph.groups()[s.vertex];
    bool absorbed = false;
    for (std::size_t i = work.size(); i > 0; --i) {
      auto& t = work[i - 1];
      if (t.vertex == s.vertex) {
        const auto product = group.multiply(t.value, s.value);
        if (product == group.identity()) {
          work.erase(work.begin() + static_cast<std::ptrdiff_t>(i - 1));
        } else {
          t.value = product;
        }
        absorbed = true;
        break;
      }
      if (!commute(graph, t.vertex, s.vertex)) {
        break;
      }
    }
    if (!absorbed) {
      work.push_back(s);
    }
  }
  return NormalFormBuilder::make(graph, canonical_order(graph, work));
}

NormalForm from_reduced(const PresentationGraph& graph, std::span<const Syllable> reduced) {
  if (!is_reduced(graph, reduced)) {
    throw PreconditionError("expression '" + format_expression(reduced) + "' is not reduced");
  }
  return NormalFormBuilder::make(graph, canonical_order(graph, reduced));
}

namespace {

void check_same_graph(const NormalForm& g, const NormalForm& h) {
  if (&g.graph() != &h.graph()) {
    throw PreconditionError("operands belong to different presentation graphs");
  }
}

}  // namespace

NormalForm multiply(const NormalForm& g, const NormalForm& h) {
  check_same_graph(g, h);
  if (h.is_identity()) {
    return g;
  }
  if (g.is_identity()) {
    return h;
  }
  Expression joined(g.syllables().begin(), g.syllables().end());
  joined.insert(joined.end(), h.syllables().begin(), h.syllables().end());
  return reduce(g.graph(), joined);
}

NormalForm invert(const NormalForm& g) {
  const auto& graph = g.graph();
  Expression reversed;
  reversed.reserve(g.syllable_length());
  for (auto it = g.syllables().rbegin(); it != g.syllables().rend(); ++it) {
    reversed.push_back({it->vertex, graph.groups()[it->vertex].inverse(it->value)});
  }
  // The reversed word of inverses is reduced; only the order needs fixing.
  return NormalFormBuilder::make(graph, canonical_order(graph, reversed));
}

bool is_left_divisor(const NormalForm& h, const NormalForm& g) {
  check_same_graph(g, h);
  return g.syllable_length() ==
         h.syllable_length() + multiply(invert(h), g).syllable_length();
}

bool is_right_divisor(const NormalForm& h, const NormalForm& g) {
  check_same_graph(g, h);
  return g.syllable_length() ==
         multiply(g, invert(h)).syllable_length() + h.syllable_length();
}

Expression parse_expression(const PresentationGraph& graph, std::string_view text) {
  Expression out;
  std::size_t pos = 0;
  const auto n = text.size();
  while (true) {
    while (pos < n && std::isspace(static_cast<unsigned char>(text[pos])) != 0) {
      ++pos;
    }
    if (pos >= n) {
      break;
    }
    const auto start = pos;
    while (pos < n && std::isspace(static_cast<unsigned char>(text[pos])) == 0) {
      ++pos;
    }
    const auto token = text.substr(start, pos - start);
    const auto column = start + 1;
    auto fail = [&](const std::string& why) {
      throw ParseError("bad syllable '" + std::string(token) + "': " + why, 1, column);
    };
    if (token.size() < 4 || token[0] != 'v') {
      fail("expected v<vertex>:<element>");
    }
    const auto colon = token.find(':');
    if (colon == std::string_view::npos) {
      fail("missing ':'");
    }
    Vertex vertex = 0;
    auto vr = std::from_chars(token.data() + 1, token.data() + colon, vertex);
    if (vr.ec != std::errc{} || vr.ptr != token.data() + colon) {
      fail("vertex id is not a non-negative integer");
    }
    Element value = 0;
    auto er = std::from_chars(token.data() + colon + 1, token.data() + token.size(), value);
    if (er.ec != std::errc{} || er.ptr != token.data() + token.size()) {
      fail("element is not an integer");
    }
    if (vertex >= graph.vertex_count()) {
      fail("vertex " + std::to_string(vertex) + " does not exist");
    }
    const auto& group = graph.groups()[vertex];
    if (!group.contains(value)) {
      fail("element out of range for the vertex group");
    }
    if (value == group.identity()) {
      fail("syllables must be non-trivial");
    }
    out.push_back({vertex, value});
  }
  return out;
}

NormalForm parse_element(const PresentationGraph& graph, std::string_view text) {
  return reduce(graph, parse_expression(graph, text));
}

std::string format_expression(std::span<const Syllable> expr) {
  std::string out;
  for (const auto& s : expr) {
    if (!out.empty()) {
      out += ' ';
    }
    out += 'v';
    out += std::to_string(s.vertex);
    out += ':';
    out += std::to_string(s.value);
  }
  return out;
}

}  // namespace graphprod
