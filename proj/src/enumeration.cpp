#include "graphprod/enumeration.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <map>
#include <set>

#include "graphprod/error.hpp"

namespace graphprod {

Window::Window(const PresentationGraph& graph, BallSpec spec)
    : graph_(&graph), spec_(spec), caps_ell_(graph.has_infinite_vertex_group()) {
  for (Vertex v = 0; v < graph.vertex_count(); ++v) {
    const auto& group = graph.groups()[v];
    const auto cap = caps_ell_ ? spec_.ell_max : std::numeric_limits<Length>::max();
    if (!group.is_finite() || cap != std::numeric_limits<Length>::max()) {
      for (auto y : group.enumerate_up_to_length(cap)) {
        if (y != group.identity()) {
          alphabet_.push_back({v, y});
        }
      }
    } else {
      for (Element y = 1; y < group.order(); ++y) {
        alphabet_.push_back({v, y});
      }
    }
  }

  spheres_.push_back({identity(graph)});
  members_.insert(spheres_[0][0]);
  for (std::size_t k = 1; k <= spec_.lambda_max; ++k) {
    std::unordered_set<NormalForm, NormalFormHash> next;
    for (const auto& g : spheres_[k - 1]) {
      Expression word(g.syllables().begin(), g.syllables().end());
      word.push_back({});
      for (const auto& s : alphabet_) {
        if (caps_ell_ && g.ell() + graph.groups()[s.vertex].length(s.value) > spec_.ell_max) {
          continue;
        }
        word.back() = s;
        auto gs = reduce(graph, word);
        if (gs.syllable_length() == k) {
          next.insert(std::move(gs));
        }
      }
    }
    std::vector<NormalForm> level(next.begin(), next.end());
    std::sort(level.begin(), level.end());
    members_.insert(level.begin(), level.end());
    spheres_.push_back(std::move(level));
    if (spheres_.back().empty()) {
      // Every later sphere is empty too.
      for (std::size_t rest = k + 1; rest <= spec_.lambda_max; ++rest) {
        spheres_.emplace_back();
      }
      break;
    }
  }
  size_ = members_.size();
}

std::span<const NormalForm> Window::sphere(std::size_t k) const {
  if (k > spec_.lambda_max) {
    throw PreconditionError("sphere " + std::to_string(k) + " lies outside the window (lambda_max = " +
                            std::to_string(spec_.lambda_max) + ")");
  }
  return spheres_[k];
}

bool Window::contains(const NormalForm& g) const {
  return &g.graph() == graph_ && members_.count(g) != 0;
}

std::vector<NormalForm> Window::ball() const {
  std::vector<NormalForm> out;
  out.reserve(size_);
  for (const auto& level : spheres_) {
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

bool Window::covers_ell_level(Length k) const noexcept {
  // ell >= lambda because every vertex length is at least 1 off the identity.
  return k <= spec_.lambda_max && (!caps_ell_ || k <= spec_.ell_max);
}

std::vector<NormalForm> Window::ell_level(Length k) const {
  if (!covers_ell_level(k)) {
    throw PreconditionError("weighted-length level " + std::to_string(k) +
                            " is not fully contained in the window (lambda_max = " +
                            std::to_string(spec_.lambda_max) +
                            ", ell_max = " + std::to_string(spec_.ell_max) + ")");
  }
  std::vector<NormalForm> out;
  for (std::size_t j = 0; j <= std::min<std::size_t>(k, spec_.lambda_max); ++j) {
    for (const auto& g : spheres_[j]) {
      if (g.ell() == k) {
        out.push_back(g);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NormalForm> Window::clique_elements(VertexSet J) const {
  std::vector<NormalForm> out;
  for (std::size_t j = 0; j <= std::min(J.size(), spec_.lambda_max); ++j) {
    for (const auto& g : spheres_[j]) {
      if (support_in_clique(g, J)) {
        out.push_back(g);
      }
    }
  }
  return out;
}

std::vector<NormalForm> sphere(const PresentationGraph& graph, std::size_t k, BallSpec spec) {
  if (k > spec.lambda_max) {
    throw PreconditionError("k = " + std::to_string(k) + " exceeds lambda_max = " +
                            std::to_string(spec.lambda_max));
  }
  Window window(graph, BallSpec{k, spec.ell_max});
  auto level = window.sphere(k);
  return {level.begin(), level.end()};
}

std::vector<DivisorPrefix> left_divisor_prefixes(const NormalForm& g, std::size_t k) {
  const auto n = g.syllable_length();
  if (k > n) {
    throw PreconditionError("divisor length " + std::to_string(k) + " exceeds lambda(g) = " +
                            std::to_string(n));
  }
  if (n > 64) {
    throw PreconditionError("divisor enumeration supports lambda(g) <= 64");
  }
  const auto& graph = g.graph();
  const auto word = g.syllables();
  std::vector<std::uint64_t> preds(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (((graph.neighbours(word[j].vertex) >> word[i].vertex) & 1U) == 0) {
        preds[i] |= std::uint64_t{1} << j;
      }
    }
  }
  // Grow down-closed position sets one available position at a time.
  std::set<std::uint64_t> frontier{0};
  for (std::size_t step = 0; step < k; ++step) {
    std::set<std::uint64_t> next;
    for (auto mask : frontier) {
      for (std::size_t i = 0; i < n; ++i) {
        const auto bit = std::uint64_t{1} << i;
        if ((mask & bit) == 0 && (preds[i] & ~mask) == 0) {
          next.insert(mask | bit);
        }
      }
    }
    frontier = std::move(next);
  }
  std::vector<DivisorPrefix> out;
  out.reserve(frontier.size());
  for (auto mask : frontier) {
    Expression sub;
    std::vector<std::size_t> positions;
    for (auto rest = mask; rest != 0; rest &= rest - 1) {
      const auto i = static_cast<std::size_t>(std::countr_zero(rest));
      sub.push_back(word[i]);
      positions.push_back(i);
    }
    out.push_back({from_reduced(graph, sub), std::move(positions)});
  }
  std::sort(out.begin(), out.end(),
            [](const DivisorPrefix& a, const DivisorPrefix& b) { return a.divisor < b.divisor; });
  return out;
}

std::vector<NormalForm> left_divisors(const NormalForm& g, std::size_t k) {
  std::vector<NormalForm> out;
  for (auto& prefix : left_divisor_prefixes(g, k)) {
    out.push_back(std::move(prefix.divisor));
  }
  return out;
}

std::vector<NormalForm> right_divisors(const NormalForm& g, std::size_t k) {
  std::vector<NormalForm> out;
  for (const auto& h : left_divisors(invert(g), k)) {
    out.push_back(invert(h));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<NormalForm, NormalForm>> factorisations(const NormalForm& g, std::size_t k,
                                                              std::size_t l) {
  if (g.syllable_length() != k + l) {
    throw PreconditionError("Factors_{k,l}(g) needs lambda(g) = k + l; lambda(g) = " +
                            std::to_string(g.syllable_length()) + ", k + l = " +
                            std::to_string(k + l));
  }
  std::vector<std::pair<NormalForm, NormalForm>> out;
  for (auto& g1 : left_divisors(g, k)) {
    auto g2 = multiply(invert(g1), g);
    out.emplace_back(std::move(g1), std::move(g2));
  }
  return out;
}

std::vector<Factorisation> factorisations_clique(const NormalForm& g, std::size_t k,
                                                 std::size_t l, Clique J) {
  const auto& graph = g.graph();
  if (!graph.is_clique(J)) {
    throw PreconditionError("vertex set " + J.to_string() + " is not a clique");
  }
  if (g.syllable_length() != k + l + J.size()) {
    throw PreconditionError("Factors_{k,l}(J,g) needs lambda(g) = k + l + |J|; lambda(g) = " +
                            std::to_string(g.syllable_length()) + ", k + l + |J| = " +
                            std::to_string(k + l + J.size()));
  }
  std::vector<Factorisation> out;
  for (const auto& g1 : left_divisors(g, k)) {
    const auto rest = multiply(invert(g1), g);
    for (const auto& s : left_divisors(rest, J.size())) {
      // lambda(s) = |J| and s in G_J means one syllable on each vertex of J.
      if (support(s) != J) {
        continue;
      }
      out.push_back({g1, s, multiply(invert(s), rest), J});
    }
  }
  return out;
}

std::size_t ff_empirical(const Window& window, std::size_t k, std::size_t l, Clique J) {
  const auto total = k + l + J.size();
  if (total > window.spec().lambda_max) {
    throw PreconditionError("FF_{k,l}(J) needs k + l + |J| = " + std::to_string(total) +
                            " <= lambda_max = " + std::to_string(window.spec().lambda_max));
  }
  if (!window.graph().is_clique(J)) {
    throw PreconditionError("vertex set " + J.to_string() + " is not a clique");
  }
  std::size_t best = 0;
  for (const auto& g : window.sphere(total)) {
    best = std::max(best, factorisations_clique(g, k, l, J).size());
  }
  return best;
}

std::uint64_t p1_bound(std::size_t k, std::size_t vertex_count, std::size_t clique_size) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t out = 1;
  auto times = [&](std::uint64_t factor) {
    if (out != 0 && factor > kMax / out) {
      out = kMax;
    } else {
      out *= factor;
    }
  };
  for (std::size_t i = 0; i < vertex_count; ++i) {
    times(k + 1);
  }
  for (std::size_t i = 0; i < clique_size; ++i) {
    times(clique_size + 1);
  }
  return out;
}

std::vector<std::size_t> unconstrained_syllables(const PresentationGraph& graph,
                                                 std::span<const Syllable> w, std::size_t k) {
  if (k > w.size()) {
    throw PreconditionError("k = " + std::to_string(k) + " exceeds the word length " +
                            std::to_string(w.size()));
  }
  if (!is_reduced(graph, w)) {
    throw PreconditionError("word '" + format_expression(w) + "' is not reduced");
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < k; ++i) {
    bool free = true;
    for (std::size_t j = i + 1; j < k && free; ++j) {
      free = graph.adjacent(w[i].vertex, w[j].vertex);
    }
    if (free) {
      out.push_back(i);
    }
  }
  return out;
}

namespace {

// Syllables of a reduced word that can be shuffled to its end (last = true)
// or its front, keyed by vertex.
std::map<Vertex, Element> boundary_syllables(const NormalForm& g, bool last) {
  const auto& graph = g.graph();
  const auto word = g.syllables();
  const auto n = word.size();
  std::map<Vertex, Element> out;
  for (std::size_t i = 0; i < n; ++i) {
    bool free = true;
    if (last) {
      for (std::size_t j = i + 1; j < n && free; ++j) {
        free = graph.adjacent(word[i].vertex, word[j].vertex);
      }
    } else {
      for (std::size_t j = 0; j < i && free; ++j) {
        free = graph.adjacent(word[i].vertex, word[j].vertex);
      }
    }
    if (free) {
      out[word[i].vertex] = word[i].value;
    }
  }
  return out;
}

P2Decomposition decompose_with(const NormalForm& h1, const NormalForm& h2, const NormalForm& w,
                               std::size_t q) {
  const auto& graph = h1.graph();
  const auto h1_rest = multiply(h1, invert(w));
  const auto h2_rest = multiply(w, h2);
  const auto tail = boundary_syllables(h1_rest, true);
  const auto head = boundary_syllables(h2_rest, false);
  Clique J;
  Expression s1_word;
  Expression s2_word;
  for (const auto& [v, y] : tail) {
    if (auto it = head.find(v); it != head.end()) {
      J.insert(v);
      s1_word.push_back({v, y});
      s2_word.push_back({v, it->second});
    }
  }
  auto s1 = from_reduced(graph, s1_word);
  auto s2 = from_reduced(graph, s2_word);
  auto g1 = multiply(h1_rest, invert(s1));
  auto g2 = multiply(invert(s2), h2_rest);
  return {std::move(g1), std::move(s1), w, std::move(s2), std::move(g2), J, q};
}

std::vector<NormalForm> maximal_cancellations(const NormalForm& h1, const NormalForm& h2) {
  // w is a right divisor of h1 with w^-1 a left divisor of h2, i.e. w^-1
  // is a common left divisor of h1^-1 and h2.
  const auto h1_inv = invert(h1);
  for (auto j = std::min(h1.syllable_length(), h2.syllable_length()) + 1; j-- > 0;) {
    const auto from_h1 = left_divisors(h1_inv, j);
    const auto from_h2 = left_divisors(h2, j);
    std::vector<NormalForm> common;
    std::set_intersection(from_h1.begin(), from_h1.end(), from_h2.begin(), from_h2.end(),
                          std::back_inserter(common));
    if (!common.empty()) {
      std::vector<NormalForm> out;
      for (const auto& c : common) {
        out.push_back(invert(c));
      }
      std::sort(out.begin(), out.end());
      return out;
    }
  }
  return {identity(h1.graph())};
}

}  // namespace

std::vector<P2Decomposition> p2_witnesses(const NormalForm& h1, const NormalForm& h2) {
  if (&h1.graph() != &h2.graph()) {
    throw PreconditionError("operands belong to different presentation graphs");
  }
  const auto q = h1.syllable_length() + h2.syllable_length() -
                 multiply(h1, h2).syllable_length();
  std::vector<P2Decomposition> out;
  for (const auto& w : maximal_cancellations(h1, h2)) {
    out.push_back(decompose_with(h1, h2, w, q));
  }
  return out;
}

P2Decomposition p2_decompose(const NormalForm& h1, const NormalForm& h2) {
  return std::move(p2_witnesses(h1, h2).front());
}

MfCheck mf_check(const Window& window, std::size_t k, std::size_t q, std::size_t l) {
  const auto& graph = window.graph();
  MfCheck out;
  for (std::size_t p = 0; 2 * p <= q; ++p) {
    if (k + p < q || l + p < q) {
      continue;
    }
    const auto k1 = k + p - q;
    const auto l1 = l + p - q;
    for (const auto& J : graph.cliques_of_size(q - 2 * p)) {
      out.mf += ff_empirical(window, k1, l1, J);
      const auto bound = p1_bound(k1, graph.vertex_count(), J.size());
      out.bound = bound > std::numeric_limits<std::uint64_t>::max() - out.bound
                      ? std::numeric_limits<std::uint64_t>::max()
                      : out.bound + bound;
    }
  }
  return out;
}

}  // namespace graphprod
