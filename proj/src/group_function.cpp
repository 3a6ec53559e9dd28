#include "graphprod/group_function.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include "graphprod/error.hpp"

namespace graphprod {

GroupFunction GroupFunction::delta(const NormalForm& g, Value value) {
  GroupFunction out(g.graph());
  out.set(g, value);
  return out;
}

void GroupFunction::check_graph(const NormalForm& g) const {
  if (&g.graph() != graph_) {
    throw PreconditionError("element belongs to a different presentation graph");
  }
}

void GroupFunction::add(const NormalForm& g, Value value) {
  check_graph(g);
  auto [it, inserted] = values_.try_emplace(g, value);
  if (!inserted) {
    it->second += value;
  }
  if (it->second == Value{0.0, 0.0}) {
    values_.erase(it);
  }
}

void GroupFunction::set(const NormalForm& g, Value value) {
  check_graph(g);
  if (value == Value{0.0, 0.0}) {
    values_.erase(g);
  } else {
    values_[g] = value;
  }
}

GroupFunction::Value GroupFunction::at(const NormalForm& g) const {
  auto it = values_.find(g);
  return it == values_.end() ? Value{} : it->second;
}

std::vector<std::pair<NormalForm, GroupFunction::Value>> GroupFunction::sorted_entries() const {
  std::vector<std::pair<NormalForm, Value>> out(values_.begin(), values_.end());
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

namespace {

template <typename Keep>
GroupFunction filtered(const GroupFunction& phi, Keep keep) {
  GroupFunction out(phi.graph());
  for (const auto& [g, value] : phi.values()) {
    if (keep(g)) {
      out.set(g, value);
    }
  }
  return out;
}

void check_same_graph(const GroupFunction& a, const GroupFunction& b) {
  if (&a.graph() != &b.graph()) {
    throw PreconditionError("group functions live on different presentation graphs");
  }
}

void check_sphere_support(const GroupFunction& phi, std::size_t k, const Window* window) {
  for (const auto& [g, value] : phi.values()) {
    if (g.syllable_length() != k) {
      throw PreconditionError("function is not supported in Lambda_" + std::to_string(k) +
                              ": '" + g.to_string() + "' has syllable length " +
                              std::to_string(g.syllable_length()));
    }
    if (window != nullptr && !window->contains(g)) {
      throw PreconditionError("support point '" + g.to_string() + "' lies outside the window");
    }
  }
}

GroupFunction square_roots(const PresentationGraph& graph,
                           const std::unordered_map<NormalForm, double, NormalFormHash>& sums) {
  GroupFunction out(graph);
  for (const auto& [u, total] : sums) {
    out.set(u, std::sqrt(total));
  }
  return out;
}

}  // namespace

GroupFunction restrict_by_ell(const GroupFunction& phi, Length k) {
  return filtered(phi, [k](const NormalForm& g) { return g.ell() == k; });
}

GroupFunction restrict_by_lambda(const GroupFunction& phi, std::size_t k) {
  return filtered(phi, [k](const NormalForm& g) { return g.syllable_length() == k; });
}

GroupFunction convolve(const GroupFunction& phi, const GroupFunction& psi, std::size_t threads) {
  check_same_graph(phi, psi);
  const auto left = phi.sorted_entries();
  const auto right = psi.sorted_entries();
  threads = std::max<std::size_t>(1, std::min(threads, left.size()));
  std::vector<GroupFunction::Map> partial(threads);
  auto work = [&](std::size_t chunk) {
    const auto begin = left.size() * chunk / threads;
    const auto end = left.size() * (chunk + 1) / threads;
    auto& acc = partial[chunk];
    for (auto i = begin; i < end; ++i) {
      for (const auto& [h, y] : right) {
        acc[multiply(left[i].first, h)] += left[i].second * y;
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t c = 0; c < threads; ++c) {
      pool.emplace_back(work, c);
    }
  }
  GroupFunction out(phi.graph());
  for (const auto& acc : partial) {
    for (const auto& [g, value] : acc) {
      out.add(g, value);
    }
  }
  return out;
}

double l1_norm(const GroupFunction& phi) {
  double total = 0.0;
  for (const auto& [g, value] : phi.sorted_entries()) {
    total += std::abs(value);
  }
  return total;
}

double l2_norm(const GroupFunction& phi) { return sobolev_norm(phi, 0.0); }

double sobolev_norm(const GroupFunction& phi, double r) {
  if (!(r >= 0.0)) {
    throw PreconditionError("Sobolev order must be non-negative");
  }
  double total = 0.0;
  for (const auto& [g, value] : phi.sorted_entries()) {
    const double weight = r == 0.0 ? 1.0 : std::pow(1.0 + static_cast<double>(g.ell()), 2.0 * r);
    total += std::norm(value) * weight;
  }
  return std::sqrt(total);
}

double clique_sobolev_norm(const GroupFunction& phi, double r, Clique J) {
  if (!phi.graph().is_clique(J)) {
    throw PreconditionError("vertex set " + J.to_string() + " is not a clique");
  }
  for (const auto& [g, value] : phi.values()) {
    if (!support_in_clique(g, J)) {
      throw PreconditionError("support point '" + g.to_string() + "' lies outside G_" +
                              J.to_string());
    }
  }
  // ell restricted to G_J is ell_J.
  return sobolev_norm(phi, r);
}

GroupFunction derived_right(const GroupFunction& phi, std::size_t k, std::size_t p,
                            const Window& window) {
  if (p > k) {
    throw PreconditionError("derived function needs p <= k");
  }
  check_sphere_support(phi, k, &window);
  std::unordered_map<NormalForm, double, NormalFormHash> sums;
  for (const auto& [h, value] : phi.sorted_entries()) {
    for (const auto& [u, w] : factorisations(h, k - p, p)) {
      sums[u] += std::norm(value);
    }
  }
  return square_roots(phi.graph(), sums);
}

GroupFunction derived_left(const GroupFunction& phi, std::size_t k, std::size_t p,
                           const Window& window) {
  if (p > k) {
    throw PreconditionError("derived function needs p <= k");
  }
  check_sphere_support(phi, k, &window);
  std::unordered_map<NormalForm, double, NormalFormHash> sums;
  for (const auto& [h, value] : phi.sorted_entries()) {
    // h = w^-1 u with lambda(w^-1) = p and lambda(u) = k - p.
    for (const auto& [w_inv, u] : factorisations(h, p, k - p)) {
      sums[u] += std::norm(value);
    }
  }
  return square_roots(phi.graph(), sums);
}

GroupFunction slice(const GroupFunction& phi, std::size_t k, const NormalForm& g, Side side) {
  if (g.syllable_length() > k) {
    throw PreconditionError("slice element has syllable length above k");
  }
  check_sphere_support(phi, k, nullptr);
  const auto i = k - g.syllable_length();
  const auto g_inv = invert(g);
  GroupFunction out(phi.graph());
  for (const auto& [h, value] : phi.values()) {
    auto v = side == Side::Right ? multiply(h, g_inv) : multiply(g_inv, h);
    if (v.syllable_length() == i) {
      out.set(v, value);
    }
  }
  return out;
}

GroupFunction convolve_in_clique(const GroupFunction& alpha, const GroupFunction& beta,
                                 Clique J) {
  check_same_graph(alpha, beta);
  const auto& graph = alpha.graph();
  if (!graph.is_clique(J)) {
    throw PreconditionError("vertex set " + J.to_string() + " is not a clique");
  }
  const auto vertices = J.vertices();
  auto coordinates = [&](const NormalForm& g) {
    std::vector<Element> coords(vertices.size(), 0);
    for (const auto& s : g.syllables()) {
      if (!J.contains(s.vertex)) {
        throw PreconditionError("support point '" + g.to_string() + "' lies outside G_" +
                                J.to_string());
      }
      const auto slot = std::lower_bound(vertices.begin(), vertices.end(), s.vertex);
      coords[static_cast<std::size_t>(slot - vertices.begin())] = s.value;
    }
    return coords;
  };
  std::vector<std::pair<std::vector<Element>, GroupFunction::Value>> a;
  std::vector<std::pair<std::vector<Element>, GroupFunction::Value>> b;
  for (const auto& [g, value] : alpha.sorted_entries()) {
    a.emplace_back(coordinates(g), value);
  }
  for (const auto& [g, value] : beta.sorted_entries()) {
    b.emplace_back(coordinates(g), value);
  }
  GroupFunction out(graph);
  Expression word;
  for (const auto& [x, xv] : a) {
    for (const auto& [y, yv] : b) {
      word.clear();
      for (std::size_t c = 0; c < vertices.size(); ++c) {
        const auto z = graph.groups()[vertices[c]].multiply(x[c], y[c]);
        if (z != 0) {
          word.push_back({vertices[c], z});
        }
      }
      out.add(from_reduced(graph, word), xv * yv);
    }
  }
  return out;
}

double sum_square_bound(std::span<const double> values) {
  double squares = 0.0;
  for (auto a : values) {
    squares += a * a;
  }
  return static_cast<double>(values.size()) * squares;
}

nlohmann::json to_json(const GroupFunction& phi) {
  auto out = nlohmann::json::array();
  for (const auto& [g, value] : phi.sorted_entries()) {
    out.push_back({{"element", g.to_string()}, {"re", value.real()}, {"im", value.imag()}});
  }
  return out;
}

GroupFunction group_function_from_json(const PresentationGraph& graph, const nlohmann::json& j) {
  if (!j.is_array()) {
    throw ParseError("group function JSON must be an array of {element, re, im}");
  }
  GroupFunction out(graph);
  for (const auto& entry : j) {
    if (!entry.is_object() || !entry.contains("element")) {
      throw ParseError("group function entry must be an object with an 'element' field");
    }
    const auto g = parse_element(graph, entry.at("element").get<std::string>());
    const double re = entry.value("re", 0.0);
    const double im = entry.value("im", 0.0);
    out.add(g, {re, im});
  }
  return out;
}

namespace {

std::string real_text(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string to_csv(const GroupFunction& phi) {
  std::string out = "element,re,im\n";
  for (const auto& [g, value] : phi.sorted_entries()) {
    out += g.to_string() + "," + real_text(value.real()) + "," + real_text(value.imag()) + "\n";
  }
  return out;
}

GroupFunction group_function_from_csv(const PresentationGraph& graph, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  GroupFunction out(graph);
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line_no == 1) {
      if (line != "element,re,im") {
        throw ParseError("expected CSV header 'element,re,im'", 1, 1);
      }
      continue;
    }
    if (line.empty()) {
      continue;
    }
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string::npos) {
      throw ParseError("expected three comma-separated fields", line_no, 1);
    }
    double re = 0.0;
    double im = 0.0;
    try {
      std::size_t used = 0;
      re = std::stod(line.substr(c1 + 1, c2 - c1 - 1), &used);
      im = std::stod(line.substr(c2 + 1), &used);
    } catch (const std::exception&) {
      throw ParseError("bad numeric field", line_no, c1 + 2);
    }
    GroupFunction::Value value{re, im};
    try {
      out.add(parse_element(graph, line.substr(0, c1)), value);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no, e.column());
    }
  }
  return out;
}

}  // namespace graphprod
