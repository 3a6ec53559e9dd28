#pragma once

#include <complex>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"

#include "graphprod/enumeration.hpp"

namespace graphprod {

/**
 * Finitely supported complex function on a graph product (an element of CG).
 * Exact zeros are never stored, so the support is exactly the set of stored keys.
 */
class GroupFunction {
 public:
  using Value = std::complex<double>;
  using Map = std::unordered_map<NormalForm, Value, NormalFormHash>;

  explicit GroupFunction(const PresentationGraph& graph) : graph_(&graph) {}

  static GroupFunction delta(const NormalForm& g, Value value = 1.0);

  const PresentationGraph& graph() const noexcept { return *graph_; }

  /// Adds `value` at g, dropping the entry if the sum is exactly zero.
  void add(const NormalForm& g, Value value);
  void set(const NormalForm& g, Value value);
  Value at(const NormalForm& g) const;

  std::size_t support_size() const noexcept { return values_.size(); }
  bool is_zero() const noexcept { return values_.empty(); }
  const Map& values() const noexcept { return values_; }
  /// Entries ordered by NormalForm; all reductions iterate in this order.
  std::vector<std::pair<NormalForm, Value>> sorted_entries() const;

 private:
  void check_graph(const NormalForm& g) const;

  const PresentationGraph* graph_;
  Map values_;
};

/// phi . chi_k with chi_k the indicator of {ell = k}.
GroupFunction restrict_by_ell(const GroupFunction& phi, Length k);
/// phi . chi_(k) with chi_(k) the indicator of {lambda = k}.
GroupFunction restrict_by_lambda(const GroupFunction& phi, std::size_t k);

/// (phi * psi)(g) = sum_h phi(h) psi(h^-1 g), computed over supp(phi) x supp(psi).
/// With threads > 1 the outer support is split into contiguous chunks whose
/// partial sums are merged in chunk order.
GroupFunction convolve(const GroupFunction& phi, const GroupFunction& psi,
                       std::size_t threads = 1);

double l1_norm(const GroupFunction& phi);
double l2_norm(const GroupFunction& phi);
/// sqrt( sum |phi(g)|^2 (1 + ell(g))^{2r} ).
double sobolev_norm(const GroupFunction& phi, double r);
/// The same norm computed inside G_J with ell_J; the support must lie in G_J.
double clique_sobolev_norm(const GroupFunction& phi, double r, Clique J);

/// phi^{(p)}_{(k-p)}(u) = sqrt( sum_{w in Lambda_p} |phi(uw)|^2 ) on Lambda_{k-p}.
///
/// phi must be supported in the windowed Lambda_k. The sum is evaluated
/// through the factorisations of each support point, which makes it exact
/// for such phi.
GroupFunction derived_right(const GroupFunction& phi, std::size_t k, std::size_t p,
                            const Window& window);
/// {}^{(p)}phi_{(k-p)}(u) = sqrt( sum_{w in Lambda_p} |phi(w^-1 u)|^2 ) on Lambda_{k-p}.
GroupFunction derived_left(const GroupFunction& phi, std::size_t k, std::size_t p,
                           const Window& window);

enum class Side { Left, Right };

/// Right slice: v -> phi(vg); left slice: v -> phi(gv); v restricted to
/// Lambda_i with i = k - lambda(g) and the product in Lambda_k.
GroupFunction slice(const GroupFunction& phi, std::size_t k, const NormalForm& g, Side side);

/// Convolution inside the direct product G_J, computed coordinate-wise.
/// Both supports must lie in G_J and J must be a clique.
GroupFunction convolve_in_clique(const GroupFunction& alpha, const GroupFunction& beta,
                                 Clique J);

/// M * sum a_i^2 for the M values given; (sum a_i)^2 never exceeds it.
double sum_square_bound(std::span<const double> values);

nlohmann::json to_json(const GroupFunction& phi);
GroupFunction group_function_from_json(const PresentationGraph& graph, const nlohmann::json& j);
/// CSV with header `element,re,im`.
std::string to_csv(const GroupFunction& phi);
GroupFunction group_function_from_csv(const PresentationGraph& graph, const std::string& text);

}  // namespace graphprod
