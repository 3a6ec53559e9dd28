#pragma once

#include <cstdint>
#include <span>
#include <unordered_set>
#include <utility>
#include <vector>

#include "graphprod/normal_form.hpp"

namespace graphprod {

/// Finite window of the group: syllable length at most lambda_max and, when
/// some vertex group is infinite, weighted length at most ell_max. For graphs
/// with only finite vertex groups ell_max is ignored.
struct BallSpec {
  std::size_t lambda_max = 0;
  Length ell_max = 0;

  friend bool operator==(const BallSpec&, const BallSpec&) = default;
};

/**
 * The enumerated window of a presentation graph, held sphere by sphere.
 *
 * Sphere k is built from sphere k-1 by right multiplication with every
 * syllable allowed by the ell cap, keeping products whose syllable length
 * grew to k. Each sphere is sorted in NormalForm order.
 */
class Window {
 public:
  Window(const PresentationGraph& graph, BallSpec spec);

  const PresentationGraph& graph() const noexcept { return *graph_; }
  const BallSpec& spec() const noexcept { return spec_; }
  /// Whether the ell cap is in force (some vertex group is infinite).
  bool caps_ell() const noexcept { return caps_ell_; }

  /// Windowed Lambda_k. Throws if k > lambda_max.
  std::span<const NormalForm> sphere(std::size_t k) const;
  std::size_t size() const noexcept { return size_; }
  bool contains(const NormalForm& g) const;
  /// Every element, sphere by sphere.
  std::vector<NormalForm> ball() const;

  /// True when C_k (weighted length exactly k) lies entirely inside the window.
  bool covers_ell_level(Length k) const noexcept;
  /// C_k; throws unless covers_ell_level(k).
  std::vector<NormalForm> ell_level(Length k) const;
  /// Window elements supported in J, ordered by NormalForm.
  std::vector<NormalForm> clique_elements(VertexSet J) const;

  /// The syllables used to grow spheres.
  std::span<const Syllable> alphabet() const noexcept { return alphabet_; }

 private:
  const PresentationGraph* graph_;
  BallSpec spec_;
  bool caps_ell_;
  std::vector<Syllable> alphabet_;
  std::vector<std::vector<NormalForm>> spheres_;
  std::unordered_set<NormalForm, NormalFormHash> members_;
  std::size_t size_ = 0;
};

/// Windowed Lambda_k, built on the fly.
std::vector<NormalForm> sphere(const PresentationGraph& graph, std::size_t k, BallSpec spec);

/// A left divisor together with the positions (into g's canonical word) of
/// the syllables it takes from g.
struct DivisorPrefix {
  NormalForm divisor;
  std::vector<std::size_t> positions;
};

/// All length-k left divisors of g. They correspond one-to-one to the
/// k-element down-closed position sets of g's dependency order.
std::vector<DivisorPrefix> left_divisor_prefixes(const NormalForm& g, std::size_t k);
std::vector<NormalForm> left_divisors(const NormalForm& g, std::size_t k);
std::vector<NormalForm> right_divisors(const NormalForm& g, std::size_t k);

/// Factors_{k,l}(g): pairs (g1, g2) with g = g1 g2, lambda(g1) = k, lambda(g2) = l.
/// Requires lambda(g) = k + l.
std::vector<std::pair<NormalForm, NormalForm>> factorisations(const NormalForm& g,
                                                              std::size_t k, std::size_t l);

struct Factorisation {
  NormalForm g1;
  NormalForm s;
  NormalForm g2;
  Clique J;
};

/// Factors_{k,l}(J, g): triples g = g1 s g2 with s in G_J of syllable length |J|.
/// Requires J to be a clique and lambda(g) = k + l + |J|.
std::vector<Factorisation> factorisations_clique(const NormalForm& g, std::size_t k,
                                                 std::size_t l, Clique J);

/// Largest |Factors_{k,l}(J, g)| over windowed g of syllable length k+l+|J|.
/// A lower bound for the supremum over the whole group.
std::size_t ff_empirical(const Window& window, std::size_t k, std::size_t l, Clique J);

/// (k+1)^|V| (|J|+1)^|J|, saturating at UINT64_MAX.
std::uint64_t p1_bound(std::size_t k, std::size_t vertex_count, std::size_t clique_size);

/// Positions i < k (0-based) of the reduced word w whose vertex commutes with
/// the vertex of every position j, i < j < k. Position k-1 is always included.
std::vector<std::size_t> unconstrained_syllables(const PresentationGraph& graph,
                                                 std::span<const Syllable> w, std::size_t k);

/// h1 = g1 s1 w and h2 = w^-1 s2 g2 with s1, s2, s1 s2 in G_J of syllable
/// length |J| and q = lambda(h1) + lambda(h2) - lambda(h1 h2) = |J| + 2 lambda(w).
struct P2Decomposition {
  NormalForm g1;
  NormalForm s1;
  NormalForm w;
  NormalForm s2;
  NormalForm g2;
  Clique J;
  std::size_t q = 0;
};

/// The decomposition with w of maximal syllable length, ties broken by the
/// least canonical form of w.
P2Decomposition p2_decompose(const NormalForm& h1, const NormalForm& h2);
/// One decomposition for every maximal-length w, ordered by w.
std::vector<P2Decomposition> p2_witnesses(const NormalForm& h1, const NormalForm& h2);

/// MF(k,q,l) = sum over p = 0..floor(q/2) and J in K_{q-2p} of
/// FF_{k-q+p, l-q+p}(J), next to the same sum of Lemma-P1 bounds.
struct MfCheck {
  std::uint64_t mf = 0;
  std::uint64_t bound = 0;
};
MfCheck mf_check(const Window& window, std::size_t k, std::size_t q, std::size_t l);

}  // namespace graphprod
