#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "graphprod/enumeration.hpp"
#include "graphprod/group_function.hpp"

namespace testing_support {

using graphprod::Expression;
using graphprod::NormalForm;
using graphprod::PresentationGraph;

/// Random syllable on a random vertex. Integer syllables are drawn from [-3, 3] \ {0}.
graphprod::Syllable random_syllable(const PresentationGraph& graph, std::mt19937_64& rng);
Expression random_expression(const PresentationGraph& graph, std::size_t max_length,
                             std::mt19937_64& rng);

/// Applies `moves` random rewrites that preserve the element: commuting swaps,
/// merges of equal-vertex neighbours, splits of one syllable into two, and
/// insertion of a cancelling pair. Length stays below `max_length`.
Expression apply_random_moves(const PresentationGraph& graph, Expression word, std::size_t moves,
                              std::size_t max_length, std::mt19937_64& rng);

/// Reduction by repeatedly merging (or deleting) the first pair of equal-vertex
/// syllables separated only by syllables on adjacent vertices. Returns a reduced
/// word that need not be in canonical order.
Expression green_reduce(const PresentationGraph& graph, Expression word);

/// Two reduced words denote the same element iff their projections onto every
/// pair of non-commuting vertices (u = v included) coincide.
bool same_trace(const PresentationGraph& graph, const Expression& a, const Expression& b);

/// Lexicographically least vertex sequence in the commutation class of a
/// reduced word, found by exhaustive search over commuting swaps.
Expression brute_canonical(const PresentationGraph& graph, const Expression& reduced);

/// Factors_{k,l}(J, g) counted by trying every windowed g1 in Lambda_k and every
/// s in G_J with lambda(s) = |J|.
std::size_t brute_clique_factor_count(const graphprod::Window& window, const NormalForm& g,
                                      std::size_t k, std::size_t l, graphprod::Clique J);

/// Left divisors of g of length k found by trying every windowed element.
std::vector<NormalForm> brute_left_divisors(const graphprod::Window& window, const NormalForm& g,
                                            std::size_t k);

/// Random complex function supported on the given elements.
graphprod::GroupFunction random_function(const PresentationGraph& graph,
                                         const std::vector<NormalForm>& support,
                                         std::mt19937_64& rng);

/// Naive double loop over supports with a std::map accumulator.
graphprod::GroupFunction naive_convolve(const graphprod::GroupFunction& a,
                                        const graphprod::GroupFunction& b);

}  // namespace testing_support
