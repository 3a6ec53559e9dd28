#pragma once

#include <optional>
#include <string>
#include <vector>

#include "graphprod/enumeration.hpp"

namespace graphprod {

struct FactorCountRow {
  Clique J;
  std::size_t k = 0;
  std::size_t l = 0;
  std::size_t ff = 0;          // FF_{k,l}(J) on the window
  std::size_t ff_swapped = 0;  // FF_{l,k}(J) on the window
  std::uint64_t bound = 0;     // (k+1)^|V| (|J|+1)^|J|
  std::size_t elements = 0;    // windowed g with lambda(g) = k + l + |J|
  bool ok = true;
};

struct MfRow {
  std::size_t k = 0;
  std::size_t q = 0;
  std::size_t l = 0;
  MfCheck value;
  bool ok = true;
};

struct Lemma1Report {
  std::vector<FactorCountRow> factor_rows;
  std::vector<MfRow> mf_rows;
  std::size_t injectivity_checks = 0;
  std::vector<std::string> failures;
  bool ok() const noexcept { return failures.empty(); }
};

/**
 * Exhaustive window checks around the factorisation-count lemma:
 *  - |Factors_{k,l}(J, g)| <= (k+1)^|V| (|J|+1)^|J| for every clique J and
 *    windowed g with lambda(g) = k + l + |J|, k <= k_max, l <= l_max;
 *  - FF_{k,l}(J) = FF_{l,k}(J) on the window;
 *  - distinct length-k left divisors of a windowed g have distinct sets of
 *    unconstrained syllables;
 *  - MF(k,q,l) <= Q(k) wherever the window holds the terms.
 */
Lemma1Report verify_lemma1(const Window& window, std::size_t k_max, std::size_t l_max);

struct Lemma2Report {
  std::size_t pairs = 0;
  std::size_t witnesses = 0;
  std::vector<std::string> failures;
  bool ok() const noexcept { return failures.empty(); }
};

/// Checks one decomposition against h1 = g1 s1 w, h2 = w^-1 s2 g2,
/// lambda(s1) = lambda(s2) = lambda(s1 s2) = |J| with s1, s2 in G_J, and
/// q = |J| + 2 lambda(w). Returns a description of the first failed condition.
std::optional<std::string> check_p2(const NormalForm& h1, const NormalForm& h2,
                                    const P2Decomposition& d);

/// check_p2 on p2_decompose for every windowed pair with lambda(h1) <= k_max,
/// lambda(h2) <= l_max; with all_witnesses, on every maximal-w decomposition.
Lemma2Report verify_lemma2(const Window& window, std::size_t k_max, std::size_t l_max,
                           bool all_witnesses = false);

}  // namespace graphprod
