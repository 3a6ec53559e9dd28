#include "graphprod/lemma_checks.hpp"

#include <algorithm>
#include <set>

#include "graphprod/error.hpp"

namespace graphprod {

Lemma1Report verify_lemma1(const Window& window, std::size_t k_max, std::size_t l_max) {
  const auto& graph = window.graph();
  const auto lambda_max = window.spec().lambda_max;
  Lemma1Report report;

  for (const auto& J : graph.cliques()) {
    for (std::size_t k = 0; k <= k_max; ++k) {
      for (std::size_t l = 0; l <= l_max; ++l) {
        if (k + l + J.size() > lambda_max) {
          continue;
        }
        FactorCountRow row;
        row.J = J;
        row.k = k;
        row.l = l;
        row.bound = p1_bound(k, graph.vertex_count(), J.size());
        for (const auto& g : window.sphere(k + l + J.size())) {
          ++row.elements;
          const auto count = factorisations_clique(g, k, l, J).size();
          row.ff = std::max(row.ff, count);
          if (count > row.bound) {
            row.ok = false;
            report.failures.push_back("|Factors_{" + std::to_string(k) + "," + std::to_string(l) +
                                      "}(" + J.to_string() + ", " + g.to_string() + ")| = " +
                                      std::to_string(count) + " exceeds " +
                                      std::to_string(row.bound));
          }
        }
        row.ff_swapped = ff_empirical(window, l, k, J);
        if (row.ff != row.ff_swapped) {
          row.ok = false;
          report.failures.push_back("FF_{" + std::to_string(k) + "," + std::to_string(l) + "}(" +
                                    J.to_string() + ") = " + std::to_string(row.ff) +
                                    " differs from FF_{" + std::to_string(l) + "," +
                                    std::to_string(k) + "} = " + std::to_string(row.ff_swapped));
        }
        report.factor_rows.push_back(row);
      }
    }
  }

  for (const auto& g : window.ball()) {
    const auto word = g.syllables();
    for (std::size_t k = 0; k <= g.syllable_length(); ++k) {
      const auto prefixes = left_divisor_prefixes(g, k);
      std::set<std::vector<Syllable>> seen;
      for (const auto& prefix : prefixes) {
        Expression w;
        for (auto pos : prefix.positions) {
          w.push_back(word[pos]);
        }
        std::vector<Syllable> free;
        for (auto i : unconstrained_syllables(graph, w, k)) {
          free.push_back(w[i]);
        }
        std::sort(free.begin(), free.end());
        seen.insert(std::move(free));
      }
      ++report.injectivity_checks;
      if (seen.size() != prefixes.size()) {
        report.failures.push_back("left divisors of length " + std::to_string(k) + " of '" +
                                  g.to_string() + "' share unconstrained syllables");
      }
    }
  }

  for (std::size_t k = 0; k <= k_max; ++k) {
    for (std::size_t l = 0; l <= l_max; ++l) {
      for (std::size_t q = 0; q <= std::min(k, l); ++q) {
        if (k + l - q > lambda_max) {
          continue;
        }
        MfRow row{k, q, l, mf_check(window, k, q, l), true};
        if (row.value.mf > row.value.bound) {
          row.ok = false;
          report.failures.push_back("MF(" + std::to_string(k) + "," + std::to_string(q) + "," +
                                    std::to_string(l) + ") = " + std::to_string(row.value.mf) +
                                    " exceeds Q = " + std::to_string(row.value.bound));
        }
        report.mf_rows.push_back(row);
      }
    }
  }
  return report;
}

std::optional<std::string> check_p2(const NormalForm& h1, const NormalForm& h2,
                                    const P2Decomposition& d) {
  const auto size = d.J.size();
  if (!h1.graph().is_clique(d.J)) {
    return "J = " + d.J.to_string() + " is not a clique";
  }
  if (multiply(multiply(d.g1, d.s1), d.w) != h1) {
    return "g1 s1 w != h1";
  }
  if (multiply(multiply(invert(d.w), d.s2), d.g2) != h2) {
    return "w^-1 s2 g2 != h2";
  }
  if (!support_in_clique(d.s1, d.J) || !support_in_clique(d.s2, d.J)) {
    return "s1 or s2 lies outside G_J";
  }
  if (d.s1.syllable_length() != size || d.s2.syllable_length() != size ||
      multiply(d.s1, d.s2).syllable_length() != size) {
    return "lambda(s1), lambda(s2), lambda(s1 s2) are not all |J| = " + std::to_string(size);
  }
  const auto q = h1.syllable_length() + h2.syllable_length() - multiply(h1, h2).syllable_length();
  if (d.q != q || q != size + 2 * d.w.syllable_length()) {
    return "q = " + std::to_string(q) + " but |J| + 2 lambda(w) = " +
           std::to_string(size + 2 * d.w.syllable_length());
  }
  if (h1.syllable_length() != d.g1.syllable_length() + size + d.w.syllable_length() ||
      h2.syllable_length() != d.g2.syllable_length() + size + d.w.syllable_length()) {
    return "syllable lengths of the factors do not add up";
  }
  return std::nullopt;
}

Lemma2Report verify_lemma2(const Window& window, std::size_t k_max, std::size_t l_max,
                           bool all_witnesses) {
  if (k_max > window.spec().lambda_max || l_max > window.spec().lambda_max) {
    throw PreconditionError("lemma 2 check range exceeds lambda_max = " +
                            std::to_string(window.spec().lambda_max));
  }
  Lemma2Report report;
  for (std::size_t a = 0; a <= k_max; ++a) {
    for (const auto& h1 : window.sphere(a)) {
      for (std::size_t b = 0; b <= l_max; ++b) {
        for (const auto& h2 : window.sphere(b)) {
          ++report.pairs;
          std::vector<P2Decomposition> found;
          if (all_witnesses) {
            found = p2_witnesses(h1, h2);
          } else {
            found.push_back(p2_decompose(h1, h2));
          }
          for (const auto& d : found) {
            ++report.witnesses;
            if (auto failure = check_p2(h1, h2, d)) {
              report.failures.push_back("h1 = '" + h1.to_string() + "', h2 = '" + h2.to_string() +
                                        "': " + *failure);
            }
          }
        }
      }
    }
  }
  return report;
}

}  // namespace graphprod
