#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "graphprod/enumeration.hpp"
#include "graphprod/error.hpp"
#include "graphprod/lemma_checks.hpp"
#include "oracles.hpp"

using namespace graphprod;
using testing_support::make_graph;

namespace {

std::unique_ptr<PresentationGraph> dihedral() {
  return make_graph({VertexGroup::cyclic(2), VertexGroup::cyclic(2)});
}

std::unique_ptr<PresentationGraph> klein() {
  return make_graph({VertexGroup::cyclic(2), VertexGroup::cyclic(2)}, {{0, 1}});
}

std::unique_ptr<PresentationGraph> path_z2() {
  return make_graph(std::vector<VertexGroup>(3, VertexGroup::cyclic(2)), {{0, 1}, {1, 2}});
}

std::unique_ptr<PresentationGraph> complete_z2(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      edges.emplace_back(u, v);
    }
  }
  return make_graph(std::vector<VertexGroup>(n, VertexGroup::cyclic(2)), edges);
}

std::set<std::string> rendered(const std::vector<NormalForm>& elements) {
  std::set<std::string> out;
  for (const auto& g : elements) {
    out.insert(g.to_string());
  }
  return out;
}

// Every canonicalised product of at most k window syllables, filtered by lambda.
std::set<std::string> naive_sphere(const Window& window, std::size_t k) {
  std::vector<NormalForm> frontier{identity(window.graph())};
  std::set<std::string> all;
  for (std::size_t step = 0; step < k; ++step) {
    std::vector<NormalForm> next;
    for (const auto& g : frontier) {
      for (const auto& s : window.alphabet()) {
        next.push_back(multiply(g, reduce(window.graph(), Expression{s})));
      }
    }
    frontier = std::move(next);
    std::sort(frontier.begin(), frontier.end());
    frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
  }
  for (const auto& g : frontier) {
    const bool capped = window.caps_ell() && g.ell() > window.spec().ell_max;
    if (g.syllable_length() == k && !capped) {
      all.insert(g.to_string());
    }
  }
  return all;
}

}  // namespace

TEST(Sphere, Examples) {
  const auto d = dihedral();
  const Window dw(*d, {8, 0});
  EXPECT_EQ(dw.sphere(0).size(), 1U);
  EXPECT_TRUE(dw.sphere(0)[0].is_identity());
  for (std::size_t k = 1; k <= 8; ++k) {
    EXPECT_EQ(dw.sphere(k).size(), 2U) << k;
  }
  const auto kl = klein();
  const Window kw(*kl, {4, 0});
  EXPECT_EQ(kw.sphere(0).size(), 1U);
  EXPECT_EQ(kw.sphere(1).size(), 2U);
  EXPECT_EQ(kw.sphere(2).size(), 1U);
  EXPECT_EQ(kw.sphere(3).size(), 0U);
  EXPECT_EQ(kw.sphere(4).size(), 0U);
  EXPECT_EQ(kw.size(), 4U);
  EXPECT_THROW(kw.sphere(5), PreconditionError);
}

TEST(Sphere, AgreesWithNaiveClosure) {
  for (const auto& f : testing_support::load_all_fixtures()) {
    const auto lambda_max = std::min<std::size_t>(f.spec().lambda_max, 4);
    const Window window(*f.graph, {lambda_max, f.spec().ell_max});
    for (std::size_t k = 0; k <= lambda_max; ++k) {
      const auto sphere_k = window.sphere(k);
      EXPECT_EQ(rendered({sphere_k.begin(), sphere_k.end()}), naive_sphere(window, k))
          << f.name << " k=" << k;
      EXPECT_TRUE(std::is_sorted(sphere_k.begin(), sphere_k.end()));
      EXPECT_EQ(rendered(sphere(*f.graph, k, window.spec())),
                rendered({sphere_k.begin(), sphere_k.end()}));
    }
  }
}

TEST(Sphere, EllCapOnlyWithInfiniteGroups) {
  const auto z = make_graph({VertexGroup::integers()});
  const Window w(*z, {3, 3});
  EXPECT_TRUE(w.caps_ell());
  EXPECT_EQ(w.sphere(1).size(), 6U);  // -3..3 without 0
  EXPECT_EQ(w.sphere(2).size(), 0U);
  EXPECT_TRUE(w.covers_ell_level(3));
  EXPECT_FALSE(w.covers_ell_level(4));
  EXPECT_EQ(w.ell_level(2).size(), 2U);
  EXPECT_THROW(w.ell_level(4), PreconditionError);
  const auto d = dihedral();
  const Window dw(*d, {3, 0});
  EXPECT_FALSE(dw.caps_ell());
  EXPECT_TRUE(dw.covers_ell_level(3));
  EXPECT_FALSE(dw.covers_ell_level(4));
}

TEST(LeftDivisors, Examples) {
  const auto kl = klein();
  const auto uv = parse_element(*kl, "v0:1 v1:1");
  EXPECT_EQ(rendered(left_divisors(uv, 1)), (std::set<std::string>{"v0:1", "v1:1"}));
  EXPECT_EQ(rendered(left_divisors(uv, 0)), (std::set<std::string>{""}));
  EXPECT_EQ(rendered(left_divisors(uv, 2)), (std::set<std::string>{"v0:1 v1:1"}));
  const auto d = dihedral();
  const auto uvu = parse_element(*d, "v0:1 v1:1 v0:1");
  EXPECT_EQ(rendered(left_divisors(uvu, 1)), (std::set<std::string>{"v0:1"}));
  EXPECT_EQ(rendered(right_divisors(uvu, 2)), (std::set<std::string>{"v1:1 v0:1"}));
  EXPECT_THROW(left_divisors(uvu, 4), PreconditionError);
}

TEST(LeftDivisors, AgreeWithBruteForce) {
  for (const auto& f : testing_support::load_all_fixtures()) {
    const auto lambda_max = std::min<std::size_t>(f.spec().lambda_max, 4);
    const Window window(*f.graph, {lambda_max, f.spec().ell_max});
    for (const auto& g : window.ball()) {
      for (std::size_t k = 0; k <= g.syllable_length(); ++k) {
        const auto got = left_divisors(g, k);
        EXPECT_EQ(rendered(got), rendered(testing_support::brute_left_divisors(window, g, k)))
            << f.name << " g=" << g.to_string() << " k=" << k;
        EXPECT_EQ(got.size(), factorisations(g, k, g.syllable_length() - k).size());
        for (const auto& p : left_divisor_prefixes(g, k)) {
          EXPECT_EQ(p.positions.size(), k);
          EXPECT_TRUE(is_left_divisor(p.divisor, g));
        }
      }
    }
  }
}

TEST(Factorisations, Examples) {
  const auto d = dihedral();
  const auto uvu = parse_element(*d, "v0:1 v1:1 v0:1");
  const auto f = factorisations(uvu, 1, 2);
  ASSERT_EQ(f.size(), 1U);
  EXPECT_EQ(f[0].first.to_string(), "v0:1");
  EXPECT_EQ(f[0].second.to_string(), "v1:1 v0:1");
  const auto f0 = factorisations(uvu, 0, 3);
  ASSERT_EQ(f0.size(), 1U);
  EXPECT_TRUE(f0[0].first.is_identity());
  EXPECT_EQ(f0[0].second, uvu);
  const auto kl = klein();
  EXPECT_EQ(factorisations(parse_element(*kl, "v0:1 v1:1"), 1, 1).size(), 2U);
  EXPECT_THROW(factorisations(uvu, 1, 1), PreconditionError);
}

TEST(Factorisations, CliqueExamples) {
  const auto d = dihedral();
  const auto u = parse_element(*d, "v0:1");
  const auto single = factorisations_clique(u, 0, 0, Clique{0});
  ASSERT_EQ(single.size(), 1U);
  EXPECT_TRUE(single[0].g1.is_identity());
  EXPECT_EQ(single[0].s, u);
  EXPECT_TRUE(single[0].g2.is_identity());

  const auto p = path_z2();
  const auto abc = parse_element(*p, "v0:1 v1:1 v2:1");
  std::set<std::string> triples;
  for (const auto& t : factorisations_clique(abc, 1, 1, Clique{1})) {
    EXPECT_EQ(multiply(multiply(t.g1, t.s), t.g2), abc);
    triples.insert(t.g1.to_string() + "|" + t.s.to_string() + "|" + t.g2.to_string());
  }
  // a and c do not commute, so c b a is a different element and a b c is the only triple.
  EXPECT_EQ(triples, (std::set<std::string>{"v0:1|v1:1|v2:1"}));
  const Window window(*p, {4, 0});
  EXPECT_EQ(triples.size(), testing_support::brute_clique_factor_count(window, abc, 1, 1, Clique{1}));

  // With J empty the clique version is the plain one.
  const auto kl = klein();
  const auto uv = parse_element(*kl, "v0:1 v1:1");
  EXPECT_EQ(factorisations_clique(uv, 1, 1, Clique{}).size(), factorisations(uv, 1, 1).size());
  EXPECT_THROW(factorisations_clique(abc, 0, 1, Clique{0, 2}), PreconditionError);
}

TEST(Factorisations, CliqueCountsAgreeWithBruteForce) {
  for (const auto& name : {"klein", "path_z2", "path_integers", "triangle_z3"}) {
    const auto f = testing_support::load_fixture(name);
    const auto lambda_max = std::min<std::size_t>(f.spec().lambda_max, 4);
    const Window window(*f.graph, {lambda_max, f.spec().ell_max});
    for (const auto& g : window.ball()) {
      for (const auto& J : f.graph->cliques()) {
        if (J.size() > g.syllable_length()) {
          continue;
        }
        const auto rest = g.syllable_length() - J.size();
        for (std::size_t k = 0; k <= rest; ++k) {
          EXPECT_EQ(factorisations_clique(g, k, rest - k, J).size(),
                    testing_support::brute_clique_factor_count(window, g, k, rest - k, J))
              << name << " g=" << g.to_string() << " J=" << J.to_string() << " k=" << k;
        }
      }
    }
  }
}

TEST(FactorBound, CompleteGraphAndFreeProduct) {
  const auto g4 = complete_z2(4);
  const Window w4(*g4, {4, 0});
  EXPECT_EQ(ff_empirical(w4, 2, 2, Clique{}), 6U);
  EXPECT_EQ(ff_empirical(w4, 1, 3, Clique{}), 4U);
  EXPECT_EQ(ff_empirical(w4, 3, 1, Clique{}), 4U);
  EXPECT_EQ(ff_empirical(w4, 1, 1, Clique{0, 1}), 2U);
  const auto d = dihedral();
  const Window dw(*d, {8, 0});
  for (std::size_t k = 0; k <= 4; ++k) {
    for (std::size_t l = 0; l + k <= 8; ++l) {
      EXPECT_EQ(ff_empirical(dw, k, l, Clique{}), 1U);
    }
  }
  EXPECT_EQ(p1_bound(2, 3, 1), 27U * 2U);
  EXPECT_EQ(p1_bound(0, 5, 0), 1U);
  EXPECT_EQ(p1_bound(1000, 64, 3), UINT64_MAX);
}

TEST(Unconstrained, Examples) {
  const auto p = path_z2();
  const Expression acb{{0, 1}, {2, 1}, {1, 1}};
  EXPECT_EQ(unconstrained_syllables(*p, acb, 3), (std::vector<std::size_t>{1, 2}));
  const auto d = dihedral();
  const Expression uvu{{0, 1}, {1, 1}, {0, 1}};
  EXPECT_EQ(unconstrained_syllables(*d, uvu, 3), (std::vector<std::size_t>{2}));
  const auto g4 = complete_z2(4);
  const Expression all{{0, 1}, {1, 1}, {2, 1}, {3, 1}};
  EXPECT_EQ(unconstrained_syllables(*g4, all, 4), (std::vector<std::size_t>{0, 1, 2, 3}));
}

TEST(P2, Examples) {
  const auto z = make_graph({VertexGroup::integers()});
  const auto d = p2_decompose(parse_element(*z, "v0:2"), parse_element(*z, "v0:3"));
  EXPECT_EQ(d.q, 1U);
  EXPECT_EQ(d.J, Clique{0});
  EXPECT_EQ(d.s1.to_string(), "v0:2");
  EXPECT_EQ(d.s2.to_string(), "v0:3");
  EXPECT_TRUE(d.w.is_identity());

  const auto f2 = make_graph({VertexGroup::integers(), VertexGroup::integers()});
  const auto h1 = parse_element(*f2, "v0:1");
  const auto h2 = parse_element(*f2, "v0:-1 v1:1");
  const auto e = p2_decompose(h1, h2);
  EXPECT_EQ(e.q, 2U);
  EXPECT_EQ(e.w.to_string(), "v0:1");
  EXPECT_TRUE(e.J.empty());
  EXPECT_FALSE(check_p2(h1, h2, e).has_value());

  const auto kl = klein();
  const auto free = p2_decompose(parse_element(*kl, "v0:1"), identity(*kl));
  EXPECT_EQ(free.q, 0U);
  EXPECT_TRUE(free.w.is_identity());
  EXPECT_TRUE(free.s1.is_identity() && free.s2.is_identity());
}

TEST(P2, AllWitnessesSatisfyTheLemma) {
  for (const auto& f : testing_support::load_all_fixtures()) {
    const Window window(*f.graph, {std::min<std::size_t>(f.spec().lambda_max, 3), f.spec().ell_max});
    const auto report = verify_lemma2(window, 3, 3, true);
    EXPECT_TRUE(report.ok()) << f.name << ": " << (report.failures.empty() ? "" : report.failures[0]);
    EXPECT_GT(report.pairs, 0U);
    EXPECT_GE(report.witnesses, report.pairs);
  }
}

TEST(Lemma1, FixturesPass) {
  for (const auto& f : testing_support::load_all_fixtures()) {
    const Window window(*f.graph, {std::min<std::size_t>(f.spec().lambda_max, 4), f.spec().ell_max});
    const auto report = verify_lemma1(window, 2, 2);
    EXPECT_TRUE(report.ok()) << f.name << ": " << (report.failures.empty() ? "" : report.failures[0]);
    EXPECT_FALSE(report.factor_rows.empty());
    EXPECT_GT(report.injectivity_checks, 0U);
    for (const auto& row : report.mf_rows) {
      EXPECT_LE(row.value.mf, row.value.bound);
    }
  }
}

TEST(Lemma1, MfExample) {
  const auto kl = klein();
  const Window w(*kl, {4, 0});
  const auto m = mf_check(w, 1, 1, 1);
  EXPECT_LE(m.mf, m.bound);
  EXPECT_GT(m.mf, 0U);
}
