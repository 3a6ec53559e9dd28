#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dense_oracle.hpp"
#include "graphprod/error.hpp"
#include "graphprod/tensor_norm.hpp"

using namespace graphprod;

namespace {

SparseTensor3 random_tensor(std::mt19937_64& rng, std::size_t a, std::size_t b, std::size_t c,
                            double density, bool binary) {
  SparseTensor3 t;
  t.dims = {a, b, c};
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (std::uint32_t i = 0; i < a; ++i) {
    for (std::uint32_t j = 0; j < b; ++j) {
      for (std::uint32_t k = 0; k < c; ++k) {
        if (uni(rng) < density) {
          t.entries.push_back({i, j, k, binary ? 1.0 : 0.1 + uni(rng)});
        }
      }
    }
  }
  return t;
}

// Tensor with one outer slice equal to the all-ones n x n matrix: norm n.
SparseTensor3 all_ones(std::size_t n) {
  SparseTensor3 t;
  t.dims = {n, n, 1};
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) {
      t.entries.push_back({i, j, 0, 1.0});
    }
  }
  return t;
}

}  // namespace

TEST(TensorNorm, SimpleShapes) {
  const PowerIterationOptions options;
  for (std::size_t n = 1; n <= 6; ++n) {
    EXPECT_NEAR(estimate_tensor_norm(all_ones(n), options).value, static_cast<double>(n), 1e-9);
  }
  SparseTensor3 diagonal;
  diagonal.dims = {4, 4, 4};
  for (std::uint32_t i = 0; i < 4; ++i) {
    diagonal.entries.push_back({i, i, i, 1.0});
  }
  const auto d = estimate_tensor_norm(diagonal, options);
  EXPECT_NEAR(d.value, 1.0, 1e-12);
  EXPECT_EQ(d.components, 4U);
  SparseTensor3 single;
  single.dims = {1, 1, 1};
  single.entries.push_back({0, 0, 0, 2.5});
  EXPECT_NEAR(estimate_tensor_norm(single, options).value, 2.5, 1e-12);
}

TEST(TensorNorm, EmptyTensor) {
  SparseTensor3 t;
  t.dims = {3, 2, 4};
  const auto e = estimate_tensor_norm(t, {});
  EXPECT_TRUE(e.empty);
  EXPECT_EQ(e.value, 0.0);
  EXPECT_EQ(e.x.size(), 3U);
  EXPECT_EQ(e.z.size(), 4U);
}

TEST(TensorNorm, RejectsBadEntries) {
  SparseTensor3 t;
  t.dims = {1, 1, 1};
  t.entries.push_back({0, 1, 0, 1.0});
  EXPECT_THROW(estimate_tensor_norm(t, {}), PreconditionError);
  t.entries[0] = {0, 0, 0, -1.0};
  EXPECT_THROW(estimate_tensor_norm(t, {}), PreconditionError);
  t.entries[0] = {0, 0, 0, std::nan("")};
  EXPECT_THROW(estimate_tensor_norm(t, {}), PreconditionError);
}

TEST(TensorNorm, WitnessAttainsValue) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 30; ++trial) {
    const auto t = random_tensor(rng, 1 + rng() % 6, 1 + rng() % 6, 1 + rng() % 6, 0.4, false);
    const auto e = estimate_tensor_norm(t, {});
    double value = 0.0;
    for (const auto& entry : t.entries) {
      value += entry.value * e.x[entry.i] * e.y[entry.j] * e.z[entry.k];
    }
    EXPECT_NEAR(value, e.value, 1e-9 * std::max(1.0, e.value));
    auto unit = [](const std::vector<double>& v) {
      double s = 0.0;
      for (auto a : v) {
        s += a * a;
      }
      return std::sqrt(s);
    };
    if (!e.empty) {
      EXPECT_NEAR(unit(e.x), 1.0, 1e-9);
      EXPECT_NEAR(unit(e.y), 1.0, 1e-9);
      EXPECT_NEAR(unit(e.z), 1.0, 1e-9);
    }
  }
}

TEST(TensorNorm, MatchesDenseOracle) {
  std::mt19937_64 rng(2);
  std::size_t compared = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t small = 1 + rng() % 3;
    const auto t = random_tensor(rng, small, 2 + rng() % 7, 2 + rng() % 7, 0.1 + 0.5 * (rng() % 100) / 100.0,
                                 trial % 2 == 0);
    const auto oracle = testing_support::dense_tensor_norm(t);
    ASSERT_TRUE(oracle.has_value());
    const auto e = estimate_tensor_norm(t, {});
    EXPECT_NEAR(e.value, *oracle, 1e-6 * std::max(1.0, *oracle)) << "trial " << trial;
    EXPECT_LE(e.value, *oracle * (1 + 1e-6));
    ++compared;
  }
  EXPECT_EQ(compared, 80U);
}

TEST(TensorNorm, OracleHandlesAnyModeOrder) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    auto t = random_tensor(rng, 5, 2, 6, 0.5, true);
    const auto oracle = testing_support::dense_tensor_norm(t);
    ASSERT_TRUE(oracle.has_value());
    EXPECT_NEAR(estimate_tensor_norm(t, {}).value, *oracle, 1e-6 * std::max(1.0, *oracle));
  }
  EXPECT_FALSE(testing_support::dense_tensor_norm(random_tensor(rng, 4, 4, 4, 0.5, true)).has_value());
}

TEST(TensorNorm, BudgetMonotoneAndDeterministic) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const auto t = random_tensor(rng, 6, 7, 5, 0.3, true);
    PowerIterationOptions options;
    options.seed = 99;
    double previous = 0.0;
    for (std::size_t restarts = 1; restarts <= 16; restarts *= 2) {
      options.restarts = restarts;
      const double value = estimate_tensor_norm(t, options).value;
      EXPECT_GE(value, previous);
      previous = value;
    }
    options.restarts = 16;
    const auto a = estimate_tensor_norm(t, options);
    const auto b = estimate_tensor_norm(t, options);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.x, b.x);
    options.threads = 3;
    const auto c = estimate_tensor_norm(t, options);
    EXPECT_EQ(a.value, c.value);
    EXPECT_EQ(a.y, c.y);
  }
}

TEST(TensorNorm, ContractLast) {
  SparseTensor3 t;
  t.dims = {2, 2, 2};
  t.entries = {{0, 0, 0, 1.0}, {1, 1, 1, 2.0}, {0, 1, 1, 3.0}};
  const auto z = contract_last(t, {1.0, 2.0}, {3.0, 4.0});
  EXPECT_DOUBLE_EQ(z[0], 3.0);
  EXPECT_DOUBLE_EQ(z[1], 2.0 * 2.0 * 4.0 + 3.0 * 1.0 * 4.0);
}
