#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace graphprod {

/// Sparse real 3-tensor with non-negative entries.
struct SparseTensor3 {
  struct Entry {
    std::uint32_t i = 0;
    std::uint32_t j = 0;
    std::uint32_t k = 0;
    double value = 0.0;
  };

  std::array<std::size_t, 3> dims{};
  std::vector<Entry> entries;

  std::size_t total_dimension() const noexcept { return dims[0] + dims[1] + dims[2]; }
};

struct PowerIterationOptions {
  std::size_t restarts = 16;
  std::size_t iterations = 200;
  double tolerance = 1e-10;
  std::uint64_t seed = 0;
  /// Restarts are spread over this many threads; the result does not depend on it.
  std::size_t threads = 1;
};

struct TensorNormEstimate {
  /// T(x, y, z) at the returned unit vectors: a certified lower bound of the
  /// spectral norm.
  double value = 0.0;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> z;
  bool empty = false;
  std::size_t components = 0;
};

/// T(x, y, .) for the given x, y.
std::vector<double> contract_last(const SparseTensor3& t, const std::vector<double>& x,
                                  const std::vector<double>& y);

/**
 * Spectral norm sup T(x,y,z) over unit x, y, z, estimated by alternating power
 * iteration.
 *
 * The tensor is split into connected components (entries link their three
 * indices). On each component, every restart alternates between taking the
 * top singular pair (y, z) of the matrix T(x, ., .) and the top singular
 * pair (x, z) of T(., y, .). Restart 0 starts from the uniform vector, later
 * restarts from positive random vectors drawn from (seed, component, restart),
 * so raising `restarts` never lowers the estimate.
 */
TensorNormEstimate estimate_tensor_norm(const SparseTensor3& t, const PowerIterationOptions& options);

}  // namespace graphprod
