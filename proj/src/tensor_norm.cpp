#include "graphprod/tensor_norm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <thread>

#include "graphprod/error.hpp"

namespace graphprod {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (auto a : v) {
    s += a * a;
  }
  return std::sqrt(s);
}

bool normalize(std::vector<double>& v) {
  const double n = norm2(v);
  if (n == 0.0 || !std::isfinite(n)) {
    return false;
  }
  for (auto& a : v) {
    a /= n;
  }
  return true;
}

// T(x, ., z) and T(., y, z).
std::vector<double> contract_middle(const SparseTensor3& t, const std::vector<double>& x,
                                    const std::vector<double>& z) {
  std::vector<double> out(t.dims[1], 0.0);
  for (const auto& e : t.entries) {
    out[e.j] += e.value * x[e.i] * z[e.k];
  }
  return out;
}

std::vector<double> contract_first(const SparseTensor3& t, const std::vector<double>& y,
                                   const std::vector<double>& z) {
  std::vector<double> out(t.dims[0], 0.0);
  for (const auto& e : t.entries) {
    out[e.i] += e.value * y[e.j] * z[e.k];
  }
  return out;
}

struct Attempt {
  double value = -1.0;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> z;
};

// Top right-singular vector of the linear map v -> forward(v), refined from `v`.
template <typename Forward, typename Backward>
void top_singular(std::vector<double>& v, Forward forward, Backward backward,
                  const PowerIterationOptions& options) {
  double previous = -1.0;
  const std::size_t cap = std::max<std::size_t>(options.iterations, 50) * 4;
  for (std::size_t it = 0; it < cap; ++it) {
    auto image = forward(v);
    const double sigma = norm2(image);
    if (sigma == 0.0) {
      return;
    }
    auto next = backward(image);
    if (!normalize(next)) {
      return;
    }
    v = std::move(next);
    if (previous >= 0.0 && std::abs(sigma - previous) <= options.tolerance * sigma) {
      return;
    }
    previous = sigma;
  }
}

Attempt run_restart(const SparseTensor3& t, std::vector<double> x,
                    const PowerIterationOptions& options) {
  normalize(x);
  std::vector<double> y(t.dims[1], 1.0);
  normalize(y);
  double previous = -1.0;
  for (std::size_t it = 0; it < options.iterations; ++it) {
    // Fix x: top singular pair of y -> T(x, y, .).
    top_singular(
        y, [&](const std::vector<double>& v) { return contract_last(t, x, v); },
        [&](const std::vector<double>& z) { return contract_middle(t, x, z); }, options);
    // Fix y: top singular pair of x -> T(x, y, .).
    top_singular(
        x, [&](const std::vector<double>& v) { return contract_last(t, v, y); },
        [&](const std::vector<double>& z) { return contract_first(t, y, z); }, options);
    const double sigma = norm2(contract_last(t, x, y));
    if (previous >= 0.0 && std::abs(sigma - previous) <= options.tolerance * sigma) {
      break;
    }
    previous = sigma;
  }
  Attempt out;
  out.z = contract_last(t, x, y);
  out.value = norm2(out.z);
  if (!normalize(out.z)) {
    out.value = 0.0;
  }
  out.x = std::move(x);
  out.y = std::move(y);
  return out;
}

struct Component {
  std::vector<std::uint32_t> rows[3];  // global indices per mode, ascending
  SparseTensor3 local;
};

std::vector<Component> split_components(const SparseTensor3& t) {
  const auto a = t.dims[0];
  const auto b = t.dims[1];
  const auto total = t.total_dimension();
  std::vector<std::size_t> parent(total);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  auto unite = [&](std::size_t u, std::size_t v) {
    u = find(u);
    v = find(v);
    if (u != v) {
      parent[std::max(u, v)] = std::min(u, v);
    }
  };
  for (const auto& e : t.entries) {
    unite(e.i, a + e.j);
    unite(e.i, a + b + e.k);
  }
  std::vector<std::size_t> component_of(total, SIZE_MAX);
  std::vector<Component> out;
  std::vector<std::vector<std::uint32_t>> local_index(3);
  for (std::size_t m = 0; m < 3; ++m) {
    local_index[m].assign(t.dims[m], 0);
  }
  auto component_for = [&](std::size_t root) -> Component& {
    if (component_of[root] == SIZE_MAX) {
      component_of[root] = out.size();
      out.emplace_back();
    }
    return out[component_of[root]];
  };
  // Register rows in global order so local indices are ascending.
  std::vector<bool> used(total, false);
  for (const auto& e : t.entries) {
    used[e.i] = true;
    used[a + e.j] = true;
    used[a + b + e.k] = true;
  }
  for (const auto& e : t.entries) {
    component_for(find(e.i));
  }
  for (std::size_t node = 0; node < total; ++node) {
    if (!used[node]) {
      continue;
    }
    const std::size_t mode = node < a ? 0 : (node < a + b ? 1 : 2);
    const std::size_t offset = mode == 0 ? 0 : (mode == 1 ? a : a + b);
    auto& comp = out[component_of[find(node)]];
    local_index[mode][node - offset] = static_cast<std::uint32_t>(comp.rows[mode].size());
    comp.rows[mode].push_back(static_cast<std::uint32_t>(node - offset));
  }
  for (auto& comp : out) {
    for (std::size_t m = 0; m < 3; ++m) {
      comp.local.dims[m] = comp.rows[m].size();
    }
  }
  for (const auto& e : t.entries) {
    auto& comp = out[component_of[find(e.i)]];
    comp.local.entries.push_back(
        {local_index[0][e.i], local_index[1][e.j], local_index[2][e.k], e.value});
  }
  return out;
}

}  // namespace

std::vector<double> contract_last(const SparseTensor3& t, const std::vector<double>& x,
                                  const std::vector<double>& y) {
  std::vector<double> out(t.dims[2], 0.0);
  for (const auto& e : t.entries) {
    out[e.k] += e.value * x[e.i] * y[e.j];
  }
  return out;
}

TensorNormEstimate estimate_tensor_norm(const SparseTensor3& t,
                                        const PowerIterationOptions& options) {
  for (const auto& e : t.entries) {
    if (e.i >= t.dims[0] || e.j >= t.dims[1] || e.k >= t.dims[2]) {
      throw PreconditionError("tensor entry index out of range");
    }
    if (!(e.value >= 0.0) || !std::isfinite(e.value)) {
      throw PreconditionError("tensor entries must be finite and non-negative");
    }
  }
  TensorNormEstimate best;
  best.x.assign(t.dims[0], 0.0);
  best.y.assign(t.dims[1], 0.0);
  best.z.assign(t.dims[2], 0.0);
  const auto components = split_components(t);
  best.components = components.size();
  if (components.empty()) {
    best.empty = true;
    return best;
  }
  const auto restarts = std::max<std::size_t>(options.restarts, 1);
  for (std::size_t c = 0; c < components.size(); ++c) {
    const auto& comp = components[c];
    std::vector<Attempt> attempts(restarts);
    auto work = [&](std::size_t first, std::size_t stride) {
      for (auto r = first; r < restarts; r += stride) {
        std::vector<double> x(comp.local.dims[0], 1.0);
        if (r > 0) {
          std::mt19937_64 rng(splitmix(options.seed ^ splitmix(c * 0x10001ULL + r)));
          for (auto& a : x) {
            a = 0.05 + 0.95 * static_cast<double>(rng() >> 11) * 0x1.0p-53;
          }
        }
        attempts[r] = run_restart(comp.local, std::move(x), options);
      }
    };
    const auto threads = std::max<std::size_t>(1, std::min(options.threads, restarts));
    if (threads == 1) {
      work(0, 1);
    } else {
      std::vector<std::jthread> pool;
      for (std::size_t th = 0; th < threads; ++th) {
        pool.emplace_back(work, th, threads);
      }
    }
    for (auto& attempt : attempts) {
      if (attempt.value > best.value) {
        best.value = attempt.value;
        std::fill(best.x.begin(), best.x.end(), 0.0);
        std::fill(best.y.begin(), best.y.end(), 0.0);
        std::fill(best.z.begin(), best.z.end(), 0.0);
        for (std::size_t i = 0; i < attempt.x.size(); ++i) {
          best.x[comp.rows[0][i]] = attempt.x[i];
        }
        for (std::size_t j = 0; j < attempt.y.size(); ++j) {
          best.y[comp.rows[1][j]] = attempt.y[j];
        }
        for (std::size_t k = 0; k < attempt.z.size(); ++k) {
          best.z[comp.rows[2][k]] = attempt.z[k];
        }
      }
    }
  }
  return best;
}

}  // namespace graphprod
