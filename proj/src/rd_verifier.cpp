#include "graphprod/rd_verifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <random>
#include <unordered_map>

#include "graphprod/error.hpp"

namespace graphprod {

namespace {

constexpr double kRelativeSlack = 1e-9;

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h += 0x9e3779b97f4a7c15ULL;
  h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
  h = (h ^ (h >> 27)) * 0x94d049bb133111ebULL;
  return h ^ (h >> 31);
}

std::size_t level_of(const NormalForm& g, LevelKind kind) {
  return kind == LevelKind::Lambda ? g.syllable_length() : static_cast<std::size_t>(g.ell());
}

GroupFunction restrict_level(const GroupFunction& phi, LevelKind kind, std::size_t m) {
  return kind == LevelKind::Lambda ? restrict_by_lambda(phi, m) : restrict_by_ell(phi, m);
}

GroupFunction random_function(const PresentationGraph& graph, std::span<const NormalForm> level,
                              std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  GroupFunction out(graph);
  for (const auto& g : level) {
    const double re = normal(rng);
    const double im = normal(rng);
    out.set(g, {re, im});
  }
  return out;
}

std::string real_text(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Tensor over first x second x (products kept by `keep`), third mode in NormalForm order.
template <typename Keep>
TrilinearInstance build_instance(std::vector<NormalForm> first, std::vector<NormalForm> second,
                                 const std::vector<ProductTable::Product>& products, double r,
                                 Keep keep) {
  if (!(r >= 0.0)) {
    throw PreconditionError("Sobolev order must be non-negative");
  }
  TrilinearInstance out;
  std::map<NormalForm, std::uint32_t> third;
  for (const auto& p : products) {
    if (keep(p.g)) {
      third.emplace(p.g, 0);
    }
  }
  for (auto& [g, index] : third) {
    index = static_cast<std::uint32_t>(out.third.size());
    out.third.push_back(g);
  }
  out.first_weights.reserve(first.size());
  for (const auto& g : first) {
    out.first_weights.push_back(r == 0.0 ? 1.0
                                         : std::pow(1.0 + static_cast<double>(g.ell()), -r));
  }
  out.tensor.dims = {first.size(), second.size(), out.third.size()};
  for (const auto& p : products) {
    if (keep(p.g)) {
      out.tensor.entries.push_back({p.i, p.j, third.at(p.g), out.first_weights[p.i]});
    }
  }
  out.first = std::move(first);
  out.second = std::move(second);
  return out;
}

std::vector<ProductTable::Product> all_products(std::span<const NormalForm> first,
                                                std::span<const NormalForm> second) {
  std::vector<ProductTable::Product> out;
  out.reserve(first.size() * second.size());
  for (std::uint32_t i = 0; i < first.size(); ++i) {
    for (std::uint32_t j = 0; j < second.size(); ++j) {
      out.push_back({i, j, multiply(first[i], second[j])});
    }
  }
  return out;
}

RatioEstimate estimate(const PresentationGraph& graph, const TrilinearInstance& instance,
                       const PowerIterationOptions& options) {
  RatioEstimate out{0.0, false, 0, GroupFunction(graph), GroupFunction(graph)};
  if (instance.first.empty() || instance.second.empty()) {
    out.empty = true;
    return out;
  }
  const auto result = estimate_tensor_norm(instance.tensor, options);
  out.samples = std::max<std::size_t>(options.restarts, 1) * std::max<std::size_t>(result.components, 1);
  if (result.empty) {
    // Both levels are populated but no product lands in the target level.
    out.phi.set(instance.first.front(), instance.first_weights.front());
    out.psi.set(instance.second.front(), 1.0);
    return out;
  }
  out.value = result.value;
  for (std::size_t i = 0; i < instance.first.size(); ++i) {
    out.phi.set(instance.first[i], result.x[i] * instance.first_weights[i]);
  }
  for (std::size_t j = 0; j < instance.second.size(); ++j) {
    out.psi.set(instance.second[j], result.y[j]);
  }
  return out;
}

double observed_ratio(const GroupFunction& phi, const GroupFunction& psi, LevelKind kind,
                      std::size_t m, double r) {
  const double denominator = sobolev_norm(phi, r) * l2_norm(psi);
  if (denominator == 0.0) {
    return 0.0;
  }
  return l2_norm(restrict_level(convolve(phi, psi), kind, m)) / denominator;
}

}  // namespace

std::vector<NormalForm> level_set(const Window& window, LevelKind kind, std::size_t k) {
  if (kind == LevelKind::Lambda) {
    const auto level = window.sphere(k);
    return {level.begin(), level.end()};
  }
  return window.ell_level(k);
}

ProductTable product_table(const Window& window, LevelKind kind, std::size_t k, std::size_t l) {
  ProductTable out;
  out.kind = kind;
  out.k = k;
  out.l = l;
  out.first = level_set(window, kind, k);
  out.second = level_set(window, kind, l);
  out.products = all_products(out.first, out.second);
  return out;
}

TrilinearInstance trilinear_instance(const ProductTable& table, std::size_t m, double r) {
  const auto kind = table.kind;
  return build_instance(table.first, table.second, table.products, r,
                        [&](const NormalForm& g) { return level_of(g, kind) == m; });
}

RatioEstimate trilinear_ratio(const ProductTable& table, std::size_t m, double r,
                              const PowerIterationOptions& options) {
  const auto instance = trilinear_instance(table, m, r);
  if (table.first.empty() && table.second.empty()) {
    throw PreconditionError("both level sets are empty; no graph to bind");
  }
  const auto& graph = table.first.empty() ? table.second.front().graph() : table.first.front().graph();
  return estimate(graph, instance, options);
}

RatioEstimate trilinear_ratio(const Window& window, LevelKind kind, std::size_t k, std::size_t l,
                              std::size_t m, double r, const PowerIterationOptions& options) {
  const auto table = product_table(window, kind, k, l);
  if (table.first.empty() && table.second.empty()) {
    return {0.0, true, 0, GroupFunction(window.graph()), GroupFunction(window.graph())};
  }
  return trilinear_ratio(table, m, r, options);
}

VanishingReport vanishing_check(const Window& window, std::size_t k_max, std::size_t l_max,
                                std::size_t trials, std::uint64_t seed) {
  VanishingReport report;
  const auto& graph = window.graph();
  for (auto kind : {LevelKind::Lambda, LevelKind::Ell}) {
    for (std::size_t k = 0; k <= k_max; ++k) {
      for (std::size_t l = 0; l <= l_max; ++l) {
        if (kind == LevelKind::Ell && !(window.covers_ell_level(k) && window.covers_ell_level(l))) {
          continue;
        }
        const auto first = level_set(window, kind, k);
        const auto second = level_set(window, kind, l);
        if (first.empty() || second.empty()) {
          continue;
        }
        const auto low = k > l ? k - l : l - k;
        const auto high = k + l;
        std::mt19937_64 rng(mix(mix(seed, static_cast<std::uint64_t>(kind)), k * 1000 + l));
        for (std::size_t t = 0; t < trials; ++t) {
          const auto phi = random_function(graph, first, rng);
          const auto psi = random_function(graph, second, rng);
          const auto product = convolve(phi, psi);
          std::size_t top = high + 1;
          for (const auto& [g, value] : product.values()) {
            top = std::max(top, level_of(g, kind));
          }
          for (std::size_t m = 0; m <= top; ++m) {
            if (m >= low && m <= high) {
              continue;
            }
            ++report.checks;
            const double norm = l2_norm(restrict_level(product, kind, m));
            if (norm != 0.0) {
              ++report.violations;
              report.failures.push_back(std::string(kind == LevelKind::Lambda ? "lambda" : "ell") +
                                        " k=" + std::to_string(k) + " l=" + std::to_string(l) +
                                        " m=" + std::to_string(m) + " norm=" + real_text(norm));
            }
          }
        }
        if (kind != LevelKind::Lambda) {
          continue;
        }
        bool found = false;
        for (const auto& g : first) {
          for (const auto& h : second) {
            const auto gh = multiply(g, h);
            if (gh.syllable_length() == high) {
              const auto witness =
                  restrict_by_lambda(convolve(GroupFunction::delta(g), GroupFunction::delta(h)), high);
              found = !witness.is_zero();
              break;
            }
          }
          if (found) {
            break;
          }
        }
        found ? ++report.boundary_witnesses : ++report.boundary_missing;
      }
    }
  }
  return report;
}

GrowthFit fit_growth(std::span<const GrowthPoint> points) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& p : points) {
    if (p.k <= 1) {
      continue;
    }
    if (!(p.ratio > 0.0) || !std::isfinite(p.ratio)) {
      throw PreconditionError("growth fit needs positive finite ratios; got " + real_text(p.ratio) +
                              " at k = " + std::to_string(p.k));
    }
    xs.push_back(std::log(static_cast<double>(p.k) + 1.0));
    ys.push_back(std::log(p.ratio));
  }
  if (xs.size() < 4) {
    throw PreconditionError("growth fit needs at least 4 points with k >= 2; got " +
                            std::to_string(xs.size()));
  }
  const auto n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  GrowthFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.points = xs.size();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    fit.residuals.push_back(ys[i] - (fit.intercept + fit.slope * xs[i]));
  }
  return fit;
}

std::vector<GrowthPoint> envelope(std::span<const GrowthPoint> points) {
  std::vector<GrowthPoint> sorted(points.begin(), points.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const GrowthPoint& a, const GrowthPoint& b) { return a.k < b.k; });
  double running = 0.0;
  for (auto& p : sorted) {
    running = std::max(running, p.ratio);
    p.ratio = running;
  }
  return sorted;
}

RdConstants clique_rd_constants(const Window& window, Clique J, const ConstantsOptions& options) {
  const auto& graph = window.graph();
  if (!graph.is_clique(J)) {
    throw PreconditionError("vertex set " + J.to_string() + " is not a clique");
  }
  if (options.r_grid.empty()) {
    throw PreconditionError("r grid is empty");
  }
  auto grid = options.r_grid;
  std::sort(grid.begin(), grid.end());
  if (grid.front() < 0.0) {
    throw PreconditionError("r grid values must be non-negative");
  }
  if (window.spec().lambda_max < J.size()) {
    throw PreconditionError("lambda_max = " + std::to_string(window.spec().lambda_max) +
                            " is below the clique size " + std::to_string(J.size()));
  }
  const auto elements = window.clique_elements(J);
  bool finite = true;
  std::uint64_t order = 1;
  for (auto v : J.vertices()) {
    const auto& group = graph.groups()[v];
    finite = finite && group.is_finite();
    if (group.is_finite()) {
      order *= static_cast<std::uint64_t>(group.order());
    }
  }
  if (finite && elements.size() != order) {
    throw PreconditionError("window holds " + std::to_string(elements.size()) + " of the " +
                            std::to_string(order) + " elements of G_" + J.to_string());
  }

  RdConstants out;
  out.clique = J;
  out.ell_max = finite ? 0 : window.spec().ell_max;
  const auto products = all_products(elements, elements);
  auto c_at = [&](const std::vector<NormalForm>& part, const std::vector<ProductTable::Product>& table,
                  double r) {
    const auto instance = build_instance(part, part, table, r, [](const NormalForm&) { return true; });
    const auto result = estimate(graph, instance, options.power);
    out.samples += result.samples;
    return result.value;
  };
  if (finite) {
    out.r = grid.front();
    out.c = c_at(elements, products, out.r);
    out.stable = true;
    return out;
  }
  std::vector<NormalForm> half;
  for (const auto& g : elements) {
    if (g.ell() <= window.spec().ell_max / 2) {
      half.push_back(g);
    }
  }
  const auto half_products = all_products(half, half);
  for (auto r : grid) {
    const double full = c_at(elements, products, r);
    const double reduced = c_at(half, half_products, r);
    out.r = r;
    out.c = full;
    if (full <= (1.0 + options.stability_tolerance) * reduced) {
      out.stable = true;
      return out;
    }
  }
  out.stable = false;
  return out;
}

ConstantsSummary rd_constants_max(const Window& window, const ConstantsOptions& options) {
  ConstantsSummary out;
  out.global.stable = true;
  out.global.ell_max = window.caps_ell() ? window.spec().ell_max : 0;
  for (const auto& J : window.graph().cliques()) {
    auto constants = clique_rd_constants(window, J, options);
    out.global.c = std::max(out.global.c, constants.c);
    out.global.r = std::max(out.global.r, constants.r);
    out.global.stable = out.global.stable && constants.stable;
    out.global.samples += constants.samples;
    out.per_clique.push_back(std::move(constants));
  }
  return out;
}

PropositionRow proposition_check(const ProductTable& table, std::size_t m,
                                 const RdConstants& constants, std::size_t trials,
                                 const PowerIterationOptions& options) {
  PropositionRow row;
  row.k = table.k;
  row.l = table.l;
  row.m = m;
  row.bound = constants.c;
  if (table.first.empty() || table.second.empty()) {
    row.empty = true;
    return row;
  }
  const auto& graph = table.first.front().graph();
  const auto best = trilinear_ratio(table, m, constants.r, options);
  row.samples = best.samples;
  row.ratio = best.value;
  auto consider = [&](const GroupFunction& phi, const GroupFunction& psi) {
    const double ratio = observed_ratio(phi, psi, table.kind, m, constants.r);
    if (ratio > row.ratio) {
      row.ratio = ratio;
    }
    if (ratio > row.bound * (1.0 + kRelativeSlack) && !row.violated) {
      row.violated = true;
      nlohmann::json witness{{"phi", to_json(phi)}, {"psi", to_json(psi)}};
      row.witness = witness.dump();
    }
  };
  consider(best.phi, best.psi);
  std::mt19937_64 rng(mix(options.seed, 0x5eed));
  for (std::size_t t = 0; t < trials; ++t) {
    const auto phi = random_function(graph, table.first, rng);
    const auto psi = random_function(graph, table.second, rng);
    consider(phi, psi);
  }
  row.samples += trials;
  if (row.ratio > row.bound * (1.0 + kRelativeSlack) && !row.violated) {
    row.violated = true;
    nlohmann::json witness{{"phi", to_json(best.phi)}, {"psi", to_json(best.psi)}};
    row.witness = witness.dump();
  }
  return row;
}

std::string to_string(ScanMode mode) {
  switch (mode) {
    case ScanMode::LambdaPlain:
      return "lambda-plain";
    case ScanMode::LambdaSobolev:
      return "lambda-sobolev";
    case ScanMode::EllPlain:
      return "ell-plain";
  }
  return "unknown";
}

ScanReport rd_scan(const Window& window, const ScanOptions& options) {
  const auto& spec = window.spec();
  if (options.k_max > spec.lambda_max || options.l_max > spec.lambda_max) {
    throw PreconditionError("scan range k_max = " + std::to_string(options.k_max) +
                            ", l_max = " + std::to_string(options.l_max) +
                            " exceeds lambda_max = " + std::to_string(spec.lambda_max));
  }
  ScanReport report;
  report.constants = rd_constants_max(window, options.constants);
  const auto& constants = report.constants.global;

  auto row_options = [&](std::uint64_t row_seed) {
    auto power = options.constants.power;
    power.seed = row_seed;
    power.threads = options.threads;
    return power;
  };
  auto row_seed = [&](std::size_t k, std::size_t l, std::size_t m, ScanMode mode) {
    return mix(mix(mix(mix(options.seed, k), l), m), static_cast<std::uint64_t>(mode));
  };

  std::map<std::size_t, double> envelope_input;
  std::map<std::pair<long, long>, std::vector<GrowthPoint>> family_points;
  for (std::size_t k = 0; k <= options.k_max; ++k) {
    envelope_input[k] = 0.0;
    for (std::size_t l = 0; l <= options.l_max; ++l) {
      const auto lambda_table = product_table(window, LevelKind::Lambda, k, l);
      const auto low = k > l ? k - l : l - k;
      for (std::size_t m = low; m <= k + l; ++m) {
        {
          ScanRow row;
          row.k = k;
          row.l = l;
          row.m = m;
          row.mode = ScanMode::LambdaPlain;
          row.seed = row_seed(k, l, m, row.mode);
          if (lambda_table.first.empty() || lambda_table.second.empty()) {
            row.empty = true;
          } else {
            const auto est = trilinear_ratio(lambda_table, m, 0.0, row_options(row.seed));
            row.ratio = est.value;
            row.samples = est.samples;
            row.empty = est.empty;
          }
          envelope_input[k] = std::max(envelope_input[k], row.ratio);
          family_points[{static_cast<long>(l) - static_cast<long>(k),
                         static_cast<long>(m) - static_cast<long>(low)}]
              .push_back({k, row.ratio});
          report.rows.push_back(std::move(row));
        }
        {
          ScanRow row;
          row.k = k;
          row.l = l;
          row.m = m;
          row.mode = ScanMode::LambdaSobolev;
          row.seed = row_seed(k, l, m, row.mode);
          const auto checked = proposition_check(lambda_table, m, constants, options.trials,
                                                 row_options(row.seed));
          row.ratio = checked.ratio;
          row.bound = checked.bound;
          row.samples = checked.samples;
          row.empty = checked.empty;
          row.violated = checked.violated;
          row.witness = checked.witness;
          report.violations += row.violated ? 1 : 0;
          report.rows.push_back(std::move(row));
        }
      }
      if (!(window.covers_ell_level(k) && window.covers_ell_level(l))) {
        continue;
      }
      const auto ell_table = product_table(window, LevelKind::Ell, k, l);
      const double bound = constants.c * std::sqrt(static_cast<double>(k) + 1.0) *
                           (2.0 * static_cast<double>(k) + 1.0) *
                           std::pow(1.0 + static_cast<double>(k), constants.r);
      for (std::size_t m = low; m <= k + l; ++m) {
        ScanRow row;
        row.k = k;
        row.l = l;
        row.m = m;
        row.mode = ScanMode::EllPlain;
        row.seed = row_seed(k, l, m, row.mode);
        row.bound = bound;
        if (ell_table.first.empty() || ell_table.second.empty()) {
          row.empty = true;
        } else {
          const auto est = trilinear_ratio(ell_table, m, 0.0, row_options(row.seed));
          row.ratio = est.value;
          row.samples = est.samples;
          row.empty = est.empty;
          if (row.ratio > bound * (1.0 + kRelativeSlack)) {
            row.violated = true;
            nlohmann::json witness{{"phi", to_json(est.phi)}, {"psi", to_json(est.psi)}};
            row.witness = witness.dump();
            ++report.violations;
          }
        }
        report.rows.push_back(std::move(row));
      }
    }
  }

  std::vector<GrowthPoint> raw;
  for (const auto& [k, ratio] : envelope_input) {
    raw.push_back({k, ratio});
  }
  report.envelope_points = envelope(raw);
  try {
    report.envelope_fit = fit_growth(report.envelope_points);
  } catch (const PreconditionError&) {
    report.envelope_fit.reset();
  }
  for (const auto& [key, points] : family_points) {
    FamilyFit family;
    family.dl = key.first;
    family.dm = key.second;
    try {
      family.fit = fit_growth(points);
    } catch (const PreconditionError&) {
      family.fit.reset();
    }
    report.families.push_back(std::move(family));
  }
  return report;
}

std::string scan_csv(const ScanReport& report) {
  std::string out = "k,l,m,mode,ratio,bound,ratio_over_bound,samples,seed\n";
  for (const auto& row : report.rows) {
    out += std::to_string(row.k) + "," + std::to_string(row.l) + "," + std::to_string(row.m) + "," +
           to_string(row.mode) + "," + real_text(row.ratio) + ",";
    if (row.bound) {
      out += real_text(*row.bound) + "," + real_text(row.ratio / *row.bound);
    } else {
      out += "nan,nan";
    }
    out += "," + std::to_string(row.samples) + "," + std::to_string(row.seed) + "\n";
  }
  return out;
}

namespace {

nlohmann::json constants_json(const RdConstants& constants) {
  nlohmann::json out{{"c", constants.c},
                     {"r", constants.r},
                     {"stable", constants.stable},
                     {"ell_max", constants.ell_max},
                     {"samples", constants.samples}};
  out["clique"] = constants.clique ? nlohmann::json(constants.clique->to_string()) : nlohmann::json();
  return out;
}

nlohmann::json fit_json(const std::optional<GrowthFit>& fit) {
  if (!fit) {
    return nullptr;
  }
  return {{"slope", fit->slope},
          {"intercept", fit->intercept},
          {"points", fit->points},
          {"residuals", fit->residuals}};
}

}  // namespace

nlohmann::json scan_json(const ScanReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : report.rows) {
    nlohmann::json j{{"k", row.k},          {"l", row.l},       {"m", row.m},
                     {"mode", to_string(row.mode)}, {"ratio", row.ratio}, {"samples", row.samples},
                     {"seed", row.seed},    {"empty", row.empty}, {"violated", row.violated}};
    j["bound"] = row.bound ? nlohmann::json(*row.bound) : nlohmann::json();
    if (row.violated) {
      j["witness"] = nlohmann::json::parse(row.witness);
    }
    rows.push_back(std::move(j));
  }
  nlohmann::json cliques = nlohmann::json::array();
  for (const auto& c : report.constants.per_clique) {
    cliques.push_back(constants_json(c));
  }
  nlohmann::json families = nlohmann::json::array();
  for (const auto& f : report.families) {
    families.push_back({{"dl", f.dl}, {"dm", f.dm}, {"fit", fit_json(f.fit)}});
  }
  nlohmann::json env = nlohmann::json::array();
  for (const auto& p : report.envelope_points) {
    env.push_back({{"k", p.k}, {"ratio", p.ratio}});
  }
  return {{"rows", rows},
          {"constants", {{"global", constants_json(report.constants.global)}, {"cliques", cliques}}},
          {"envelope", env},
          {"envelope_fit", fit_json(report.envelope_fit)},
          {"families", families},
          {"violations", report.violations}};
}

}  // namespace graphprod
