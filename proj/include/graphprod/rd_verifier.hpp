#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "graphprod/group_function.hpp"
#include "graphprod/tensor_norm.hpp"

namespace graphprod {

/// Which length cuts the level sets: syllable length (Lambda_k) or weighted length (C_k).
enum class LevelKind { Lambda, Ell };

/// Level set k of the window. Ell levels must be fully covered by the window.
std::vector<NormalForm> level_set(const Window& window, LevelKind kind, std::size_t k);

/// Every product g1 g2 with g1 in level k and g2 in level l, indexed into both levels.
struct ProductTable {
  struct Product {
    std::uint32_t i;
    std::uint32_t j;
    NormalForm g;
  };
  LevelKind kind = LevelKind::Lambda;
  std::size_t k = 0;
  std::size_t l = 0;
  std::vector<NormalForm> first;
  std::vector<NormalForm> second;
  std::vector<Product> products;
};

ProductTable product_table(const Window& window, LevelKind kind, std::size_t k, std::size_t l);

/// The 0/1 tensor T[g1, g2, g] = [g1 g2 = g] over (level k) x (level l) x (level m),
/// with the first mode scaled by (1 + ell(g1))^-r so that unit vectors in the
/// first mode are unit vectors of the order-r Sobolev norm.
struct TrilinearInstance {
  std::vector<NormalForm> first;
  std::vector<NormalForm> second;
  std::vector<NormalForm> third;
  std::vector<double> first_weights;
  SparseTensor3 tensor;
};

TrilinearInstance trilinear_instance(const ProductTable& table, std::size_t m, double r);

struct RatioEstimate {
  double value = 0.0;
  /// Set when one of the level sets is empty; value is then 0.
  bool empty = false;
  std::size_t samples = 0;
  /// Maximising inputs: unit Sobolev norm for phi, unit l2 norm for psi.
  GroupFunction phi;
  GroupFunction psi;
};

/// sup ||(phi * psi)_m||_2 over ||phi||_{2,r,ell} = ||psi||_2 = 1 with phi on
/// level k and psi on level l (r = 0 is the plain l2 case). The estimate is
/// attained by the returned functions, so it never exceeds the true sup.
RatioEstimate trilinear_ratio(const ProductTable& table, std::size_t m, double r,
                              const PowerIterationOptions& options);
RatioEstimate trilinear_ratio(const Window& window, LevelKind kind, std::size_t k, std::size_t l,
                              std::size_t m, double r, const PowerIterationOptions& options);

struct VanishingReport {
  std::size_t checks = 0;
  std::size_t violations = 0;
  /// (k, l) pairs where some delta_g * delta_h reaches level k + l.
  std::size_t boundary_witnesses = 0;
  /// (k, l) pairs with both levels nonempty but no product at level k + l.
  std::size_t boundary_missing = 0;
  std::vector<std::string> failures;
};

/// For random phi on level k and psi on level l (k <= k_max, l <= l_max),
/// checks that (phi * psi)_m is exactly zero for m outside [|k-l|, k+l].
/// Lambda levels are always checked; ell levels wherever the window covers them.
VanishingReport vanishing_check(const Window& window, std::size_t k_max, std::size_t l_max,
                                std::size_t trials, std::uint64_t seed);

struct GrowthPoint {
  std::size_t k = 0;
  double ratio = 0.0;
};

struct GrowthFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<double> residuals;
  std::size_t points = 0;
};

/// Least-squares fit of log(ratio) against log(k + 1) over the points with k >= 2.
/// Needs at least 4 such points, all with positive ratio.
GrowthFit fit_growth(std::span<const GrowthPoint> points);

/// Running maximum of the ratios in k order.
std::vector<GrowthPoint> envelope(std::span<const GrowthPoint> points);

struct RdConstants {
  double c = 1.0;
  double r = 0.0;
  /// Clique the constants were computed for; unset for the maximum over cliques.
  std::optional<Clique> clique;
  bool stable = true;
  Length ell_max = 0;
  std::size_t samples = 0;
};

struct ConstantsOptions {
  std::vector<double> r_grid{0.0, 0.5, 1.0, 1.5, 2.0, 3.0};
  double stability_tolerance = 0.1;
  PowerIterationOptions power;
};

/**
 * Empirical (c_J, r_J) for the clique subgroup G_J.
 *
 * For each r in the grid, c(r) is the trilinear estimate of
 * ||alpha * beta||_2 / (||alpha||_{2,r,ell_J} ||beta||_2) over alpha, beta in
 * the window part of G_J. Finite G_J must lie entirely in the window and take
 * the first grid value. For infinite G_J, r is accepted once c(r) on the full
 * ell window is at most (1 + tolerance) times c(r) on the half window.
 * Without such an r the last grid point is reported with stable = false.
 */
RdConstants clique_rd_constants(const Window& window, Clique J, const ConstantsOptions& options);

/// c = max c_J and r = max r_J over every clique, with the per-clique values.
struct ConstantsSummary {
  RdConstants global;
  std::vector<RdConstants> per_clique;
};
ConstantsSummary rd_constants_max(const Window& window, const ConstantsOptions& options);

struct PropositionRow {
  std::size_t k = 0;
  std::size_t l = 0;
  std::size_t m = 0;
  double ratio = 0.0;
  double bound = 0.0;
  std::size_t samples = 0;
  bool empty = false;
  bool violated = false;
  /// Serialized maximising pair when violated.
  std::string witness;
};

/// Checks ||(phi_(k) * psi_(l))_(m)||_2 <= c ||phi_(k)||_{2,r,ell} ||psi_(l)||_2 on the
/// estimator's maximiser and on `trials` random pairs, all evaluated by convolution.
/// A row is violated when ratio / bound exceeds 1 + 1e-9.
PropositionRow proposition_check(const ProductTable& table, std::size_t m,
                                 const RdConstants& constants, std::size_t trials,
                                 const PowerIterationOptions& options);

enum class ScanMode { LambdaPlain, LambdaSobolev, EllPlain };
std::string to_string(ScanMode mode);

struct ScanRow {
  std::size_t k = 0;
  std::size_t l = 0;
  std::size_t m = 0;
  ScanMode mode = ScanMode::LambdaPlain;
  double ratio = 0.0;
  std::optional<double> bound;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  bool empty = false;
  bool violated = false;
  std::string witness;
};

struct FamilyFit {
  long dl = 0;  // l - k
  long dm = 0;  // m - |k - l|
  std::optional<GrowthFit> fit;
};

struct ScanOptions {
  std::size_t k_max = 4;
  std::size_t l_max = 4;
  std::size_t trials = 4;
  std::uint64_t seed = 42;
  std::size_t threads = 1;
  ConstantsOptions constants;
};

struct ScanReport {
  std::vector<ScanRow> rows;
  ConstantsSummary constants;
  /// Fit of the running maximum over k of the lambda-plain ratios.
  std::optional<GrowthFit> envelope_fit;
  std::vector<GrowthPoint> envelope_points;
  std::vector<FamilyFit> families;
  std::size_t violations = 0;
};

/// Lambda-plain, lambda-Sobolev (checked against the global constants) and
/// ell-plain rows for k <= k_max, l <= l_max and every admissible m.
/// Ell rows are bounded by c sqrt(k+1) (2k+1) (1+k)^r.
ScanReport rd_scan(const Window& window, const ScanOptions& options);

/// Columns k,l,m,mode,ratio,bound,ratio_over_bound,samples,seed.
std::string scan_csv(const ScanReport& report);
nlohmann::json scan_json(const ScanReport& report);

}  // namespace graphprod
