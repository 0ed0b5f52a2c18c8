#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coarse/approx.hpp"
#include "coarse/covering.hpp"
#include "coarse/quasi_local.hpp"

namespace coarse {

// ---------------------------------------------------------------------------
// Rigidity round-trip: map -> covering unitary -> approximating relations ->
// recovered maps, with every gap measured.

struct RoundtripOptions {
  CoveringOptions covering;
  ApproxParams approx{0.9, 0.0, 0.0, BoundedMode::maximal_cliques};
  /// Success threshold for every gap; negative means 2 * spill + r + R.
  Radius tolerance = -1.0;
};

struct RoundtripReport {
  Radius spill = 0.0;
  ApproxParams params;
  Radius recovered_gap = kInfinity;
  Radius inverse_gap_x = kInfinity;
  Radius inverse_gap_y = kInfinity;
  Radius surjectivity_radius = kInfinity;
  Radius tolerance = 0.0;
  bool success = false;
  /// Phi_delta[U] and Phi_delta[U^*] as extracted maps.
  std::optional<CoarseMapRep> forward;
  std::optional<CoarseMapRep> backward;
  /// Pairs (y, x) of Phi_delta[U] with y at infinite distance from f(x).
  std::size_t cross_component_pairs = 0;
};

RoundtripReport roundtrip(const CoarseMapRep& f, const ModulePtr& source,
                          const ModulePtr& target, const RoundtripOptions& options);

// ---------------------------------------------------------------------------
// Sign patterns: sup over signs of ||sum e_i v_i||^2 >= sum ||v_i||^2.

inline constexpr std::size_t kExhaustiveSignLimit = 20;

struct ParallelogramResult {
  std::vector<int> signs;
  double lhs = 0.0;
  double sum_of_squares = 0.0;
  bool exhaustive = false;
  /// lhs >= sum_of_squares (up to rounding).
  bool satisfied = false;
};

enum class SignSearch { automatic, exhaustive, greedy };

/// Exhaustive for up to kExhaustiveSignLimit vectors (automatic mode), greedy
/// otherwise. Greedy picks each sign so the cross term with the running sum
/// is nonnegative, which already meets the bound.
ParallelogramResult parallelogram_bound(const std::vector<CVector>& vs,
                                        SignSearch search = SignSearch::automatic);

// ---------------------------------------------------------------------------
// Concentration inequality checker.

inline constexpr std::size_t kExhaustivePartitionLimit = 20;

struct ConcentrationParams {
  double eps = 0.0;
  /// Unset values are computed exactly from T.
  std::optional<double> eta;
  std::optional<double> kappa;
  std::optional<double> delta;
};

struct ConcentrationWitness {
  /// Indices into the partition.
  std::vector<int> parts;
  /// ||χ_{Y \ C} T χ_J T^* χ_B||
  double achieved = 0.0;
  double bound = 0.0;
};

struct ConcentrationReport {
  double eta = 0.0;
  double kappa = 0.0;
  double delta = 0.0;
  double eta_exact = 0.0;
  double kappa_exact = 0.0;
  double delta_exact = 0.0;
  double operator_norm = 0.0;
  /// kappa^2 (eta^2 - delta^2)^{1/2} / (2 ||T||)
  double bound = 0.0;
  double eps = 0.0;
  bool exhaustive = false;
  /// Largest far-norm seen (over all J in exhaustive mode).
  double best_achieved = 0.0;
  std::optional<ConcentrationWitness> witness;
  /// Hypotheses held, eps was admissible, and no J exceeded eps.
  bool counterexample = false;
};

/// Verifies the hypotheses (throws Error("hypothesis_violation") naming the
/// failed inequality), then searches J for a partial sum of conjugated
/// partition projections that is not eps-quasi-local between B and Y \ C.
ConcentrationReport concentration_check(const ModuleOperator& t,
                                        const std::vector<PointSet>& partition,
                                        const PointSet& b, const PointSet& c,
                                        const ConcentrationParams& params);

// ---------------------------------------------------------------------------
// Uniformization probe and quasi-properness.

struct ProbeOptions {
  double eps = 0.5;
  std::vector<double> radii{0.0};
  int samples = 4;
  std::uint64_t seed = 0;
  AppParams app{60, 1e-9};
};

/// r -> least R (from the realized target distances) with
/// app(Ad(U)(t), R) <= eps ||t|| for every sampled contraction t of
/// propagation <= r and every basis matrix unit of propagation <= r.
Profile uniformization_probe(const ModuleOperator& u, const ProbeOptions& options);

/// s -> max over balls B = B(y, s) of the least a with
/// ||χ_B T χ_{X \ B(x0, a)}|| <= eps, x0 a heaviest source point for B
/// (ties resolved in favour of the smallest a).
Profile quasi_proper_profile(const ModuleOperator& t, double eps,
                             std::span<const double> grid);

/// ||χ_B T||, the mass of the image of T seen from B.
double image_mass(const ModuleOperator& t, const PointSet& b);

}  // namespace coarse
