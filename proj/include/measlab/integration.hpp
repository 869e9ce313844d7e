#pragma once

#include <optional>
#include <string>

#include "measlab/borel_set.hpp"
#include "measlab/measure.hpp"
#include "measlab/scalar_fn.hpp"

namespace measlab {

struct QuadratureConfig {
  /// Midpoint subdivision level: 2^depth cells per axis of each piece.
  int depth = 8;
  /// Mass below which superlevel boundary cells stop splitting.
  double tolerance = 1e-12;
  /// Total dyadic levels allowed when resolving superlevel boundaries.
  int superlevel_depth_cap = 20;
  /// Upper limit on log2 of the sample count per piece (depth is reduced in
  /// higher dimension to respect it).
  int max_points_log2 = 16;
};

/// value ± error. `certified` marks an a-priori bound derived from declared
/// Lipschitz or curvature data; otherwise the error is a refinement estimate,
/// and `converged` is false when successive refinements do not settle.
struct IntegralResult {
  double value = 0.0;
  double error = 0.0;
  bool certified = true;
  bool converged = true;
};

/// ∫_A f dm.
IntegralResult integrate(const ScalarFn& f, const FiniteMeasure& m, const BorelSet& A,
                         const QuadratureConfig& q = {});
/// ∫_Ω f dm.
IntegralResult integrate(const ScalarFn& f, const FiniteMeasure& m, const QuadratureConfig& q = {});

IntegralResult integrate_abs(const ScalarFn& f, const FiniteMeasure& m, const BorelSet& A,
                             const QuadratureConfig& q = {});
IntegralResult integrate_abs(const ScalarFn& f, const FiniteMeasure& m,
                             const QuadratureConfig& q = {});

/// ∫_A f dm (or ∫_A |f| dm) for each f in fs; one membership pass over the
/// atoms serves every integrand.
std::vector<IntegralResult> integrate_many(const std::vector<ScalarFn>& fs, const FiniteMeasure& m,
                                           const BorelSet& A, bool absolute = false,
                                           const QuadratureConfig& q = {});

/// ∫_{|f| > alpha} |f| dm over the whole space.
IntegralResult superlevel_integral(const ScalarFn& f, const FiniteMeasure& m, double alpha,
                                   const QuadratureConfig& q = {});
/// m({|f| > alpha}).
IntegralResult superlevel_mass(const ScalarFn& f, const FiniteMeasure& m, double alpha,
                               const QuadratureConfig& q = {});

/// Numerical stand-in for f ∈ L¹(m): ∫|f| dm is finite and its refinement
/// sequence settles.
struct L1Report {
  bool integrable = false;
  double value = 0.0;
  double error = 0.0;
  std::string note;
};

L1Report l1_surrogate(const ScalarFn& f, const FiniteMeasure& m, const QuadratureConfig& q = {});

/// Upper bound on sup |f| over the space when one can be established: the
/// declared bound, exact corner values for affine maps, or a Lipschitz-padded
/// sample maximum on a compact box.
std::optional<double> sup_on(const ScalarFn& f, const Space& space, const QuadratureConfig& q = {});

}  // namespace measlab
