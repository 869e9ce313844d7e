#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "measlab/borel_set.hpp"
#include "measlab/integration.hpp"
#include "measlab/measure.hpp"
#include "measlab/scalar_fn.hpp"
#include "measlab/test_functions.hpp"
#include "measlab/verdict.hpp"

namespace measlab {

struct CheckConfig {
  /// Relative tolerance of every limit statement (scaled by the mass scale).
  double tol = 1e-6;
  /// Dyadic resolution of the ring and of the test-function families.
  int resolution = 4;
  QuadratureConfig quad;
  std::vector<double> eps_grid = {1e-1, 1e-2, 1e-3, 1e-4};
  /// Empty means 2^(k/4) from 1 up to n_max / 2.
  std::vector<double> alpha_grid;
  int windows = 3;
  int window_divisor = 8;
  /// Masses at or below this count as zero.
  double zero_tol = 1e-12;
  std::uint64_t seed = 1;
  /// Random unit-ball directions added to the signed coordinate ones.
  int random_directions = 0;

  TrendConfig trend(double scale) const { return {tol, scale, windows, window_divisor}; }
};

/// One ε row of a uniformity table. δ is the largest admissible value found
/// on the ring (+inf when no ring set ever reaches ε).
struct UniformityRow {
  double eps = 0.0;
  Status status = Status::Inconclusive;
  double delta = 0.0;
  std::optional<Witness> witness;
  std::string note;
};

/// (ε, δ) table. δ is relative to the dyadic ring, so it may be larger than
/// the δ an exhaustive search over all Borel sets would find.
struct UniformityReport {
  std::string check;
  std::vector<UniformityRow> rows;
  Status overall = Status::Inconclusive;
  bool ring_relative = true;

  nlohmann::json to_json() const;
  /// Summary as a verdict; the witness is that of the first failing row.
  Verdict as_verdict() const;
};

/// Default ring: dyadic cells of the space, their complements and the atom
/// singletons of m, at the configured resolution.
std::vector<LabeledSet> default_ring(const Space& space, const FiniteMeasure& m, const CheckConfig& cfg);
/// Ω, the atom singletons of m and the closed dyadic cells.
std::vector<LabeledSet> default_closed_sets(const Space& space, const FiniteMeasure& m,
                                            const CheckConfig& cfg);
std::vector<double> default_alpha_grid(int n_max);

Verdict mass_convergence_check(const MeasureSequence& seq, const FiniteMeasure& m,
                               const CheckConfig& cfg = {});
Verdict vague_check(const MeasureSequence& seq, const FiniteMeasure& m, const CheckConfig& cfg = {});
Verdict vague_check(const MeasureSequence& seq, const FiniteMeasure& m, const FunctionFamily& fam,
                    const CheckConfig& cfg = {});
Verdict weak_check(const MeasureSequence& seq, const FiniteMeasure& m, const CheckConfig& cfg = {});
Verdict weak_check(const MeasureSequence& seq, const FiniteMeasure& m, const FunctionFamily& fam,
                   const CheckConfig& cfg = {});
Verdict setwise_check(const MeasureSequence& seq, const FiniteMeasure& m,
                      const std::vector<LabeledSet>& ring, const CheckConfig& cfg = {});
Verdict setwise_check(const MeasureSequence& seq, const FiniteMeasure& m, const CheckConfig& cfg = {});

UniformityReport uniform_abs_continuity(const MeasureSequence& seq, const FiniteMeasure& m,
                                        const std::vector<LabeledSet>& ring,
                                        const CheckConfig& cfg = {});
UniformityReport uniform_abs_continuity(const MeasureSequence& seq, const FiniteMeasure& m,
                                        const CheckConfig& cfg = {});

UniformityReport uac_integrals(const FunctionSequence& fseq, const MeasureSequence& seq,
                               const std::vector<LabeledSet>& ring, const CheckConfig& cfg = {});
UniformityReport uac_integrals(const FunctionSequence& fseq, const MeasureSequence& seq,
                               const CheckConfig& cfg = {});

Verdict uniform_integrability(const FunctionSequence& fseq, const MeasureSequence& seq,
                              const CheckConfig& cfg = {});
Verdict ui_equivalence_check(const FunctionSequence& fseq, const MeasureSequence& seq,
                             const CheckConfig& cfg = {});

Verdict portmanteau_check(const MeasureSequence& seq, const FiniteMeasure& m,
                          const std::vector<LabeledSet>& closed_sets, const CheckConfig& cfg = {});
Verdict portmanteau_check(const MeasureSequence& seq, const FiniteMeasure& m, const CheckConfig& cfg = {});

/// Uniform absolute continuity plus vague convergence imply weak convergence.
Verdict prop_pw_verify(const MeasureSequence& seq, const FiniteMeasure& m, const CheckConfig& cfg = {});
/// m_n <= m plus vague convergence imply ∫_A f dm_n -> ∫_A f dm on the ring.
Verdict prop_L4_verify(const MeasureSequence& seq, const FiniteMeasure& m, const ScalarFn& f,
                       const std::vector<LabeledSet>& ring, const CheckConfig& cfg = {});
Verdict prop_L4_verify(const MeasureSequence& seq, const FiniteMeasure& m, const ScalarFn& f,
                       const CheckConfig& cfg = {});

/// ∫_A f_n dm_n -> ∫_A f dm on Ω, on closed dyadic cells and on the ring,
/// after the hypothesis battery.
Verdict vitali_verify(const FunctionSequence& fseq, const ScalarFn& f, const MeasureSequence& seq,
                      const FiniteMeasure& m, const std::vector<LabeledSet>& ring,
                      const CheckConfig& cfg = {});
Verdict vitali_verify(const FunctionSequence& fseq, const ScalarFn& f, const MeasureSequence& seq,
                      const FiniteMeasure& m, const CheckConfig& cfg = {});
/// The same with f in C_b; the integral condition on f follows from its bound.
Verdict vitali_cb_verify(const FunctionSequence& fseq, const ScalarFn& f, const MeasureSequence& seq,
                         const FiniteMeasure& m, const std::vector<LabeledSet>& ring,
                         const CheckConfig& cfg = {});
Verdict vitali_cb_verify(const FunctionSequence& fseq, const ScalarFn& f, const MeasureSequence& seq,
                         const FiniteMeasure& m, const CheckConfig& cfg = {});
/// Runs vitali_verify on positive and negative parts; both must agree with
/// the verdict on (f_n, f).
Verdict vitali_pm_verify(const FunctionSequence& fseq, const ScalarFn& f, const MeasureSequence& seq,
                         const FiniteMeasure& m, const std::vector<LabeledSet>& ring,
                         const CheckConfig& cfg = {});
Verdict vitali_pm_verify(const FunctionSequence& fseq, const ScalarFn& f, const MeasureSequence& seq,
                         const FiniteMeasure& m, const CheckConfig& cfg = {});

/// m({|f_n - f| > eps}) -> 0.
Verdict convergence_in_measure_check(const FunctionSequence& fseq, const ScalarFn& f,
                                     const FiniteMeasure& m, double eps, const CheckConfig& cfg = {});

/// Sample points used for m-a.e. statements: atoms of m, plus midpoints of a
/// regular grid inside every density piece.
std::vector<Point> ae_sample_points(const FiniteMeasure& m, int per_axis = 64);

/// Mass scale of an instance: the largest total mass among m and the m_n
/// (1 when all vanish).
double mass_scale(const MeasureSequence& seq, const FiniteMeasure& m);

}  // namespace measlab
