#pragma once

// Building blocks shared by the scalar and the multivalued checkers.

#include <functional>
#include <string>
#include <vector>

#include "measlab/convergence.hpp"

namespace measlab::detail {

/// Error series of several members (functions, sets, set-direction pairs)
/// over n = 1..N.
struct Series {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> err;
  std::vector<std::vector<double>> val;
  std::vector<std::vector<double>> ref;

  void resize(std::size_t members, int n_max) {
    err.assign(members, std::vector<double>(static_cast<std::size_t>(n_max), 0.0));
    val = err;
    ref = err;
  }
  void set(std::size_t k, int n, double value, double reference, double error) {
    const auto i = static_cast<std::size_t>(n - 1);
    val[k][i] = value;
    ref[k][i] = reference;
    err[k][i] = error;
  }
  void set(std::size_t k, int n, double value, double reference) {
    set(k, n, value, reference, value > reference ? value - reference : reference - value);
  }
};

/// Largest error over members per index and one trend decision on it. A member
/// that settles on a positive plateau refutes even when the envelope decays.
/// The witness is that member, else the one with the largest final-window
/// mean (first one on ties).
Verdict aggregate(const std::string& check, const Series& s, const std::string& kind,
                  const TrendConfig& tc);
Verdict simple(const std::string& check, Status st, const std::string& note);
Status combine_all(const std::vector<Status>& st);
/// Hypotheses first: any hypothesis that is not SUPPORTED turns the verdict
/// into INCONCLUSIVE ("not applicable"), with the conclusions kept as subs.
Verdict gated(const std::string& check, std::vector<Verdict> hyps, std::vector<Verdict> conclusions);
Verdict bounded_verdict(const std::string& check, std::vector<double> values, const TrendConfig& tc);

std::vector<double> totals(const MeasureSequence& seq);
void require_same_space(const MeasureSequence& seq, const FiniteMeasure& m);
void require_ranges(const FunctionSequence& fseq, const MeasureSequence& seq);
std::vector<Point> sorted_unique(std::vector<Point> p);
double integral_scale(const FunctionSequence& fseq, const MeasureSequence& seq, const CheckConfig& cfg);

/// Cells between consecutive break coordinates of f inside Ω (none when f
/// has no interior breaks or more than `cap` cells would result).
std::vector<LabeledSet> break_cells(const ScalarFn& f, const Space& space, std::size_t cap = 64);

/// ∫_A f_n dm_n against ∫_A f dm on each labeled set.
Series integral_series(const FunctionSequence& fseq, const ScalarFn& f, const MeasureSequence& seq,
                       const FiniteMeasure& m, const std::vector<LabeledSet>& sets,
                       const CheckConfig& cfg);

/// A set offered to the δ search at some index: `control` is the mass that
/// must be small (m(E) or m_n(A)), `effect` the quantity that must stay
/// below ε (m_n(E) or an integral over A).
struct Candidate {
  std::string label;
  double control;
  double effect;
  double volume;
};

/// Builds the (ε, δ) table from δ*_n(ε) = min{control : effect >= ε}.
UniformityReport uniformity(const std::string& check, int n_max,
                            const std::function<std::vector<Candidate>(int)>& candidates,
                            double scale, const CheckConfig& cfg);

}  // namespace measlab::detail
