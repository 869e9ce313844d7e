#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace measlab {

enum class Status { Supported, Refuted, Inconclusive };

std::string to_string(Status s);
Status parse_status(const std::string& s);

/// What a REFUTED verdict points at.
struct Witness {
  std::string kind;   // "set", "function", "index", "direction", "hypothesis", ...
  std::string label;
  int index = 0;      // sequence index the values refer to (0 when not applicable)
  double value = 0.0;
  double reference = 0.0;

  std::string to_string() const;
};

/// Finite-prefix reading of "lim_n e_n = 0" for a nonnegative error series.
struct TrendConfig {
  double tol = 1e-6;
  /// Multiplies tol; typically the mass scale of the instance.
  double scale = 1.0;
  int windows = 3;
  int window_divisor = 8;
};

struct TrendResult {
  Status status = Status::Inconclusive;
  /// Mean of the last window.
  double final_mean = 0.0;
  /// Extrapolated limit of the window means (may be ±inf).
  double limit = 0.0;
  std::vector<double> means;
  bool nonincreasing = false;
  /// "below_tol", "extrapolated", "stabilized" or the reason for INCONCLUSIVE.
  std::string basis;
};

/// Classifies an error series indexed 1..N.
///
/// The tail is cut into W windows of size max(1, N / divisor). SUPPORTED when
/// the window means do not increase and either the last mean is below tol or
/// a power-law fit L + C·n^-p through the three last means extrapolates to
/// a limit below tol. REFUTED when the stabilized lower bound of the limit
/// exceeds tol. INCONCLUSIVE otherwise, and whenever N < 8.
TrendResult classify_trend(const std::vector<double>& errors, const TrendConfig& cfg);

/// True when a nonnegative series looks bounded: flat, decreasing, or growing
/// with decelerating increments faster than logarithmic growth would allow.
bool looks_bounded(const std::vector<double>& values, const TrendConfig& cfg);

struct Verdict {
  std::string check;
  Status status = Status::Inconclusive;
  std::optional<Witness> witness;
  /// Error per index (or per grid point for α- and ε-indexed checks).
  std::vector<double> trend;
  double final_error = 0.0;
  std::string basis;
  std::string note;
  std::vector<Verdict> sub;

  const Verdict* find_sub(const std::string& name) const;
  nlohmann::json to_json() const;
};

/// Fills status, final_error and basis of `v` from its trend.
void apply_trend(Verdict& v, const TrendConfig& cfg);

}  // namespace measlab
