#include "measlab/verdict.hpp"

#include <algorithm>
#include <cmath>

#include "measlab/error.hpp"
#include "measlab/geometry.hpp"
#include "measlab/numeric.hpp"

namespace measlab {

std::string to_string(Status s) {
  switch (s) {
    case Status::Supported: return "SUPPORTED";
    case Status::Refuted: return "REFUTED";
    case Status::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

Status parse_status(const std::string& s) {
  if (s == "SUPPORTED") return Status::Supported;
  if (s == "REFUTED") return Status::Refuted;
  if (s == "INCONCLUSIVE" || s == "NOT-APPLICABLE") return Status::Inconclusive;
  throw InvalidArgument("unknown verdict status '" + s + "'");
}

std::string Witness::to_string() const {
  std::string out;
  if (kind == "function")
    out = "g = " + label;
  else if (kind == "set")
    out = "A = " + label;
  else
    out = label;
  if (index > 0) out += " at n=" + std::to_string(index);
  if (value != 0.0 || reference != 0.0)
    out += ": " + format_number(value) + " vs " + format_number(reference);
  return out;
}

namespace {

struct Windows {
  std::vector<double> means;
  std::vector<double> centers;
};

Windows tail_windows(const std::vector<double>& e, int count, int divisor) {
  const int n = static_cast<int>(e.size());
  const int w = std::max(1, n / divisor);
  Windows out;
  for (int k = count - 1; k >= 0; --k) {
    const int hi = n - k * w;  // exclusive, 0-based
    const int lo = hi - w;
    CompensatedSum s;
    for (int i = lo; i < hi; ++i) s += e[static_cast<std::size_t>(i)];
    out.means.push_back(s.value() / w);
    out.centers.push_back(0.5 * ((lo + 1) + hi));
  }
  return out;
}

struct Rho {
  double l1, l2, l3;
  Rho(double c1, double c2, double c3) : l1(std::log(c1)), l2(std::log(c2)), l3(std::log(c3)) {}
  double operator()(double p) const {
    const double a = std::exp(-p * l1), b = std::exp(-p * l2), c = std::exp(-p * l3);
    return (a - b) / (b - c);
  }
};

constexpr double kPLow = 1e-3;
constexpr double kPHigh = 16.0;

/// Limit of L + C·c^-p through three (center, mean) pairs.
double extrapolate(const Windows& w, double slack) {
  const std::size_t k = w.means.size();
  const double m1 = w.means[k - 3], m2 = w.means[k - 2], m3 = w.means[k - 1];
  const double c1 = w.centers[k - 3], c2 = w.centers[k - 2], c3 = w.centers[k - 1];
  const double d1 = m1 - m2, d2 = m2 - m3;
  if (std::abs(d2) <= slack) return m3;
  if (d1 * d2 <= 0.0 || std::abs(d1) <= slack) return d2 > 0.0 && d1 >= -slack ? -kInf : m3;
  const double t = d1 / d2;
  const Rho rho(c1, c2, c3);
  if (t <= rho(kPLow)) return d2 > 0.0 ? -kInf : kInf;
  double p = kPHigh;
  if (t < rho(kPHigh)) {
    double lo = kPLow, hi = kPHigh;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (rho(mid) < t)
        lo = mid;
      else
        hi = mid;
    }
    p = 0.5 * (lo + hi);
  }
  const double b = std::exp(-p * rho.l2), c = std::exp(-p * rho.l3);
  return m3 - d2 * c / (b - c);
}

}  // namespace

TrendResult classify_trend(const std::vector<double>& errors, const TrendConfig& cfg) {
  TrendResult r;
  if (cfg.windows < 3) throw InvalidArgument("the trend criterion needs at least 3 windows");
  if (cfg.window_divisor < 1) throw InvalidArgument("window divisor must be >= 1");
  const int n = static_cast<int>(errors.size());
  const int w = std::max(1, n / cfg.window_divisor);
  if (n < 8 || n < cfg.windows * w) {
    r.basis = "index range too short for the trend windows";
    if (!errors.empty()) r.final_mean = errors.back();
    return r;
  }
  for (double e : errors) {
    if (std::isnan(e)) {
      r.basis = "non-finite errors";
      return r;
    }
  }
  const Windows win = tail_windows(errors, cfg.windows, cfg.window_divisor);
  r.means = win.means;
  r.final_mean = win.means.back();
  const double tol_abs = cfg.tol * (cfg.scale > 0.0 && std::isfinite(cfg.scale) ? cfg.scale : 1.0);

  double max_mean = 0.0, min_mean = kInf;
  for (double m : win.means) {
    max_mean = std::max(max_mean, m);
    min_mean = std::min(min_mean, m);
  }
  if (std::isinf(min_mean)) {
    r.status = Status::Refuted;
    r.limit = kInf;
    r.basis = "stabilized";
    return r;
  }
  const double slack = 1e-3 * tol_abs + 1e-12 * (std::isfinite(max_mean) ? max_mean : 0.0);

  r.nonincreasing = true;
  for (std::size_t k = 1; k < win.means.size(); ++k)
    if (win.means[k] > win.means[k - 1] + slack) r.nonincreasing = false;

  const double m1 = win.means[win.means.size() - 3];
  const double m3 = r.final_mean;
  r.limit = std::isfinite(max_mean) ? extrapolate(win, slack) : kInf;

  if (r.nonincreasing && m3 < tol_abs) {
    r.status = Status::Supported;
    r.basis = "below_tol";
    return r;
  }
  if (r.nonincreasing && m3 < m1 - slack && r.limit <= std::max(tol_abs, 0.1 * m3)) {
    r.status = Status::Supported;
    r.basis = "extrapolated";
    return r;
  }
  double lb;
  if (r.nonincreasing)
    lb = r.limit >= 0.5 * m3 ? std::max(r.limit, 0.0) : 0.0;
  else
    lb = min_mean;
  if (lb > tol_abs) {
    r.status = Status::Refuted;
    r.basis = "stabilized";
    return r;
  }
  r.basis = "no stabilized bound";
  return r;
}

bool looks_bounded(const std::vector<double>& values, const TrendConfig& cfg) {
  for (double v : values)
    if (!std::isfinite(v)) return false;
  const int n = static_cast<int>(values.size());
  const int w = std::max(1, n / cfg.window_divisor);
  if (n < 8 || n < 3 * w) return true;
  const Windows win = tail_windows(values, 3, cfg.window_divisor);
  double mx = 0.0;
  for (double m : win.means) mx = std::max(mx, m);
  const double slack = 1e-9 * std::max(mx, 1.0);
  if (win.means[1] <= win.means[0] + slack && win.means[2] <= win.means[1] + slack) return true;
  // Even ln ln n rises by about 5% across the tail windows at n = 64.
  if (win.means[2] - win.means[0] <= 1e-3 * std::abs(win.means[2])) return true;
  return std::isfinite(extrapolate(win, slack));
}

const Verdict* Verdict::find_sub(const std::string& name) const {
  for (const auto& s : sub)
    if (s.check == name) return &s;
  return nullptr;
}

nlohmann::json Verdict::to_json() const {
  nlohmann::json j;
  j["check"] = check;
  j["status"] = measlab::to_string(status);
  j["witness"] = witness ? witness->to_string() : "";
  j["final_error"] = std::isfinite(final_error) ? nlohmann::json(final_error) : nlohmann::json(format_number(final_error));
  j["basis"] = basis;
  if (!note.empty()) j["note"] = note;
  nlohmann::json tr = nlohmann::json::array();
  for (double e : trend) tr.push_back(std::isfinite(e) ? nlohmann::json(e) : nlohmann::json(format_number(e)));
  j["trend"] = tr;
  if (!sub.empty()) {
    j["sub"] = nlohmann::json::array();
    for (const auto& s : sub) j["sub"].push_back(s.to_json());
  }
  return j;
}

void apply_trend(Verdict& v, const TrendConfig& cfg) {
  const TrendResult t = classify_trend(v.trend, cfg);
  v.status = t.status;
  v.final_error = t.final_mean;
  v.basis = t.basis;
}

}  // namespace measlab
