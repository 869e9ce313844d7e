#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "measlab/geometry.hpp"
#include "measlab/lazy_sequence.hpp"

namespace measlab {

/// Function classes ordered from most to least regular:
/// C_c ⊂ C_0 ⊂ C_b ⊂ C ⊂ measurable.
enum class FnClass { Cc = 0, C0 = 1, Cb = 2, C = 3, Measurable = 4 };

std::string to_string(FnClass c);
FnClass parse_fn_class(const std::string& s);
inline bool is_continuous(FnClass c) { return c <= FnClass::C; }
inline bool is_bounded_class(FnClass c) { return c <= FnClass::Cb; }

/// Declared analytic data that the integrator and the checkers rely on.
struct FnTraits {
  FnClass cls = FnClass::Measurable;
  /// Closed box outside of which the function vanishes.
  std::optional<Box> support;
  /// sup |f|.
  std::optional<double> sup_bound;
  /// Lipschitz constant with respect to the sup-norm.
  std::optional<double> lipschitz;
  /// Bound on every pure second partial |d^2 f / dx_i^2| between breaks.
  std::optional<double> curvature;
  /// Per-axis coordinates where f may jump or kink; quadrature splits there.
  std::vector<std::vector<double>> breaks;
};

/// Real function on the space together with its declared traits and the
/// construction recipe it was built from.
class ScalarFn {
 public:
  using Evaluator = std::function<double(const Point&)>;

  ScalarFn();
  ScalarFn(Evaluator eval, FnTraits traits, nlohmann::json recipe);

  double operator()(const Point& p) const { return state_->eval(p); }

  const FnTraits& traits() const { return state_->traits; }
  FnClass cls() const { return state_->traits.cls; }
  const nlohmann::json& recipe() const { return state_->recipe; }
  std::string label() const;

 private:
  struct State {
    Evaluator eval;
    FnTraits traits;
    nlohmann::json recipe;
  };
  // Copies share one immutable state.
  std::shared_ptr<const State> state_;
};

using FunctionSequence = LazySequence<ScalarFn>;

/// Factories. Every factory records a recipe that rebuilds the same function.
namespace fn {

ScalarFn constant(double c);
/// sum_i coef[i] * x_i + offset.
ScalarFn affine(std::vector<double> coef, double offset);
ScalarFn coordinate(std::size_t axis, std::size_t dimension);
/// value on the box, 0 elsewhere.
ScalarFn indicator(const Box& box, double value = 1.0);
/// scale * x_axis^exponent for x_axis > 0; +inf at 0 for negative exponents.
ScalarFn power(std::size_t axis, double exponent, double scale = 1.0);
/// clamp((x_axis - lo) / (hi - lo), 0, 1).
ScalarFn clipped_coordinate(std::size_t axis, double lo, double hi);
ScalarFn sum(const std::vector<ScalarFn>& terms);
ScalarFn product(const ScalarFn& a, const ScalarFn& b);
ScalarFn scaled(const ScalarFn& a, double c);
ScalarFn abs(const ScalarFn& a);
ScalarFn from_lambda(ScalarFn::Evaluator eval, FnTraits traits, const std::string& label);

}  // namespace fn

/// f⁺ = max(f, 0).
ScalarFn pos_part(const ScalarFn& f);
/// f⁻ = max(-f, 0).
ScalarFn neg_part(const ScalarFn& f);

}  // namespace measlab
