#pragma once

// JSON recipes for functions, measures and multifunctions. Any numeric field
// may be an expression string in the sequence index n and the range end N,
// e.g. {"type": "lebesgue", "scale": "1 - 1/n"}.
//
//   function:  const {value} | affine {coef, offset} | coordinate {axis}
//              | indicator {box, value} | power {axis, exponent, scale}
//              | clip {axis, lo, hi} | urysohn {K, U} | point_indicator {point}
//              | sum {terms} | product {factors} | scale {factor, arg}
//              | abs | pos_part | neg_part {arg}
//   measure:   zero | lebesgue {scale} | dirac {at, weight}
//              | uniform {box, value} | atoms {atoms: [[point, weight], ..]}
//              | grid {shape, values} | sum {terms} | scale {factor, arg}
//              | restrict {set, arg}
//   multifunction: {lower: [function..], upper: [function..], scalarly_continuous}
//              | {point: [function..]}

#include <nlohmann/json.hpp>

#include "measlab/measure.hpp"
#include "measlab/multivalued.hpp"
#include "measlab/scalar_fn.hpp"

namespace measlab {

/// Replaces expression strings by their values at (n, N). Strings under
/// descriptive keys ("type", "label", ...) and strings that are not
/// expressions stay untouched.
nlohmann::json resolve_expressions(const nlohmann::json& j, int n, int n_max);

ScalarFn function_from_recipe(const nlohmann::json& j, std::size_t dimension);
FiniteMeasure measure_from_recipe(const nlohmann::json& j, const Space& space);
Multifunction multifunction_from_recipe(const nlohmann::json& j, std::size_t dimension);

FunctionSequence function_sequence_from_recipe(const nlohmann::json& j, std::size_t dimension, int n_max);
MeasureSequence measure_sequence_from_recipe(const nlohmann::json& j, const Space& space, int n_max);
MultifunctionSequence multifunction_sequence_from_recipe(const nlohmann::json& j, std::size_t dimension,
                                                         int n_max);

}  // namespace measlab
