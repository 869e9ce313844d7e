#pragma once

#include <nlohmann/json.hpp>

#include "measlab/borel_set.hpp"
#include "measlab/measure.hpp"
#include "measlab/space.hpp"

namespace measlab {

// Literal JSON forms.
//
//   box:     {"lower": [..], "upper": [..], "lower_closed": [..], "upper_closed": [..]}
//            (closedness arrays optional; default half-open)
//   space:   {"kind": "box", "lower": [..], "upper": [..], "truncated": [..]}
//            {"kind": "discrete", "points": [[..], ..]}
//   set:     {"boxes": [box, ..], "include": [[..], ..], "exclude": [[..], ..]}
//   measure: {"space": space, "atoms": [[[x..], w], ..],
//             "density": {"grid": [box, ..], "values": [v, ..]}}
//            "density" may also be {"grid": {"shape": [k..]}, "values": [..]}.

nlohmann::json to_json(const Box& b);
Box box_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Space& s);
Space space_from_json(const nlohmann::json& j);

nlohmann::json to_json(const BorelSet& s);
BorelSet set_from_json(const nlohmann::json& j, const Space& space);

nlohmann::json to_json(const FiniteMeasure& m);
FiniteMeasure measure_from_json(const nlohmann::json& j);

Point point_from_json(const nlohmann::json& j);

}  // namespace measlab
