#pragma once

#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "invx/critical.hpp"
#include "invx/eideal.hpp"
#include "invx/group.hpp"

namespace invx {

using Json = nlohmann::ordered_json;

/// A parsed model file: exactly one backend, plus an optional presented
/// group for the function backends.
struct Model {
  std::string kind;  // finite_tree | ordinal | ball
  std::shared_ptr<const FiniteTreeSpectrum> tree;  // finite_tree only
  std::optional<PresentedGroup> group;             // ordinal / ball
};

Model load_model(const std::string& path);
Model parse_model(const Json& j);

/// Function payloads: ordinal descriptors as nested objects
/// {exceptions, tail, at_limit}, ball and discrete functions as value arrays.
IdealFunction parse_function(const MaxSpace& space, const Json& j);
Json function_to_json(const IdealFunction& f);

PointSet parse_point_set(const MaxSpace& space, const Json& j);
Json point_set_to_json(const MaxSpace& space, const PointSet& s);

EIdeal parse_eideal(const std::shared_ptr<const FiniteTreeSpectrum>& spec,
                    const Json& j);
Json eideal_to_json(const EIdeal& i);

Json load_json_file(const std::string& path);

}  // namespace invx
