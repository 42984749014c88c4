#pragma once

#include <string>

#include "rropt/core.hpp"

namespace rropt {

// Compact JSON of the shared mechanism schema, e.g.
// {"p0":[0.75,0.25,0.0],"p1":[0.75,0.0,0.25]}. Numbers use the shortest
// round-trip decimal form, so emit -> parse -> emit is a fixed point.
std::string mechanism_to_json(const MechanismPair& pair);

// Parses the schema above; distribution invariants are re-validated on
// construction. Malformed JSON or a missing/ill-typed key throws Error.
MechanismPair mechanism_from_json(const std::string& text);

// mechanism_from_json over a file's contents.
MechanismPair load_mechanism(const std::string& path);

}  // namespace rropt
