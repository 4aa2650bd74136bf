#pragma once

// File formats.
//
// State spec (JSON object):
//   {"kind": "schmidt",     "coeffs": [2, 1]}          unnormalized Schmidt coefficients
//   {"kind": "werner",      "p": 0.9}
//   {"kind": "isotropic",   "d": 3, "p": 0.8}
//   {"kind": "densityfile", "path": "rho.txt"}
//
// Density text file: a header line "dA dB", then (dA*dB)^2 whitespace
// separated "re im" pairs in row-major order.
//
// Inequality (JSON object), all indices 0-based, outcome 0 = "+":
//   {"name": "CH", "sA": 2, "sB": 2, "oA": 2, "oB": 2,
//    "joint": [{"a":0,"b":1,"k":0,"l":0,"c":1}, ...],
//    "margA": [{"a":0,"k":0,"c":-1}], "margB": [{"b":1,"l":0,"c":-1}]}
// A stored "lhv_bound" is ignored on load and recomputed by enumeration.

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "collbell/bell.hpp"
#include "collbell/states.hpp"

namespace collbell {

using json = nlohmann::json;

BipartiteDensity read_density(std::istream& in);
BipartiteDensity load_density_file(const std::string& path);
void write_density(std::ostream& out, const BipartiteDensity& rho);

BipartiteDensity parse_state_spec(const json& spec);

BellFunctional parse_functional(const json& spec);
json functional_to_json(const BellFunctional& f);

/// Inline JSON text, or "@path" to read the JSON from a file.
json load_json_arg(const std::string& arg);

/// As load_json_arg, plus the shorthands "ch", "chsh" and "i3322".
BellFunctional parse_functional_arg(const std::string& arg);

/// Rows of [re, im] pairs.
json matrix_to_json(const CMatrix& m);

}  // namespace collbell
