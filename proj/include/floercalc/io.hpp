#pragma once

#include <string>

#include "floercalc/cobordism.hpp"
#include "floercalc/lattice.hpp"
#include "floercalc/triangle.hpp"
#include "json.hpp"

namespace floercalc {

// Insertion-ordered JSON keeps every emission byte-stable.
using Json = nlohmann::ordered_json;

// Both throw parse_error on malformed text or an unreadable path.
Json parse_json_text(const std::string& text);
Json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Integers wider than 62 bits travel as decimal strings; both directions
// accept either form. Rationals are "p/q" (or a plain integer).
Json int_to_json(const Int& x);
Int int_from_json(const Json& v, const std::string& what);
std::string rat_to_string(const Rat& x);
Rat rat_from_json(const Json& v, const std::string& what);

// {"flavor", "generators": [{"id","degree"}], "d"/"v": [{"from","to",
// "coeff"}], "delta"/"delta_prime": {id: coeff}}. Map entries must raise
// degree by exactly the map's degree; delta and delta_prime are optional
// for the homology sphere flavor and forbidden for the admissible one.
// Unknown fields are rejected everywhere.
FloerComplex complex_from_json(const Json& j);
Json complex_to_json(const FloerComplex& c);

// {"sign": "negative"|"positive", "gram": [[...], ...]}
Lattice lattice_from_json(const Json& j);
Json lattice_to_json(const Lattice& L);

// {"source": <complex>, "target": <complex>, "Wstar": [{"from","to",
// "coeff"}] (degree-preserving, source id to target id), "delta_W":
// {source degree-5 id: coeff}, "delta_prime_W": {target degree-0 id:
// coeff}, "phi": optional triples dropping into degree q+3, "flags":
// {"negative_definite", "h1_trivial"}}
CobordismData cobordism_from_json(const Json& j);

// {"shifts": [3 ints], "vertices": [{"dims": [8 counts]} x3], "maps":
// [{"matrices": [8 row-major matrices]} x3]}; matrix entries are
// rationals. The coefficient field comes from the caller.
TrianglePresentation triangle_from_json(const Json& j, const RingSpec& ring);

}  // namespace floercalc
