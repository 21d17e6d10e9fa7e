#pragma once

#include <json.hpp>

#include "perfsurf/covering.hpp"
#include "perfsurf/endspace.hpp"
#include "perfsurf/fractal.hpp"
#include "perfsurf/nonhopf.hpp"
#include "perfsurf/surface.hpp"

namespace perfsurf::io {

using nlohmann::json;

// Shape errors in input documents throw ParseError.

json toJson(const Fingerprint& f);
json toJson(const PerforationClass& c);

/// {"genus": "inf" | int, "orient": "O" | ..., "ends": "<expression>"}.
SurfaceDescriptor descriptorFromJson(const json& j);
json toJson(const SurfaceDescriptor& d);

/// a + b*sqrt2 as ["a", "b"]; a bare rational string is accepted on input.
QuadNum quadFromJson(const json& j);
json toJson(const QuadNum& q);

/// Loops are arrays of [x, y] vertices, or an object with a "vertices" array.
PLLoop loopFromJson(const json& j);
json toJson(const PLLoop& loop);
json toJson(const RationalPoint& p);

/// Array of rational strings.
RationalVector rationalVectorFromJson(const json& j);
json toJson(const RationalVector& v);

/// {"type": "table", "table": [[...]], "generators": [...]}
/// {"type": "permutations", "degree": n, "generators": ["(1 2)", ...]}
/// {"type": "lattice", "generators": [[1, 0], ...], "radius": R}
GroupSpec groupSpecFromJson(const json& j);

json toJson(const CoveringGraph& g);

}  // namespace perfsurf::io
