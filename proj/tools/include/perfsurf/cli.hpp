#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "perfsurf/covering.hpp"
#include "perfsurf/fractal.hpp"
#include "perfsurf/planegeom.hpp"
#include "perfsurf/surface.hpp"

namespace perfsurf::cli {

using nlohmann::json;

enum ExitCode : int { kOk = 0, kDomainError = 1, kUsageError = 2 };

json classifyCommand(const SurfaceDescriptor& d);
json compareCommand(const SurfaceDescriptor& a, const SurfaceDescriptor& b);
/// check = false emits the descriptors; check = true compares all pairs.
json familyCommand(std::uint64_t m, bool check);
json rankCommand(const std::string& exprText);
json liftCommand(const PLLoop& loop, std::uint64_t D);
/// op: member | retract | witness. `points` is one point or an array of points.
json fractalCommand(FractalKind which, const std::string& op, const json& points, int level);
json coverCommand(const GroupSpec& spec);
json obstructionCommand(std::uint64_t p, std::uint64_t m);

/// Parses argv, dispatches and writes the JSON report to `out`. Errors go to
/// `err` as a JSON object. Returns the exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace perfsurf::cli
