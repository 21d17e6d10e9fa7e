#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "perfsurf/planegeom.hpp"

namespace perfsurf {

/// The fold F(x, y): identity for x <= 0, (-x, y) for 0 <= x <= 1 and
/// (x - 2, y) for x >= 1.
PlanePoint mapF(const PlanePoint& p);

/// Image of a path or loop under F. Edges are first split where they cross
/// x = 0 and x = 1 so the image is again piecewise linear. Throws DomainError
/// if the input meets Q^2.
PLPath applyF(const PLPath& path);
PLLoop applyF(const PLLoop& loop);

/// Closed parameter interval [a, b]. A loop with n edges is parametrized on
/// [0, 1] with edge i covering [i/n, (i+1)/n] linearly.
struct ParamInterval {
  QuadNum a;
  QuadNum b;
  friend bool operator==(const ParamInterval&, const ParamInterval&) = default;
};

struct Case3Decomposition {
  /// Maximal intervals with endpoints on x = 0, interior in x > -1, reaching x = 1.
  std::vector<ParamInterval> J;
  /// Closures of the gaps; x < 1 on each.
  std::vector<ParamInterval> complements;
};

/// Requires the basepoint on x = 0 and a lattice-avoiding loop.
Case3Decomposition decomposeCase3(const PLLoop& loop);

/// Rewrites a path with endpoints on x = 0 and x < 1 throughout into one
/// whose image under F is homotopic to it rel endpoints: stretches that dip
/// to x <= -1 are kept, each maximal stretch between them inside -1 < x < 1
/// becomes  sigma * (stretch + 2) * tau^-1  with horizontal connectors of
/// length 2.
PLPath liftLeftOfOne(const PLPath& path);

enum class LiftCase : std::uint8_t {
  Case1,      // loop inside x <= 0; the lift is the loop
  Case2,      // one J interval covering the whole loop
  Case3,      // J intervals with complements
  LeftOfOne,  // no J interval; only the left-of-one rewriting
};
std::string_view toString(LiftCase c);

struct CaseTraceEntry {
  enum class Kind : std::uint8_t { J, I } kind;
  ParamInterval bounds;
};

struct LiftReport {
  PLLoop input;
  PLLoop lifted;
  LiftCase liftCase = LiftCase::Case1;
  /// J and I intervals in parameter order; they partition [0, 1].
  std::vector<CaseTraceEntry> caseTrace;
  std::uint64_t profileD = 0;
  /// Winding profiles of F(lifted) and input agree at denominator bound D.
  bool match = false;
};

/// Builds a loop whose F-image has the winding profile of `loop`. Requires a
/// lattice-avoiding loop based at (0, sqrt 2).
LiftReport liftLoop(const PLLoop& loop, std::uint64_t D);

struct KernelWitness {
  PLLoop alpha;
  RationalPoint enclosed;
};

/// Diamond around (0, sqrt 2) whose F-image has zero winding everywhere while
/// it winds once around `enclosed`.
KernelWitness kernelWitness();

/// (0, sqrt 2).
PlanePoint liftBasepoint();

}  // namespace perfsurf
