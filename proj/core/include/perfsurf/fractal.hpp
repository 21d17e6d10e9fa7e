#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "perfsurf/planegeom.hpp"

namespace perfsurf {

enum class FractalKind : std::uint8_t { Carpet, Gasket, Menger };

std::string_view toString(FractalKind k);
std::optional<FractalKind> parseFractalKind(std::string_view text);

/// Number of coordinates: 2 for carpet and gasket, 3 for Menger.
std::size_t dimension(FractalKind k);

using RationalVector = std::vector<mpq_class>;

/// Eventually periodic digit sequence: prefix, then period repeated forever.
struct DigitExpansion {
  std::vector<int> prefix;
  std::vector<int> period;

  int digit(std::size_t i) const {
    return i < prefix.size() ? prefix[i] : period[(i - prefix.size()) % period.size()];
  }
  friend bool operator==(const DigitExpansion&, const DigitExpansion&) = default;
};

/// All base-`base` expansions of x in [0, 1]: two for nonzero numbers with a
/// terminating expansion (other than 1), one otherwise.
std::vector<DigitExpansion> radixExpansions(const mpq_class& x, int base);

/// Sierpinski carpet in [0,1]^2, Menger sponge in [0,1]^3 (ternary digits,
/// at most one coordinate with digit 1 per position), and the gasket on the
/// triangle (0,0), (1,0), (0,1) (binary digits never both 1). A point is a
/// member when some choice of expansions satisfies the digit rule.
/// Throws DomainError on wrong dimension or coordinates outside [0, 1].
bool member(FractalKind k, const RationalVector& p);

/// t on [0,1/3], 2/3 - t on [1/3,2/3], t - 2/3 on [2/3,1].
mpq_class rho(const mpq_class& t);

/// Coordinatewise rho; any point of the unit cube.
RationalVector rhoCube(const RationalVector& p);

/// Retraction of the carpet or the Menger sponge onto its corner cell.
/// Throws DomainError for the gasket or non-member input.
RationalVector retract(FractalKind k, const RationalVector& p);

/// Simplicial retraction of the gasket onto the corner triangle
/// (0,0), (1/2,0), (0,1/2) with u0, v0 -> u0, u1, v1 -> v1, u2, v2 -> v2
/// where v0, v1, v2 are the midpoints opposite u0, u1, u2.
/// Throws DomainError on non-member input.
RationalVector retractGasket(const RationalVector& p);

/// Image of a loop in the unit square under the carpet retraction map
/// (rhoCube) or the gasket map, with edges split at the fold lines so the
/// image is again piecewise linear. No membership check.
PLLoop retractLoop(FractalKind k, const PLLoop& loop);

/// Centers of removed squares (carpet) or centroids of removed triangles
/// (gasket) for construction levels 1..maxLevel.
std::vector<RationalPoint> removedCenters(FractalKind k, int maxLevel);

struct FractalHole {
  RationalPoint point;
  long winding;
};

struct FractalWitness {
  PLLoop loop;
  /// Points of removed regions with their (nonzero) winding numbers.
  std::vector<FractalHole> holes;
  PLLoop retracted;
  std::size_t centersChecked = 0;
  /// The retracted loop winds zero times around every removed center checked.
  bool retractedProfileZero = false;
};

/// carpet: boundary of [0,1/3] x [0,2/3] around (1/6, 1/2);
/// gasket: gamma1 * gamma0^-1 based at (1/2, 0).
/// Removed centers are checked up to `level` (default 6).
FractalWitness witnessLoops(FractalKind k, int level = 6);

}  // namespace perfsurf
