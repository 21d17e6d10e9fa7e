#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "perfsurf/quadnum.hpp"

namespace perfsurf {

struct PlanePoint {
  QuadNum x;
  QuadNum y;

  bool isRational() const { return x.isRational() && y.isRational(); }
  friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
};

/// A point of Q^2.
struct RationalPoint {
  mpq_class x;
  mpq_class y;

  PlanePoint toPlane() const { return {QuadNum(x), QuadNum(y)}; }
  friend bool operator==(const RationalPoint& a, const RationalPoint& b) {
    return a.x == b.x && a.y == b.y;
  }
  /// Lexicographic, x first.
  friend bool operator<(const RationalPoint& a, const RationalPoint& b) {
    int c = cmp(a.x, b.x);
    return c != 0 ? c < 0 : a.y < b.y;
  }
};

/// Open piecewise-linear path, at least two vertices.
struct PLPath {
  std::vector<PlanePoint> vertices;
};

/// Closed piecewise-linear loop: edges v[i] -> v[i+1] and v[n-1] -> v[0].
/// The basepoint is vertices[0].
struct PLLoop {
  std::vector<PlanePoint> vertices;

  const PlanePoint& basepoint() const { return vertices.front(); }
  std::size_t edgeCount() const { return vertices.size(); }
  const PlanePoint& edgeStart(std::size_t i) const { return vertices[i]; }
  const PlanePoint& edgeEnd(std::size_t i) const {
    return vertices[i + 1 == vertices.size() ? 0 : i + 1];
  }
};

/// Throws DomainError unless there are >= 3 vertices and cyclically
/// consecutive vertices differ.
void requireWellFormed(const PLLoop& loop);
/// Throws DomainError unless there are >= 2 vertices and consecutive ones differ.
void requireWellFormed(const PLPath& path);

/// Result of the lattice test for a closed segment p -> q.
struct LatticeCheck {
  bool avoids = true;
  /// When the segment hits Q^2: a rational point on it and its parameter.
  std::optional<RationalPoint> witness;
  std::optional<QuadNum> t;
};

/// Decides whether the closed segment from p to q contains a point with both
/// coordinates rational. Throws DomainError when p == q.
LatticeCheck segmentAvoidsLattice(const PlanePoint& p, const PlanePoint& q);

/// True when every edge avoids Q^2.
bool avoidsLattice(const PLLoop& loop);
bool avoidsLattice(const PLPath& path);

/// Throws DomainError naming the first edge that meets Q^2.
void requireAvoidsLattice(const PLLoop& loop);
void requireAvoidsLattice(const PLPath& path);

/// Exact test for q lying on the closed segment a -> b.
bool onSegment(const PlanePoint& a, const PlanePoint& b, const PlanePoint& q);

/// Winding number of the loop around q by signed ray crossings with a
/// half-open rule on edge endpoints. Throws DomainError if q is on the loop.
long windingNumber(const PLLoop& loop, const RationalPoint& q);

using WindingProfile = std::map<RationalPoint, long>;

/// Winding numbers at every rational point with both denominators <= D in
/// the loop's bounding box, skipping points on the loop.
WindingProfile windingProfile(const PLLoop& loop, std::uint64_t D);

/// Rationals with denominator <= D in [lo, hi], ascending.
std::vector<mpq_class> rationalsInRange(const QuadNum& lo, const QuadNum& hi, std::uint64_t D);

/// Sparse profile comparison: searches, row by row, for a rational point with
/// denominators <= D off both loops where the winding numbers differ. Agrees
/// with comparing windingProfile maps over the union of both bounding boxes
/// (points outside a box have winding 0), without materializing them.
std::optional<RationalPoint> profileDifference(const PLLoop& a, const PLLoop& b, std::uint64_t D);

/// Searches for a point of the profile with nonzero winding.
std::optional<RationalPoint> profileNonzero(const PLLoop& loop, std::uint64_t D);

/// Largest integer <= x and smallest integer >= x.
mpz_class floorOf(const QuadNum& x);
mpz_class ceilOf(const QuadNum& x);

PLLoop reversed(const PLLoop& loop);
/// Concatenation of loops sharing a basepoint.
PLLoop concatenate(const PLLoop& a, const PLLoop& b);
PLLoop translated(const PLLoop& loop, const QuadNum& dx, const QuadNum& dy);

/// Loop from a closed path (last vertex equal to the first); drops repeated
/// consecutive vertices.
PLLoop loopFromClosedPath(const PLPath& path);

}  // namespace perfsurf
