#include "perfsurf/planegeom.hpp"

#include <algorithm>
#include <cmath>

#include "perfsurf/error.hpp"

namespace perfsurf {

namespace {

std::string describe(const PlanePoint& p) { return "(" + toString(p.x) + ", " + toString(p.y) + ")"; }

// Sign of the cross product (b - a) x (q - a).
int orientation(const PlanePoint& a, const PlanePoint& b, const PlanePoint& q) {
  return ((b.x - a.x) * (q.y - a.y) - (q.x - a.x) * (b.y - a.y)).sign();
}

// Some rational in the closed interval [lo, hi], lo < hi, with the smallest
// possible denominator.
mpq_class rationalBetween(const QuadNum& lo, const QuadNum& hi) {
  for (unsigned long q = 1;; ++q) {
    mpz_class p = ceilOf(lo * QuadNum(static_cast<long>(q)));
    mpq_class r(p, q);
    r.canonicalize();
    if (QuadNum(r) <= hi) return r;
  }
}

// Rational with denominator <= D strictly inside (lo, hi), if any.
std::optional<mpq_class> rationalInside(const QuadNum& lo, const QuadNum& hi, std::uint64_t D) {
  if (!(lo < hi)) return std::nullopt;
  for (std::uint64_t q = 1; q <= D; ++q) {
    const QuadNum Q(static_cast<long>(q));
    mpz_class p = floorOf(lo * Q) + 1;
    mpq_class r(p, mpz_class(static_cast<unsigned long>(q)));
    r.canonicalize();
    if (QuadNum(r) < hi) return r;
  }
  return std::nullopt;
}

struct Bounds {
  QuadNum minX, maxX, minY, maxY;
};

Bounds boundsOf(const std::vector<PlanePoint>& pts) {
  Bounds b{pts[0].x, pts[0].x, pts[0].y, pts[0].y};
  for (const auto& p : pts) {
    if (p.x < b.minX) b.minX = p.x;
    if (b.maxX < p.x) b.maxX = p.x;
    if (p.y < b.minY) b.minY = p.y;
    if (b.maxY < p.y) b.maxY = p.y;
  }
  return b;
}

// Edge prepared for row sweeps.
struct SweepEdge {
  QuadNum x0, y0;
  QuadNum inverseSlope;  // dx/dy
  QuadNum lowY, highY;   // half-open range [lowY, highY)
  double lowD, highD;
  int direction;  // +1 upward, -1 downward
  int owner;      // +1 first loop, -1 second loop
};

void addSweepEdges(const PLLoop& loop, int owner, std::vector<SweepEdge>& out) {
  for (std::size_t i = 0; i < loop.edgeCount(); ++i) {
    const PlanePoint& a = loop.edgeStart(i);
    const PlanePoint& b = loop.edgeEnd(i);
    int c = compare(a.y, b.y);
    if (c == 0) continue;  // horizontal edges never cross a row
    SweepEdge e;
    e.x0 = a.x;
    e.y0 = a.y;
    e.inverseSlope = (b.x - a.x) / (b.y - a.y);
    e.direction = c < 0 ? 1 : -1;
    e.lowY = c < 0 ? a.y : b.y;
    e.highY = c < 0 ? b.y : a.y;
    e.lowD = e.lowY.toDouble();
    e.highD = e.highY.toDouble();
    e.owner = owner;
    out.push_back(std::move(e));
  }
}

struct Crossing {
  QuadNum x;
  int weight;
};

// Rows of rationals with denominator <= D meeting the edges; calls
// visit(y, crossings) with the signed crossings of each row, sorted by x.
template <typename Visit>
bool sweepRows(const std::vector<SweepEdge>& edges, const QuadNum& minY, const QuadNum& maxY,
               std::uint64_t D, Visit&& visit) {
  std::vector<mpq_class> rows = rationalsInRange(minY, maxY, D);
  std::vector<Crossing> crossings;
  for (const mpq_class& y : rows) {
    const QuadNum Y(y);
    const double yd = y.get_d();
    crossings.clear();
    for (const auto& e : edges) {
      if (yd < e.lowD - 1e-9 || yd > e.highD + 1e-9) continue;
      if (Y < e.lowY || !(Y < e.highY)) continue;
      crossings.push_back({e.x0 + (Y - e.y0) * e.inverseSlope, e.direction * e.owner});
    }
    if (crossings.empty()) continue;
    std::sort(crossings.begin(), crossings.end(),
              [](const Crossing& a, const Crossing& b) { return a.x < b.x; });
    if (visit(y, crossings)) return true;
  }
  return false;
}

// Between consecutive crossings the summed weight to the right is the
// winding number (or winding difference) of every point of the open gap.
std::optional<RationalPoint> firstNonzeroGap(const mpq_class& y, const std::vector<Crossing>& cs,
                                             std::uint64_t D) {
  long suffix = 0;
  for (std::size_t j = cs.size(); j-- > 1;) {
    suffix += cs[j].weight;
    if (suffix == 0) continue;
    if (auto r = rationalInside(cs[j - 1].x, cs[j].x, D)) return RationalPoint{*r, y};
  }
  return std::nullopt;
}

}  // namespace

mpz_class floorOf(const QuadNum& x) {
  mpz_class n(std::floor(x.toDouble()));
  while (QuadNum(mpq_class(n)) > x) --n;
  while (QuadNum(mpq_class(n + 1)) <= x) ++n;
  return n;
}

mpz_class ceilOf(const QuadNum& x) {
  mpz_class n = floorOf(x);
  if (QuadNum(mpq_class(n)) < x) ++n;
  return n;
}

void requireWellFormed(const PLLoop& loop) {
  if (loop.vertices.size() < 3) throw DomainError("loop needs at least three vertices");
  for (std::size_t i = 0; i < loop.edgeCount(); ++i) {
    if (loop.edgeStart(i) == loop.edgeEnd(i)) {
      throw DomainError("loop has repeated consecutive vertex " + describe(loop.edgeStart(i)));
    }
  }
}

void requireWellFormed(const PLPath& path) {
  if (path.vertices.size() < 2) throw DomainError("path needs at least two vertices");
  for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i) {
    if (path.vertices[i] == path.vertices[i + 1]) {
      throw DomainError("path has repeated consecutive vertex " + describe(path.vertices[i]));
    }
  }
}

LatticeCheck segmentAvoidsLattice(const PlanePoint& p, const PlanePoint& q) {
  if (p == q) throw DomainError("segmentAvoidsLattice: degenerate segment");
  const QuadNum dx = q.x - p.x;
  const QuadNum dy = q.y - p.y;
  auto hit = [&](const mpq_class& rx, const mpq_class& ry, QuadNum t) {
    return LatticeCheck{false, RationalPoint{rx, ry}, std::move(t)};
  };

  if (dx.isZero() || dy.isZero()) {
    // Axis-parallel: the fixed coordinate must be rational, then the moving
    // one sweeps an interval of positive length and meets Q.
    const bool vertical = dx.isZero();
    const QuadNum& fixed = vertical ? p.x : p.y;
    if (!fixed.isRational()) return {};
    const QuadNum& from = vertical ? p.y : p.x;
    const QuadNum& to = vertical ? q.y : q.x;
    mpq_class r = from < to ? rationalBetween(from, to) : rationalBetween(to, from);
    QuadNum t = (QuadNum(r) - from) / (to - from);
    return vertical ? hit(fixed.a(), r, t) : hit(r, fixed.a(), t);
  }

  // Parametrize by the abscissa: x = r, y = c + r k with k = dy/dx.
  const QuadNum k = dy / dx;
  const QuadNum c = p.y - p.x * k;
  if (sgn(k.b()) != 0) {
    // y is rational only for r = -c_b / k_b.
    mpq_class r = -c.b() / k.b();
    QuadNum t = (QuadNum(r) - p.x) / dx;
    if (t.sign() < 0 || QuadNum(1) < t) return {};
    mpq_class ry = c.a() + r * k.a();
    return hit(r, ry, t);
  }
  if (sgn(c.b()) != 0) return {};  // y = rational + irrational constant
  // Every rational abscissa gives a rational ordinate.
  mpq_class r = p.x < q.x ? rationalBetween(p.x, q.x) : rationalBetween(q.x, p.x);
  QuadNum t = (QuadNum(r) - p.x) / dx;
  return hit(r, c.a() + r * k.a(), t);
}

bool avoidsLattice(const PLLoop& loop) {
  for (std::size_t i = 0; i < loop.edgeCount(); ++i) {
    if (!segmentAvoidsLattice(loop.edgeStart(i), loop.edgeEnd(i)).avoids) return false;
  }
  return true;
}

bool avoidsLattice(const PLPath& path) {
  for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i) {
    if (!segmentAvoidsLattice(path.vertices[i], path.vertices[i + 1]).avoids) return false;
  }
  return true;
}

namespace {

void requireEdgeAvoids(const PlanePoint& a, const PlanePoint& b, std::size_t i) {
  LatticeCheck c = segmentAvoidsLattice(a, b);
  if (!c.avoids) {
    throw DomainError("edge " + std::to_string(i) + " from " + describe(a) + " to " + describe(b) +
                      " meets the rational point (" + toString(c.witness->x) + ", " +
                      toString(c.witness->y) + ")");
  }
}

}  // namespace

void requireAvoidsLattice(const PLLoop& loop) {
  for (std::size_t i = 0; i < loop.edgeCount(); ++i) requireEdgeAvoids(loop.edgeStart(i), loop.edgeEnd(i), i);
}

void requireAvoidsLattice(const PLPath& path) {
  for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i) {
    requireEdgeAvoids(path.vertices[i], path.vertices[i + 1], i);
  }
}

bool onSegment(const PlanePoint& a, const PlanePoint& b, const PlanePoint& q) {
  if (orientation(a, b, q) != 0) return false;
  auto between = [](const QuadNum& u, const QuadNum& v, const QuadNum& w) {
    return u < v ? !(w < u) && !(v < w) : !(w < v) && !(u < w);
  };
  return between(a.x, b.x, q.x) && between(a.y, b.y, q.y);
}

long windingNumber(const PLLoop& loop, const RationalPoint& q) {
  requireWellFormed(loop);
  const PlanePoint Q = q.toPlane();
  long w = 0;
  for (std::size_t i = 0; i < loop.edgeCount(); ++i) {
    const PlanePoint& a = loop.edgeStart(i);
    const PlanePoint& b = loop.edgeEnd(i);
    if (onSegment(a, b, Q)) {
      throw DomainError("windingNumber: point (" + toString(q.x) + ", " + toString(q.y) +
                        ") lies on the loop");
    }
    const bool aBelow = !(Q.y < a.y);  // a.y <= q.y
    const bool bBelow = !(Q.y < b.y);
    if (aBelow && !bBelow) {
      if (orientation(a, b, Q) > 0) ++w;  // upward, q to the left
    } else if (!aBelow && bBelow) {
      if (orientation(a, b, Q) < 0) --w;  // downward, q to the right
    }
  }
  return w;
}

std::vector<mpq_class> rationalsInRange(const QuadNum& lo, const QuadNum& hi, std::uint64_t D) {
  std::vector<mpq_class> out;
  if (hi < lo) return out;
  for (std::uint64_t q = 1; q <= D; ++q) {
    const mpz_class Q(static_cast<unsigned long>(q));
    const QuadNum QQ(static_cast<long>(q));
    mpz_class first = ceilOf(lo * QQ);
    mpz_class last = floorOf(hi * QQ);
    for (mpz_class p = first; p <= last; ++p) {
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), Q.get_mpz_t());
      if (g == 1) out.emplace_back(p, Q);
    }
  }
  for (auto& r : out) r.canonicalize();
  std::sort(out.begin(), out.end());
  return out;
}

WindingProfile windingProfile(const PLLoop& loop, std::uint64_t D) {
  requireWellFormed(loop);
  if (D == 0) throw DomainError("windingProfile: D must be positive");
  const Bounds b = boundsOf(loop.vertices);
  const auto xs = rationalsInRange(b.minX, b.maxX, D);
  const auto ys = rationalsInRange(b.minY, b.maxY, D);
  WindingProfile profile;
  for (const auto& x : xs) {
    for (const auto& y : ys) {
      RationalPoint q{x, y};
      const PlanePoint Q = q.toPlane();
      bool on = false;
      for (std::size_t i = 0; i < loop.edgeCount() && !on; ++i) {
        on = onSegment(loop.edgeStart(i), loop.edgeEnd(i), Q);
      }
      if (!on) profile.emplace(q, windingNumber(loop, q));
    }
  }
  return profile;
}

std::optional<RationalPoint> profileDifference(const PLLoop& a, const PLLoop& b, std::uint64_t D) {
  requireWellFormed(a);
  requireWellFormed(b);
  requireAvoidsLattice(a);
  requireAvoidsLattice(b);
  std::vector<SweepEdge> edges;
  addSweepEdges(a, 1, edges);
  addSweepEdges(b, -1, edges);
  Bounds ba = boundsOf(a.vertices);
  Bounds bb = boundsOf(b.vertices);
  const QuadNum& minY = ba.minY < bb.minY ? ba.minY : bb.minY;
  const QuadNum& maxY = ba.maxY < bb.maxY ? bb.maxY : ba.maxY;
  std::optional<RationalPoint> found;
  sweepRows(edges, minY, maxY, D, [&](const mpq_class& y, const std::vector<Crossing>& cs) {
    found = firstNonzeroGap(y, cs, D);
    return found.has_value();
  });
  return found;
}

std::optional<RationalPoint> profileNonzero(const PLLoop& loop, std::uint64_t D) {
  requireWellFormed(loop);
  requireAvoidsLattice(loop);
  std::vector<SweepEdge> edges;
  addSweepEdges(loop, 1, edges);
  Bounds b = boundsOf(loop.vertices);
  std::optional<RationalPoint> found;
  sweepRows(edges, b.minY, b.maxY, D, [&](const mpq_class& y, const std::vector<Crossing>& cs) {
    found = firstNonzeroGap(y, cs, D);
    return found.has_value();
  });
  return found;
}

PLLoop reversed(const PLLoop& loop) {
  PLLoop out;
  out.vertices.push_back(loop.vertices.front());
  out.vertices.insert(out.vertices.end(), loop.vertices.rbegin(), loop.vertices.rend() - 1);
  return out;
}

PLLoop concatenate(const PLLoop& a, const PLLoop& b) {
  if (!(a.basepoint() == b.basepoint())) throw DomainError("concatenate: loops have different basepoints");
  PLLoop out = a;
  out.vertices.insert(out.vertices.end(), b.vertices.begin(), b.vertices.end());
  return out;
}

PLLoop translated(const PLLoop& loop, const QuadNum& dx, const QuadNum& dy) {
  PLLoop out;
  for (const auto& p : loop.vertices) out.vertices.push_back({p.x + dx, p.y + dy});
  return out;
}

PLLoop loopFromClosedPath(const PLPath& path) {
  PLLoop out;
  for (const auto& p : path.vertices) {
    if (out.vertices.empty() || !(out.vertices.back() == p)) out.vertices.push_back(p);
  }
  while (out.vertices.size() > 1 && out.vertices.back() == out.vertices.front()) out.vertices.pop_back();
  return out;
}

}  // namespace perfsurf
