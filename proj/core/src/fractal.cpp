#include "perfsurf/fractal.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "perfsurf/error.hpp"

namespace perfsurf {

std::string_view toString(FractalKind k) {
  switch (k) {
    case FractalKind::Carpet:
      return "carpet";
    case FractalKind::Gasket:
      return "gasket";
    case FractalKind::Menger:
      return "menger";
  }
  return "?";
}

std::optional<FractalKind> parseFractalKind(std::string_view text) {
  for (auto k : {FractalKind::Carpet, FractalKind::Gasket, FractalKind::Menger}) {
    if (text == toString(k)) return k;
  }
  return std::nullopt;
}

std::size_t dimension(FractalKind k) { return k == FractalKind::Menger ? 3 : 2; }

std::vector<DigitExpansion> radixExpansions(const mpq_class& x, int base) {
  if (base < 2) throw DomainError("radixExpansions: base must be >= 2");
  if (x < 0 || x > 1) throw DomainError("radixExpansions: " + x.get_str() + " is outside [0, 1]");
  if (x == 0) return {DigitExpansion{{}, {0}}};
  if (x == 1) return {DigitExpansion{{}, {base - 1}}};
  const mpz_class q = x.get_den();
  mpz_class r = x.get_num();
  std::vector<int> digits;
  std::unordered_map<std::string, std::size_t> seen;  // remainder -> digit index
  for (;;) {
    if (r == 0) {
      DigitExpansion finite{digits, {0}};
      DigitExpansion other{digits, {base - 1}};
      --other.prefix.back();
      return {finite, other};
    }
    auto [it, inserted] = seen.emplace(r.get_str(16), digits.size());
    if (!inserted) {
      const std::size_t start = it->second;
      DigitExpansion e;
      e.prefix.assign(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(start));
      e.period.assign(digits.begin() + static_cast<std::ptrdiff_t>(start), digits.end());
      return {e};
    }
    r *= base;
    mpz_class d = r / q;
    r -= d * q;
    digits.push_back(static_cast<int>(d.get_si()));
  }
}

namespace {

void checkPoint(FractalKind k, const RationalVector& p) {
  if (p.size() != dimension(k)) {
    throw DomainError(std::string(toString(k)) + ": expected " + std::to_string(dimension(k)) +
                      " coordinates, got " + std::to_string(p.size()));
  }
  for (const auto& c : p) {
    if (c < 0 || c > 1) throw DomainError(std::string(toString(k)) + ": coordinate " + c.get_str() + " outside [0, 1]");
  }
}

// Whether some combination of expansions passes `ok` at every position.
template <typename Ok>
bool someCombination(const std::vector<std::vector<DigitExpansion>>& options, Ok ok) {
  std::vector<std::size_t> pick(options.size(), 0);
  std::vector<int> digits(options.size());
  for (;;) {
    std::size_t prefix = 0;
    std::size_t period = 1;
    for (std::size_t i = 0; i < options.size(); ++i) {
      const auto& e = options[i][pick[i]];
      prefix = std::max(prefix, e.prefix.size());
      period = std::lcm(period, e.period.size());
    }
    bool good = true;
    for (std::size_t pos = 0; pos < prefix + period && good; ++pos) {
      for (std::size_t i = 0; i < options.size(); ++i) digits[i] = options[i][pick[i]].digit(pos);
      good = ok(digits);
    }
    if (good) return true;
    std::size_t i = 0;
    while (i < options.size() && ++pick[i] == options[i].size()) pick[i++] = 0;
    if (i == options.size()) return false;
  }
}

}  // namespace

bool member(FractalKind k, const RationalVector& p) {
  checkPoint(k, p);
  const int base = k == FractalKind::Gasket ? 2 : 3;
  if (k == FractalKind::Gasket && p[0] + p[1] > 1) return false;
  std::vector<std::vector<DigitExpansion>> options;
  for (const auto& c : p) options.push_back(radixExpansions(c, base));
  return someCombination(options, [&](const std::vector<int>& d) {
    if (k == FractalKind::Gasket) return !(d[0] == 1 && d[1] == 1);
    return std::count(d.begin(), d.end(), 1) <= 1;
  });
}

mpq_class rho(const mpq_class& t) {
  if (t < 0 || t > 1) throw DomainError("rho: " + t.get_str() + " outside [0, 1]");
  static const mpq_class third(1, 3);
  static const mpq_class twoThirds(2, 3);
  if (t <= third) return t;
  if (t <= twoThirds) return twoThirds - t;
  return mpq_class(t - twoThirds);
}

RationalVector rhoCube(const RationalVector& p) {
  RationalVector out;
  out.reserve(p.size());
  for (const auto& c : p) out.push_back(rho(c));
  return out;
}

RationalVector retract(FractalKind k, const RationalVector& p) {
  if (k == FractalKind::Gasket) throw DomainError("retract: use retractGasket for the gasket");
  if (!member(k, p)) throw DomainError("retract: point is not a member of the " + std::string(toString(k)));
  return rhoCube(p);
}

namespace {

// Affine pieces of the gasket map on the four subdivision triangles.
RationalVector gasketMap(const mpq_class& x, const mpq_class& y) {
  static const mpq_class half(1, 2);
  if (x + y <= half) return {x, y};                                  // corner triangle, fixed
  if (x >= half) return {mpq_class(1 - x - y), mpq_class(x - half)};  // (v2,u1,v0) -> (v2,v1,u0)
  if (y >= half) return {mpq_class(y - half), mpq_class(1 - x - y)};  // (v1,v0,u2) -> (v1,u0,v2)
  return {mpq_class(half - y), mpq_class(half - x)};                  // middle (v0,v1,v2) -> (u0,v1,v2)
}

}  // namespace

RationalVector retractGasket(const RationalVector& p) {
  if (!member(FractalKind::Gasket, p)) throw DomainError("retractGasket: point is not a gasket member");
  return gasketMap(p[0], p[1]);
}

PLLoop retractLoop(FractalKind k, const PLLoop& loop) {
  if (k == FractalKind::Menger) throw DomainError("retractLoop: planar spaces only");
  requireWellFormed(loop);
  // Fold lines a*x + b*y = c.
  struct Line {
    int a, b;
    mpq_class c;
  };
  std::vector<Line> lines;
  if (k == FractalKind::Carpet) {
    lines = {{1, 0, mpq_class(1, 3)}, {1, 0, mpq_class(2, 3)}, {0, 1, mpq_class(1, 3)}, {0, 1, mpq_class(2, 3)}};
  } else {
    lines = {{1, 0, mpq_class(1, 2)}, {0, 1, mpq_class(1, 2)}, {1, 1, mpq_class(1, 2)}};
  }
  auto mapPoint = [&](const mpq_class& x, const mpq_class& y) -> PlanePoint {
    RationalVector r = k == FractalKind::Carpet ? rhoCube({x, y}) : gasketMap(x, y);
    return {QuadNum(r[0]), QuadNum(r[1])};
  };
  std::vector<PlanePoint> out;
  for (std::size_t i = 0; i < loop.edgeCount(); ++i) {
    const PlanePoint& A = loop.edgeStart(i);
    const PlanePoint& B = loop.edgeEnd(i);
    if (!A.isRational() || !B.isRational()) throw DomainError("retractLoop: vertices must be rational");
    const mpq_class ax = A.x.a(), ay = A.y.a(), bx = B.x.a(), by = B.y.a();
    std::vector<mpq_class> ts{0};
    for (const auto& l : lines) {
      mpq_class va = l.a * ax + l.b * ay - l.c;
      mpq_class vb = l.a * bx + l.b * by - l.c;
      if (sgn(va) * sgn(vb) < 0) ts.push_back(va / (va - vb));
    }
    std::sort(ts.begin(), ts.end());
    for (const auto& t : ts) {
      PlanePoint img = mapPoint(ax + t * (bx - ax), ay + t * (by - ay));
      if (out.empty() || !(out.back() == img)) out.push_back(img);
    }
  }
  PLLoop result;
  for (const auto& p : out) {
    if (result.vertices.empty() || !(result.vertices.back() == p)) result.vertices.push_back(p);
  }
  while (result.vertices.size() > 1 && result.vertices.back() == result.vertices.front()) result.vertices.pop_back();
  return result;
}

std::vector<RationalPoint> removedCenters(FractalKind k, int maxLevel) {
  if (k == FractalKind::Menger) throw DomainError("removedCenters: planar spaces only");
  std::vector<RationalPoint> out;
  struct Cell {
    mpq_class x, y;
  };
  std::vector<Cell> cells{{0, 0}};
  mpq_class size = 1;
  for (int level = 1; level <= maxLevel; ++level) {
    std::vector<Cell> next;
    if (k == FractalKind::Carpet) {
      mpq_class s = size / 3;
      for (const auto& c : cells) {
        out.push_back({c.x + s * mpq_class(3, 2), c.y + s * mpq_class(3, 2)});
        for (int i = 0; i < 3; ++i) {
          for (int j = 0; j < 3; ++j) {
            if (i == 1 && j == 1) continue;
            next.push_back({c.x + s * i, c.y + s * j});
          }
        }
      }
      size = s;
    } else {
      mpq_class s = size / 2;
      for (const auto& c : cells) {
        out.push_back({c.x + size / 3, c.y + size / 3});
        next.push_back({c.x, c.y});
        next.push_back({c.x + s, c.y});
        next.push_back({c.x, c.y + s});
      }
      size = s;
    }
    cells = std::move(next);
  }
  for (auto& p : out) {
    p.x.canonicalize();
    p.y.canonicalize();
  }
  return out;
}

FractalWitness witnessLoops(FractalKind k, int level) {
  if (k == FractalKind::Menger) throw DomainError("witnessLoops: no planar winding certificate for the Menger sponge");
  auto P = [](long xn, long xd, long yn, long yd) {
    return PlanePoint{QuadNum::rational(xn, xd), QuadNum::rational(yn, yd)};
  };
  FractalWitness w;
  std::vector<RationalPoint> holes;
  if (k == FractalKind::Carpet) {
    w.loop = PLLoop{{P(0, 1, 0, 1), P(1, 3, 0, 1), P(1, 3, 2, 3), P(0, 1, 2, 3)}};
    holes = {{mpq_class(1, 6), mpq_class(1, 2)}};
  } else {
    const PlanePoint u0 = P(0, 1, 0, 1), u1 = P(1, 1, 0, 1);
    const PlanePoint v0 = P(1, 2, 1, 2), v1 = P(0, 1, 1, 2), v2 = P(1, 2, 0, 1);
    // gamma1 = v2 u1 v0, gamma0^-1 = v2 u0 v1.
    w.loop = PLLoop{{v2, u1, v0, v2, u0, v1}};
    holes = {{mpq_class(2, 3), mpq_class(1, 6)}, {mpq_class(1, 6), mpq_class(1, 6)}};
  }
  for (const auto& h : holes) w.holes.push_back({h, windingNumber(w.loop, h)});
  w.retracted = retractLoop(k, w.loop);
  const auto centers = removedCenters(k, level);
  w.centersChecked = centers.size();
  w.retractedProfileZero = true;
  if (w.retracted.vertices.size() >= 3) {
    for (const auto& c : centers) {
      if (windingNumber(w.retracted, c) != 0) {
        w.retractedProfileZero = false;
        break;
      }
    }
  }
  return w;
}

}  // namespace perfsurf
