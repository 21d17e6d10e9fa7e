#include "perfsurf/nonhopf.hpp"

#include <algorithm>

#include "perfsurf/error.hpp"

namespace perfsurf {

namespace {

struct Node {
  PlanePoint p;
  QuadNum param;
};

// Vertices plus the points where edges cross the vertical lines x = c for c
// in `cuts`. For a closed polygon the last node repeats the first at param 1.
std::vector<Node> refine(const std::vector<PlanePoint>& vs, bool closed, const std::vector<long>& cuts) {
  const std::size_t edges = closed ? vs.size() : vs.size() - 1;
  const QuadNum n(static_cast<long>(edges));
  std::vector<Node> out;
  for (std::size_t i = 0; i < edges; ++i) {
    const PlanePoint& a = vs[i];
    const PlanePoint& b = vs[i + 1 == vs.size() ? 0 : i + 1];
    const QuadNum base = QuadNum(static_cast<long>(i)) / n;
    out.push_back({a, base});
    const QuadNum dx = b.x - a.x;
    if (dx.isZero()) continue;
    std::vector<std::pair<QuadNum, long>> hits;  // (s, cut)
    for (long c : cuts) {
      QuadNum s = (QuadNum(c) - a.x) / dx;
      if (s.sign() > 0 && s < QuadNum(1)) hits.emplace_back(std::move(s), c);
    }
    std::sort(hits.begin(), hits.end(), [](const auto& u, const auto& v) { return u.first < v.first; });
    for (auto& [s, c] : hits) {
      out.push_back({{QuadNum(c), a.y + s * (b.y - a.y)}, base + s / n});
    }
  }
  out.push_back({vs[closed ? 0 : vs.size() - 1], QuadNum(1)});
  return out;
}

void pushDistinct(std::vector<PlanePoint>& out, const PlanePoint& p) {
  if (out.empty() || !(out.back() == p)) out.push_back(p);
}

PlanePoint shifted(const PlanePoint& p, long dx) { return {p.x + QuadNum(dx), p.y}; }

// sigma * (nodes[first..last] + 2) * tau^-1 appended to out.
void appendShiftedBlock(const std::vector<Node>& nodes, std::size_t first, std::size_t last,
                        std::vector<PlanePoint>& out) {
  pushDistinct(out, nodes[first].p);
  for (std::size_t k = first; k <= last; ++k) pushDistinct(out, shifted(nodes[k].p, 2));
  pushDistinct(out, nodes[last].p);
}

bool isZeroX(const Node& n) { return n.p.x.isZero(); }

// Core of liftLeftOfOne on refined nodes [first, last], both on x = 0.
void liftLeftOfOneNodes(const std::vector<Node>& nodes, std::size_t first, std::size_t last,
                        std::vector<PlanePoint>& out) {
  const QuadNum minusOne(-1);
  std::vector<std::size_t> zeros;
  for (std::size_t k = first; k <= last; ++k) {
    if (!(nodes[k].p.x < QuadNum(1))) throw DomainError("liftLeftOfOne: path reaches x >= 1");
    if (isZeroX(nodes[k])) zeros.push_back(k);
  }
  pushDistinct(out, nodes[first].p);
  std::optional<std::size_t> blockStart;
  for (std::size_t z = 0; z + 1 < zeros.size(); ++z) {
    const std::size_t a = zeros[z];
    const std::size_t b = zeros[z + 1];
    bool dips = false;
    for (std::size_t k = a; k <= b && !dips; ++k) dips = !(minusOne < nodes[k].p.x);
    if (!dips) {
      if (!blockStart) blockStart = a;
      continue;
    }
    if (blockStart) {
      appendShiftedBlock(nodes, *blockStart, a, out);
      blockStart.reset();
    }
    for (std::size_t k = a; k <= b; ++k) pushDistinct(out, nodes[k].p);
  }
  if (blockStart) appendShiftedBlock(nodes, *blockStart, zeros.back(), out);
}

struct NodeRange {
  std::size_t first;
  std::size_t last;
};

struct Decomposition {
  std::vector<Node> nodes;
  std::vector<NodeRange> J;
  std::vector<NodeRange> I;
};

Decomposition decompose(const PLLoop& loop) {
  requireWellFormed(loop);
  if (!loop.basepoint().x.isZero()) throw DomainError("decomposeCase3: basepoint must lie on x = 0");
  requireAvoidsLattice(loop);
  Decomposition d;
  d.nodes = refine(loop.vertices, true, {-1, 0, 1});
  const auto& nodes = d.nodes;
  const QuadNum minusOne(-1);
  const QuadNum one(1);
  // Components of {x > -1} are runs of consecutive nodes with x > -1 (x is
  // linear between nodes and never crosses -1 inside a segment).
  std::size_t k = 0;
  while (k < nodes.size()) {
    if (!(minusOne < nodes[k].p.x)) {
      ++k;
      continue;
    }
    std::size_t s = k;
    while (k + 1 < nodes.size() && minusOne < nodes[k + 1].p.x) ++k;
    std::size_t e = k++;
    bool reachesOne = false;
    std::optional<std::size_t> firstZero, lastZero;
    for (std::size_t j = s; j <= e; ++j) {
      if (!(nodes[j].p.x < one)) reachesOne = true;
      if (isZeroX(nodes[j])) {
        if (!firstZero) firstZero = j;
        lastZero = j;
      }
    }
    if (!reachesOne) continue;
    if (!firstZero || *firstZero == *lastZero) {
      throw DomainError("decomposeCase3: component reaching x = 1 without two crossings of x = 0");
    }
    d.J.push_back({*firstZero, *lastZero});
  }
  std::size_t cursor = 0;
  for (const auto& j : d.J) {
    if (j.first > cursor) d.I.push_back({cursor, j.first});
    cursor = j.last;
  }
  if (cursor < nodes.size() - 1) d.I.push_back({cursor, nodes.size() - 1});
  return d;
}

ParamInterval paramsOf(const Decomposition& d, const NodeRange& r) {
  return {d.nodes[r.first].param, d.nodes[r.last].param};
}

}  // namespace

PlanePoint mapF(const PlanePoint& p) {
  if (p.x.sign() <= 0) return p;
  if (!(QuadNum(1) < p.x)) return {-p.x, p.y};
  return {p.x - QuadNum(2), p.y};
}

PLPath applyF(const PLPath& path) {
  requireWellFormed(path);
  requireAvoidsLattice(path);
  PLPath out;
  for (const auto& n : refine(path.vertices, false, {0, 1})) out.vertices.push_back(mapF(n.p));
  return out;
}

PLLoop applyF(const PLLoop& loop) {
  requireWellFormed(loop);
  requireAvoidsLattice(loop);
  auto nodes = refine(loop.vertices, true, {0, 1});
  nodes.pop_back();
  PLLoop out;
  for (const auto& n : nodes) out.vertices.push_back(mapF(n.p));
  return out;
}

Case3Decomposition decomposeCase3(const PLLoop& loop) {
  Decomposition d = decompose(loop);
  Case3Decomposition out;
  for (const auto& j : d.J) out.J.push_back(paramsOf(d, j));
  for (const auto& i : d.I) out.complements.push_back(paramsOf(d, i));
  return out;
}

PLPath liftLeftOfOne(const PLPath& path) {
  requireWellFormed(path);
  requireAvoidsLattice(path);
  if (!path.vertices.front().x.isZero() || !path.vertices.back().x.isZero()) {
    throw DomainError("liftLeftOfOne: endpoints must lie on x = 0");
  }
  auto nodes = refine(path.vertices, false, {-1, 0, 1});
  PLPath out;
  liftLeftOfOneNodes(nodes, 0, nodes.size() - 1, out.vertices);
  requireAvoidsLattice(out);
  return out;
}

std::string_view toString(LiftCase c) {
  switch (c) {
    case LiftCase::Case1:
      return "Case1";
    case LiftCase::Case2:
      return "Case2";
    case LiftCase::Case3:
      return "Case3";
    case LiftCase::LeftOfOne:
      return "LeftOfOne";
  }
  return "?";
}

PlanePoint liftBasepoint() { return {QuadNum(0), QuadNum::sqrt2()}; }

LiftReport liftLoop(const PLLoop& loop, std::uint64_t D) {
  requireWellFormed(loop);
  if (!(loop.basepoint() == liftBasepoint())) throw DomainError("liftLoop: loop must be based at (0, r2)");
  Decomposition d = decompose(loop);
  LiftReport report;
  report.input = loop;
  report.profileD = D;

  const bool leftHalf = std::all_of(loop.vertices.begin(), loop.vertices.end(),
                                    [](const PlanePoint& p) { return p.x.sign() <= 0; });
  std::vector<PlanePoint> out;
  if (leftHalf) {
    report.liftCase = LiftCase::Case1;
    report.lifted = loop;
    report.caseTrace.push_back({CaseTraceEntry::Kind::I, {QuadNum(0), QuadNum(1)}});
  } else {
    if (d.J.empty()) {
      report.liftCase = LiftCase::LeftOfOne;
    } else if (d.J.size() == 1 && d.J[0].first == 0 && d.J[0].last == d.nodes.size() - 1) {
      report.liftCase = LiftCase::Case2;
    } else {
      report.liftCase = LiftCase::Case3;
    }
    // Walk J and I ranges in parameter order.
    std::size_t ji = 0, ii = 0;
    std::size_t cursor = 0;
    while (cursor < d.nodes.size() - 1) {
      if (ji < d.J.size() && d.J[ji].first == cursor) {
        appendShiftedBlock(d.nodes, d.J[ji].first, d.J[ji].last, out);
        report.caseTrace.push_back({CaseTraceEntry::Kind::J, paramsOf(d, d.J[ji])});
        cursor = d.J[ji++].last;
      } else {
        const NodeRange& r = d.I.at(ii++);
        liftLeftOfOneNodes(d.nodes, r.first, r.last, out);
        report.caseTrace.push_back({CaseTraceEntry::Kind::I, paramsOf(d, r)});
        cursor = r.last;
      }
    }
    report.lifted = loopFromClosedPath(PLPath{out});
    requireAvoidsLattice(report.lifted);
  }
  report.match = !profileDifference(applyF(report.lifted), loop, D).has_value();
  return report;
}

KernelWitness kernelWitness() {
  const QuadNum r2 = QuadNum::sqrt2();
  const QuadNum half = QuadNum::rational(1, 2);
  PLLoop alpha{{{-half, r2}, {QuadNum(0), r2 - half}, {half, r2}, {QuadNum(0), r2 + half}}};
  return {alpha, RationalPoint{mpq_class(1, 4), mpq_class(3, 2)}};
}

}  // namespace perfsurf
