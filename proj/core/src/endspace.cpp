#include "perfsurf/endspace.hpp"

#include <algorithm>
#include <utility>

#include "endspace_node.hpp"

namespace perfsurf {

using detail::NodeAccess;
using Kind = SpaceExpr::Kind;

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  // splitmix-style combine
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::uint64_t hashOrdinal(const Ordinal& o) {
  std::uint64_t h = 0x51ed270b;
  for (const auto& t : o.terms()) {
    h = mix(h, hashOrdinal(t.exponent));
    h = mix(h, t.coefficient);
  }
  return h;
}

std::optional<Label> maxOpt(std::optional<Label> a, std::optional<Label> b) {
  if (!a) return b;
  if (!b) return a;
  return std::max(*a, *b);
}

const auto& nodeOf(const SpaceExpr& e) { return *NodeAccess::node(e); }

}  // namespace

// ---------------------------------------------------------------------------
// Construction and access

SpaceExpr::SpaceExpr() = default;

SpaceExpr SpaceExpr::pt(Label label) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pt;
  n->label = label;
  n->maxLabel = n->designatedLabel = label;
  n->hash = mix(1, static_cast<std::uint64_t>(label));
  n->hasP = label == Label::P;
  return SpaceExpr(std::move(n));
}

SpaceExpr SpaceExpr::cantor(Label label) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Cantor;
  n->label = label;
  n->maxLabel = n->designatedLabel = label;
  n->hash = mix(2, static_cast<std::uint64_t>(label));
  n->hasP = n->hasCantorP = label == Label::P;
  return SpaceExpr(std::move(n));
}

SpaceExpr SpaceExpr::scat(Ordinal exponent, std::uint64_t count, Label label) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Scat;
  n->label = label;
  n->count = count;
  n->valid = count >= 1;
  n->transfinite = !exponent.isFinite();
  n->hash = mix(mix(mix(3, static_cast<std::uint64_t>(label)), hashOrdinal(exponent)), count);
  n->exponent = std::move(exponent);
  n->maxLabel = n->designatedLabel = label;
  n->hasP = label == Label::P;
  return SpaceExpr(std::move(n));
}

SpaceExpr SpaceExpr::sum(std::vector<SpaceExpr> summands) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sum;
  std::uint64_t h = 4;
  for (const auto& s : summands) {
    n->size += s.size();
    n->maxLabel = maxOpt(n->maxLabel, s.maxLabel());
    h = mix(h, s.isEmpty() ? 0 : nodeOf(s).hash);
    if (!s.isEmpty()) {
      n->transfinite |= nodeOf(s).transfinite;
      n->hasCantorP |= nodeOf(s).hasCantorP;
      n->hasP |= nodeOf(s).hasP;
    }
  }
  n->hash = h;
  n->valid = summands.size() >= 2 && std::all_of(summands.begin(), summands.end(), [](const SpaceExpr& c) {
    return !c.isEmpty() && nodeOf(c).valid;
  });
  if (!summands.empty()) n->designatedLabel = summands.front().designatedLabel();
  n->children = std::move(summands);
  return SpaceExpr(std::move(n));
}

SpaceExpr SpaceExpr::conv(SpaceExpr body, SpaceExpr apex) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Conv;
  n->size = 1 + body.size() + apex.size();
  n->maxLabel = maxOpt(body.maxLabel(), apex.maxLabel());
  n->designatedLabel = apex.designatedLabel();
  std::uint64_t h = 5;
  for (const SpaceExpr* s : {&body, &apex}) {
    h = mix(h, s->isEmpty() ? 0 : nodeOf(*s).hash);
    if (!s->isEmpty()) {
      n->transfinite |= nodeOf(*s).transfinite;
      n->hasCantorP |= nodeOf(*s).hasCantorP;
      n->hasP |= nodeOf(*s).hasP;
    }
  }
  n->hash = h;
  n->valid = !body.isEmpty() && !apex.isEmpty() && nodeOf(body).valid && nodeOf(apex).valid &&
             *apex.designatedLabel() >= *body.maxLabel();
  n->children = {std::move(body), std::move(apex)};
  return SpaceExpr(std::move(n));
}

std::size_t SpaceExpr::hash() const noexcept { return node_ ? static_cast<std::size_t>(node_->hash) : 0; }

SpaceExpr::Kind SpaceExpr::kind() const noexcept { return node_ ? node_->kind : Kind::Empty; }

bool SpaceExpr::isAtom() const noexcept {
  auto k = kind();
  return k == Kind::Pt || k == Kind::Cantor || k == Kind::Scat;
}

Label SpaceExpr::label() const {
  if (!isAtom()) throw DomainError("label() on a non-atomic expression");
  return node_->label;
}

const Ordinal& SpaceExpr::exponent() const {
  if (kind() != Kind::Scat) throw DomainError("exponent() on a non-Scat expression");
  return node_->exponent;
}

std::uint64_t SpaceExpr::count() const {
  if (kind() != Kind::Scat) throw DomainError("count() on a non-Scat expression");
  return node_->count;
}

std::span<const SpaceExpr> SpaceExpr::summands() const {
  if (kind() != Kind::Sum) throw DomainError("summands() on a non-Sum expression");
  return node_->children;
}

const SpaceExpr& SpaceExpr::body() const {
  if (kind() != Kind::Conv) throw DomainError("body() on a non-Conv expression");
  return node_->children[0];
}

const SpaceExpr& SpaceExpr::apex() const {
  if (kind() != Kind::Conv) throw DomainError("apex() on a non-Conv expression");
  return node_->children[1];
}

std::size_t SpaceExpr::size() const noexcept { return node_ ? node_->size : 1; }

std::optional<Label> SpaceExpr::maxLabel() const noexcept {
  return node_ ? node_->maxLabel : std::nullopt;
}

std::optional<Label> SpaceExpr::designatedLabel() const noexcept {
  return node_ ? node_->designatedLabel : std::nullopt;
}

bool operator==(const SpaceExpr& a, const SpaceExpr& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.hash != y.hash || x.kind != y.kind || x.size != y.size) return false;
  switch (x.kind) {
    case Kind::Empty:
      return true;
    case Kind::Pt:
    case Kind::Cantor:
      return x.label == y.label;
    case Kind::Scat:
      return x.label == y.label && x.count == y.count && x.exponent == y.exponent;
    case Kind::Sum:
    case Kind::Conv:
      return x.children == y.children;
  }
  return false;
}

std::strong_ordering operator<=>(const SpaceExpr& a, const SpaceExpr& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (!a.node_) return std::strong_ordering::equal;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  switch (x.kind) {
    case Kind::Empty:
      return std::strong_ordering::equal;
    case Kind::Pt:
    case Kind::Cantor:
      return x.label <=> y.label;
    case Kind::Scat:
      if (auto c = x.label <=> y.label; c != 0) return c;
      if (auto c = x.exponent <=> y.exponent; c != 0) return c;
      return x.count <=> y.count;
    case Kind::Sum:
    case Kind::Conv:
      return std::lexicographical_compare_three_way(x.children.begin(), x.children.end(),
                                                    y.children.begin(), y.children.end());
  }
  return std::strong_ordering::equal;
}

std::string_view toString(Label label) {
  switch (label) {
    case Label::P:
      return "p";
    case Label::NP:
      return "np";
    case Label::NO:
      return "no";
  }
  return "?";
}

std::optional<Label> parseLabel(std::string_view text) {
  if (text == "p" || text == "P") return Label::P;
  if (text == "np" || text == "NP") return Label::NP;
  if (text == "no" || text == "NO") return Label::NO;
  return std::nullopt;
}

std::strong_ordering operator<=>(const PointRank& a, const PointRank& b) {
  if (a.perfect != b.perfect) return a.perfect ? std::strong_ordering::greater : std::strong_ordering::less;
  if (a.perfect) return std::strong_ordering::equal;
  return a.level <=> b.level;
}

std::string toString(const PointRank& r) { return r.perfect ? "perfect" : toString(r.level); }

std::string_view toString(PlanarKind kind) {
  switch (kind) {
    case PlanarKind::None:
      return "None";
    case PlanarKind::CantorCompact:
      return "CantorCompact";
    case PlanarKind::CantorMinusPoint:
      return "CantorMinusPoint";
  }
  return "?";
}

std::string_view toString(Verdict v) {
  switch (v) {
    case Verdict::Equal:
      return "Equal";
    case Verdict::Distinct:
      return "Distinct";
    case Verdict::Unknown:
      return "Unknown";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Validation

namespace {

// Singly linked path segments, materialized only when a violation is found.
struct PathSeg {
  const PathSeg* parent;
  std::string_view name;
  int index;
};

std::string renderPath(const PathSeg* seg) {
  std::vector<const PathSeg*> chain;
  for (; seg != nullptr; seg = seg->parent) chain.push_back(seg);
  std::string out = "$";
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    out += ".";
    out += (*it)->name;
    if ((*it)->index >= 0) out += "[" + std::to_string((*it)->index) + "]";
  }
  return out;
}

std::optional<Violation> validateAt(const SpaceExpr& e, const PathSeg* path) {
  auto fail = [&](std::string message) {
    return std::optional<Violation>(Violation{renderPath(path), std::move(message)});
  };
  switch (e.kind()) {
    case Kind::Empty:
    case Kind::Pt:
    case Kind::Cantor:
      return std::nullopt;
    case Kind::Scat:
      if (e.count() == 0) return fail("Scat multiplicity must be >= 1");
      return std::nullopt;
    case Kind::Sum: {
      auto s = e.summands();
      if (s.size() < 2) return fail("Sum needs at least two summands");
      for (std::size_t i = 0; i < s.size(); ++i) {
        PathSeg seg{path, "summand", static_cast<int>(i)};
        if (s[i].isEmpty()) return Violation{renderPath(&seg), "Empty summand"};
        if (auto v = validateAt(s[i], &seg)) return v;
      }
      return std::nullopt;
    }
    case Kind::Conv: {
      PathSeg bodySeg{path, "body", -1};
      PathSeg apexSeg{path, "apex", -1};
      if (e.body().isEmpty()) return Violation{renderPath(&bodySeg), "Conv body must be nonempty"};
      if (e.apex().isEmpty()) return Violation{renderPath(&apexSeg), "Conv apex must be nonempty"};
      if (auto v = validateAt(e.body(), &bodySeg)) return v;
      if (auto v = validateAt(e.apex(), &apexSeg)) return v;
      if (*e.apex().designatedLabel() < *e.body().maxLabel()) {
        return fail("label closure: apex designated label " +
                    std::string(toString(*e.apex().designatedLabel())) +
                    " is below body label " + std::string(toString(*e.body().maxLabel())));
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace

bool detail::validQuick(const SpaceExpr& e) { return e.isEmpty() || nodeOf(e).valid; }

std::optional<Violation> validateExpr(const SpaceExpr& e) {
  if (detail::validQuick(e)) return std::nullopt;
  return validateAt(e, nullptr);
}

void requireValid(const SpaceExpr& e) {
  if (detail::validQuick(e)) return;
  if (auto v = validateAt(e, nullptr)) throw InvalidExpression(std::move(*v));
}

// ---------------------------------------------------------------------------
// Derivative

namespace {

SpaceExpr collapseSum(std::vector<SpaceExpr> parts) {
  if (parts.empty()) return SpaceExpr::empty();
  if (parts.size() == 1) return std::move(parts.front());
  return SpaceExpr::sum(std::move(parts));
}

SpaceExpr derivativeScat(const SpaceExpr& e) {
  const Ordinal& alpha = e.exponent();
  if (alpha.isZero()) return SpaceExpr::empty();
  // The limit points of w^a*n + 1 are w*b for 1 <= b <= w^a*n / w.
  Ordinal top = divideByOmega(Ordinal::omegaPower(alpha, e.count()));
  if (top.isFinite()) {
    // n isolated limit points w, w*2, ..., w*n.
    std::uint64_t n = *top.asFinite();
    return n >= 2 ? SpaceExpr::scat(0, n - 1, e.label()) : SpaceExpr::pt(e.label());
  }
  const OrdinalTerm& lead = top.terms().front();
  if (lead.exponent == alpha) return e;  // exponent >= w: homeomorphic copy
  return SpaceExpr::scat(lead.exponent, lead.coefficient, e.label());
}

SpaceExpr derivativeKeep(const SpaceExpr& e);
SpaceExpr derivativeCompute(const SpaceExpr& e);

SpaceExpr derivativeImpl(const SpaceExpr& e) {
  return NodeAccess::memoized(e, [](const auto& n) -> detail::ExprMemo& { return n.derivative; }, derivativeCompute);
}

SpaceExpr derivativeCompute(const SpaceExpr& e) {
  switch (e.kind()) {
    case Kind::Empty:
    case Kind::Pt:
      return SpaceExpr::empty();
    case Kind::Cantor:
      return e;
    case Kind::Scat:
      return derivativeScat(e);
    case Kind::Sum: {
      std::vector<SpaceExpr> parts;
      bool same = true;
      for (const auto& s : e.summands()) {
        SpaceExpr d = derivativeImpl(s);
        same = same && d.sameNode(s);
        if (!d.isEmpty()) parts.push_back(std::move(d));
      }
      if (same) return e;
      return collapseSum(std::move(parts));
    }
    case Kind::Conv: {
      SpaceExpr body = derivativeImpl(e.body());
      SpaceExpr apex = derivativeKeep(e.apex());
      if (body.isEmpty()) return apex;
      if (body.sameNode(e.body()) && apex.sameNode(e.apex())) return e;
      return SpaceExpr::conv(std::move(body), std::move(apex));
    }
  }
  return SpaceExpr::empty();
}

SpaceExpr derivativeKeepCompute(const SpaceExpr& e);

// Derivative that always retains the designated point (it is a limit of the
// body copies of an enclosing Conv).
SpaceExpr derivativeKeep(const SpaceExpr& e) {
  return NodeAccess::memoized(e, [](const auto& n) -> detail::ExprMemo& { return n.derivativeKeep; },
                              derivativeKeepCompute);
}

SpaceExpr derivativeKeepCompute(const SpaceExpr& e) {
  switch (e.kind()) {
    case Kind::Empty:
    case Kind::Pt:
    case Kind::Cantor:
      return e;
    case Kind::Scat:
      if (e.exponent().isZero()) return SpaceExpr::pt(e.label());
      return derivativeImpl(e);
    case Kind::Sum: {
      auto s = e.summands();
      std::vector<SpaceExpr> parts;
      parts.push_back(derivativeKeep(s[0]));
      bool same = parts.back().sameNode(s[0]);
      for (std::size_t i = 1; i < s.size(); ++i) {
        SpaceExpr d = derivativeImpl(s[i]);
        same = same && d.sameNode(s[i]);
        if (!d.isEmpty()) parts.push_back(std::move(d));
      }
      if (same) return e;
      return collapseSum(std::move(parts));
    }
    case Kind::Conv:
      return derivativeImpl(e);
  }
  return e;
}

}  // namespace

SpaceExpr detail::derivativeUnchecked(const SpaceExpr& e) { return derivativeImpl(e); }

SpaceExpr derivative(const SpaceExpr& e) {
  requireValid(e);
  return derivativeImpl(e);
}

// ---------------------------------------------------------------------------
// Rank

namespace {

// Structural rank data for terms with transfinite Scat exponents.
struct RankSummary {
  Ordinal rank;       // rank of the whole space
  Ordinal restRank;   // rank contribution of the points other than the designated one
  PointRank designated;
  bool kernel = false;
};

Ordinal pointContribution(const PointRank& r) { return r.perfect ? Ordinal{} : succ(r.level); }

RankSummary summarize(const SpaceExpr& e) {
  RankSummary s;
  switch (e.kind()) {
    case Kind::Empty:
      return s;
    case Kind::Pt:
      s.designated = PointRank::of(Ordinal{});
      break;
    case Kind::Cantor:
      s.designated = PointRank::perfectPoint();
      s.kernel = true;
      break;
    case Kind::Scat: {
      const Ordinal& a = e.exponent();
      s.designated = PointRank::of(a);
      if (a.isZero()) {
        s.restRank = Ordinal::finite(1);
      } else {
        s.restRank = e.count() >= 2 ? succ(a) : a;
      }
      break;
    }
    case Kind::Sum: {
      auto parts = e.summands();
      RankSummary first = summarize(parts[0]);
      s.designated = first.designated;
      s.restRank = first.restRank;
      s.kernel = first.kernel;
      for (std::size_t i = 1; i < parts.size(); ++i) {
        RankSummary other = summarize(parts[i]);
        s.restRank = maxOrdinal(s.restRank, other.rank);
        s.kernel = s.kernel || other.kernel;
      }
      break;
    }
    case Kind::Conv: {
      RankSummary body = summarize(e.body());
      RankSummary apex = summarize(e.apex());
      if (body.kernel || apex.designated.perfect) {
        s.designated = PointRank::perfectPoint();
      } else {
        s.designated = PointRank::of(maxOrdinal(body.rank, apex.designated.level));
      }
      s.restRank = maxOrdinal(body.rank, apex.restRank);
      s.kernel = body.kernel || apex.kernel;
      break;
    }
  }
  s.rank = maxOrdinal(s.restRank, pointContribution(s.designated));
  return s;
}

// Replaces every Scat with exponent >= w by a point of the same label. The
// perfect kernel is unchanged: such atoms are scattered and only their
// designated point can be a limit of perfect copies.
SpaceExpr collapseTransfinite(const SpaceExpr& e) {
  if (!detail::isTransfinite(e)) return e;
  switch (e.kind()) {
    case Kind::Scat:
      return SpaceExpr::pt(e.label());
    case Kind::Sum: {
      std::vector<SpaceExpr> parts;
      for (const auto& s : e.summands()) parts.push_back(collapseTransfinite(s));
      return SpaceExpr::sum(std::move(parts));
    }
    case Kind::Conv:
      return SpaceExpr::conv(collapseTransfinite(e.body()), collapseTransfinite(e.apex()));
    default:
      return e;
  }
}

// Derivative iteration on a term whose ranks are all finite.
RankResult iterateToKernel(SpaceExpr e) {
  std::uint64_t steps = 0;
  for (;;) {
    SpaceExpr next = derivativeImpl(e);
    if (next == e) return {Ordinal::finite(steps), std::move(e)};
    e = std::move(next);
    ++steps;
  }
}

RankResult rankCompute(const SpaceExpr& e) {
  if (!detail::isTransfinite(e)) return iterateToKernel(e);
  RankResult finite = iterateToKernel(collapseTransfinite(e));
  return {summarize(e).rank, std::move(finite.kernel)};
}

}  // namespace

RankResult detail::rankUnchecked(const SpaceExpr& e) {
  if (e.isEmpty()) return rankCompute(e);
  detail::RankMemo& m = nodeOf(e).rank;
  std::call_once(m.once, [&] {
    RankResult r = rankCompute(e);
    m.rank = std::move(r.rank);
    NodeAccess::store(e, m.kernel, r.kernel);
  });
  return {m.rank, NodeAccess::load(e, m.kernel)};
}

RankResult rank(const SpaceExpr& e) {
  requireValid(e);
  return detail::rankUnchecked(e);
}

PointRank detail::designatedRankUnchecked(const SpaceExpr& e) {
  switch (e.kind()) {
    case Kind::Empty:
      throw DomainError("designatedRank of the empty space");
    case Kind::Pt:
      return PointRank::of(Ordinal{});
    case Kind::Cantor:
      return PointRank::perfectPoint();
    case Kind::Scat:
      return PointRank::of(e.exponent());
    case Kind::Sum:
      return designatedRankUnchecked(e.summands()[0]);
    case Kind::Conv: {
      RankResult body = rankUnchecked(e.body());
      if (!body.kernel.isEmpty()) return PointRank::perfectPoint();
      PointRank apex = designatedRankUnchecked(e.apex());
      if (apex.perfect) return apex;
      return PointRank::of(maxOrdinal(body.rank, apex.level));
    }
  }
  return PointRank::perfectPoint();
}

PointRank designatedRank(const SpaceExpr& e) {
  requireValid(e);
  return detail::designatedRankUnchecked(e);
}

// ---------------------------------------------------------------------------
// Label restriction and planar normalization

SpaceExpr detail::restrictUnchecked(const SpaceExpr& e, Label atLeast) {
  if (e.isEmpty()) return e;
  if (*e.maxLabel() < atLeast) return SpaceExpr::empty();
  switch (e.kind()) {
    case Kind::Pt:
    case Kind::Cantor:
    case Kind::Scat:
      return e;  // label >= atLeast, checked above
    case Kind::Sum: {
      std::vector<SpaceExpr> parts;
      bool same = true;
      for (const auto& s : e.summands()) {
        SpaceExpr r = restrictUnchecked(s, atLeast);
        same = same && r.sameNode(s);
        if (!r.isEmpty()) parts.push_back(std::move(r));
      }
      if (same) return e;
      return collapseSum(std::move(parts));
    }
    case Kind::Conv: {
      SpaceExpr body = restrictUnchecked(e.body(), atLeast);
      SpaceExpr apex = restrictUnchecked(e.apex(), atLeast);
      if (body.isEmpty()) return apex;
      if (body.sameNode(e.body()) && apex.sameNode(e.apex())) return e;
      return SpaceExpr::conv(std::move(body), std::move(apex));
    }
    default:
      return e;
  }
}

SpaceExpr restrictAtLeast(const SpaceExpr& e, Label atLeast) {
  requireValid(e);
  return detail::restrictUnchecked(e, atLeast);
}

namespace {

// keepDesignated: the designated point is a limit of planar Cantor copies and
// so lies in the perfect part of E_p.
SpaceExpr removePlanar(const SpaceExpr& e, bool keepDesignated) {
  if (!detail::hasPlanarAtom(e)) return e;
  switch (e.kind()) {
    case Kind::Pt:
    case Kind::Scat:
      // Label is P here.
      return keepDesignated ? SpaceExpr::pt(Label::P) : SpaceExpr::empty();
    case Kind::Cantor:
      return e;
    case Kind::Sum: {
      auto s = e.summands();
      std::vector<SpaceExpr> parts;
      bool same = true;
      for (std::size_t i = 0; i < s.size(); ++i) {
        SpaceExpr r = removePlanar(s[i], keepDesignated && i == 0);
        same = same && r.sameNode(s[i]);
        if (!r.isEmpty()) parts.push_back(std::move(r));
      }
      if (same) return e;
      return collapseSum(std::move(parts));
    }
    case Kind::Conv: {
      SpaceExpr body = removePlanar(e.body(), false);
      if (body.isEmpty()) return removePlanar(e.apex(), keepDesignated);
      SpaceExpr apex = removePlanar(e.apex(), keepDesignated || detail::hasCantorP(body));
      if (body.sameNode(e.body()) && apex.sameNode(e.apex())) return e;
      return SpaceExpr::conv(std::move(body), std::move(apex));
    }
    default:
      return e;
  }
}

}  // namespace

SpaceExpr detail::removeCountablePlanarUnchecked(const SpaceExpr& e) {
  return removePlanar(e, false);
}

SpaceExpr removeCountablePlanar(const SpaceExpr& e) {
  requireValid(e);
  SpaceExpr out = removePlanar(e, false);
  requireValid(out);
  return out;
}

bool isPlanarNormalized(const SpaceExpr& e) {
  requireValid(e);
  return removePlanar(e, false) == e;
}

namespace {

void requireNormalized(const SpaceExpr& e, const char* op) {
  requireValid(e);
  if (!(removePlanar(e, false) == e)) {
    throw DomainError(std::string(op) +
                      ": the planar part still has a countable open subset; "
                      "apply removeCountablePlanar first");
  }
}

// True when some Cantor(P) atom sits in the body of a Conv whose apex has a
// designated label above P.
bool planarAccumulatesOnNonPlanar(const SpaceExpr& e) {
  if (!detail::hasCantorP(e)) return false;
  switch (e.kind()) {
    case Kind::Sum:
      for (const auto& s : e.summands()) {
        if (planarAccumulatesOnNonPlanar(s)) return true;
      }
      return false;
    case Kind::Conv:
      if (detail::hasCantorP(e.body()) && *e.apex().designatedLabel() > Label::P) return true;
      return planarAccumulatesOnNonPlanar(e.body()) || planarAccumulatesOnNonPlanar(e.apex());
    default:
      return false;
  }
}

}  // namespace

PlanarKind planarKind(const SpaceExpr& e) {
  requireNormalized(e, "planarKind");
  if (!detail::hasPlanarAtom(e)) return PlanarKind::None;
  return planarAccumulatesOnNonPlanar(e) ? PlanarKind::CantorMinusPoint : PlanarKind::CantorCompact;
}

namespace {

enum class Edge : std::uint8_t { Root, FirstSummand, OtherSummand, Body, Apex };

struct TraceFrame {
  const SpaceExpr* expr;
  Edge edge;  // how this node hangs off its parent
};

class TraceCollector {
 public:
  std::set<PointRank> run(const SpaceExpr& root) {
    stack_.push_back({&root, Edge::Root});
    visit(root);
    return std::move(result_);
  }

 private:
  void visit(const SpaceExpr& e) {
    if (!detail::hasCantorP(e)) return;
    switch (e.kind()) {
      case Kind::Cantor:
        collect();
        return;
      case Kind::Sum: {
        auto s = e.summands();
        for (std::size_t i = 0; i < s.size(); ++i) {
          stack_.push_back({&s[i], i == 0 ? Edge::FirstSummand : Edge::OtherSummand});
          visit(s[i]);
          stack_.pop_back();
        }
        return;
      }
      case Kind::Conv:
        stack_.push_back({&e.body(), Edge::Body});
        visit(e.body());
        stack_.pop_back();
        stack_.push_back({&e.apex(), Edge::Apex});
        visit(e.apex());
        stack_.pop_back();
        return;
      default:
        return;
    }
  }

  // Called at a Cantor(P) atom; stack_.back() is the atom.
  void collect() {
    for (std::size_t i = stack_.size(); i-- > 1;) {
      if (stack_[i].edge != Edge::Body) continue;
      // stack_[i-1] is a Conv whose body contains the atom.
      const SpaceExpr& conv = *stack_[i - 1].expr;
      if (*conv.apex().designatedLabel() < Label::NP) continue;
      // Climb while the designated point stays the same point.
      std::size_t top = i - 1;
      while (top > 0 && (stack_[top].edge == Edge::Apex || stack_[top].edge == Edge::FirstSummand)) {
        --top;
      }
      if (!seen_.insert(stack_[top].expr).second) continue;
      SpaceExpr nonPlanar = detail::restrictUnchecked(*stack_[top].expr, Label::NP);
      result_.insert(detail::designatedRankUnchecked(nonPlanar));
    }
  }

  std::vector<TraceFrame> stack_;
  std::set<const SpaceExpr*> seen_;
  std::set<PointRank> result_;
};

}  // namespace

std::set<PointRank> planarTrace(const SpaceExpr& e) {
  requireNormalized(e, "planarTrace");
  return TraceCollector().run(e);
}

// ---------------------------------------------------------------------------
// Fingerprints and comparison

Fingerprint fingerprint(const SpaceExpr& e) {
  requireValid(e);
  Fingerprint f;
  RankResult whole = detail::rankUnchecked(e);
  f.rankE = std::move(whole.rank);
  f.kernelE = !whole.kernel.isEmpty();
  RankResult np = detail::rankUnchecked(detail::restrictUnchecked(e, Label::NP));
  f.rankNP = std::move(np.rank);
  f.kernelNP = !np.kernel.isEmpty();
  RankResult no = detail::rankUnchecked(detail::restrictUnchecked(e, Label::NO));
  f.rankNO = std::move(no.rank);
  f.kernelNO = !no.kernel.isEmpty();
  SpaceExpr normalized = removePlanar(e, false);
  f.planarKind = planarKind(normalized);
  f.planarTrace = TraceCollector().run(normalized);
  return f;
}

Verdict equivalent(const SpaceExpr& a, const SpaceExpr& b) {
  SpaceExpr na = canonicalize(removeCountablePlanar(a));
  SpaceExpr nb = canonicalize(removeCountablePlanar(b));
  if (na == nb) return Verdict::Equal;
  if (!(fingerprint(na) == fingerprint(nb))) return Verdict::Distinct;
  return Verdict::Unknown;
}

}  // namespace perfsurf
