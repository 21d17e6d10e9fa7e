#pragma once

// Private node layout shared by the endspace translation units.

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "perfsurf/endspace.hpp"

namespace perfsurf {

namespace detail {

// Lazily computed term attached to a node. `self` marks a result equal to the
// owning node, which must not hold a reference to itself.
struct ExprMemo {
  std::once_flag once;
  SpaceExpr value;
  bool self = false;
};

struct RankMemo {
  std::once_flag once;
  Ordinal rank;
  ExprMemo kernel;
};

}  // namespace detail

struct SpaceExpr::Node {
  Kind kind = Kind::Empty;
  Label label = Label::P;
  Ordinal exponent;
  std::uint64_t count = 0;
  std::vector<SpaceExpr> children;  // summands, or {body, apex}

  // Cached on construction.
  std::size_t size = 1;
  std::optional<Label> maxLabel;
  std::optional<Label> designatedLabel;
  std::uint64_t hash = 0;
  bool transfinite = false;  // some Scat exponent is >= w
  bool hasCantorP = false;   // some Cantor(P) atom
  bool hasP = false;         // some P-labeled atom
  bool valid = true;         // validQuick

  mutable detail::ExprMemo derivative;
  mutable detail::ExprMemo derivativeKeep;
  mutable detail::ExprMemo canonical[2];  // one pass, indexed by `designated`
  mutable detail::RankMemo rank;
};

namespace detail {

struct NodeAccess {
  // Null for Empty.
  static const SpaceExpr::Node* node(const SpaceExpr& e) { return e.node_.get(); }

  static SpaceExpr load(const SpaceExpr& owner, const ExprMemo& m) {
    return m.self ? owner : m.value;
  }
  static void store(const SpaceExpr& owner, ExprMemo& m, const SpaceExpr& value) {
    if (value.node_ == owner.node_) {
      m.self = true;
    } else {
      m.value = value;
    }
  }

  // Result of compute(e), computed once per node. Empty is not memoized.
  template <typename Slot, typename F>
  static SpaceExpr memoized(const SpaceExpr& e, Slot slot, F&& compute) {
    if (!e.node_) return compute(e);
    ExprMemo& m = slot(*e.node_);
    std::call_once(m.once, [&] { store(e, m, compute(e)); });
    return load(e, m);
  }
};

inline bool isTransfinite(const SpaceExpr& e) {
  auto* n = NodeAccess::node(e);
  return n != nullptr && n->transfinite;
}
inline bool hasCantorP(const SpaceExpr& e) {
  auto* n = NodeAccess::node(e);
  return n != nullptr && n->hasCantorP;
}
inline bool hasPlanarAtom(const SpaceExpr& e) {
  auto* n = NodeAccess::node(e);
  return n != nullptr && n->hasP;
}

// Unchecked kernels; callers validate first.
SpaceExpr derivativeUnchecked(const SpaceExpr& e);
RankResult rankUnchecked(const SpaceExpr& e);
PointRank designatedRankUnchecked(const SpaceExpr& e);
SpaceExpr restrictUnchecked(const SpaceExpr& e, Label atLeast);
SpaceExpr removeCountablePlanarUnchecked(const SpaceExpr& e);
bool validQuick(const SpaceExpr& e);

}  // namespace detail

}  // namespace perfsurf
