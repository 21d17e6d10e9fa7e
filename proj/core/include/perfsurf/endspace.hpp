#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "perfsurf/error.hpp"
#include "perfsurf/ordinal.hpp"

namespace perfsurf {

namespace detail {
struct NodeAccess;
}

/// End type. Ordered P < NP < NO; the set of points with label >= NP (resp.
/// >= NO) is the non-planar (resp. non-orientable) end set.
enum class Label : std::uint8_t { P = 0, NP = 1, NO = 2 };

std::string_view toString(Label label);
std::optional<Label> parseLabel(std::string_view text);

/// A finite term denoting a labeled closed subset of the Cantor set.
///
///   Empty
///   Pt(l)            a single point
///   Cantor(l)        a Cantor set
///   Scat(a, n, l)    the ordinal space w^a * n + 1
///   Sum(e1..ek)      clopen disjoint union, k >= 2
///   Conv(body, apex) apex plus clopen copies of body converging to the
///                    designated point of apex
///
/// Every nonempty term has a designated point: the point itself, a fixed
/// point of the Cantor set, the maximum of a Scat, the designated point of
/// the first summand, or of the apex.
///
/// Terms are immutable and share subterms, so copies are cheap. Invalid terms
/// (an Empty summand, a Scat with n = 0, a label-closure failure) can be
/// built; validateExpr reports them and every operation below rejects them.
class SpaceExpr {
 public:
  enum class Kind : std::uint8_t { Empty, Pt, Cantor, Scat, Sum, Conv };

  SpaceExpr();

  static SpaceExpr empty() { return SpaceExpr(); }
  static SpaceExpr pt(Label label);
  static SpaceExpr cantor(Label label);
  static SpaceExpr scat(Ordinal exponent, std::uint64_t count, Label label);
  static SpaceExpr scat(std::uint64_t exponent, std::uint64_t count, Label label) {
    return scat(Ordinal::finite(exponent), count, label);
  }
  static SpaceExpr sum(std::vector<SpaceExpr> summands);
  static SpaceExpr conv(SpaceExpr body, SpaceExpr apex);

  Kind kind() const noexcept;
  bool isEmpty() const noexcept { return kind() == Kind::Empty; }
  bool isAtom() const noexcept;

  /// Atoms only.
  Label label() const;
  /// Scat only.
  const Ordinal& exponent() const;
  std::uint64_t count() const;
  /// Sum only.
  std::span<const SpaceExpr> summands() const;
  /// Conv only.
  const SpaceExpr& body() const;
  const SpaceExpr& apex() const;

  /// Number of nodes.
  std::size_t size() const noexcept;
  /// Largest label occurring in the term; nullopt for Empty.
  std::optional<Label> maxLabel() const noexcept;
  /// Label of the designated point; nullopt for Empty.
  std::optional<Label> designatedLabel() const noexcept;

  bool sameNode(const SpaceExpr& other) const noexcept { return node_ == other.node_; }
  /// Structural hash, consistent with ==.
  std::size_t hash() const noexcept;

  friend bool operator==(const SpaceExpr& a, const SpaceExpr& b);
  /// Fixed total order used to sort Sum lists.
  friend std::strong_ordering operator<=>(const SpaceExpr& a, const SpaceExpr& b);

 private:
  friend struct detail::NodeAccess;
  struct Node;
  explicit SpaceExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

}  // namespace perfsurf

template <>
struct std::hash<perfsurf::SpaceExpr> {
  std::size_t operator()(const perfsurf::SpaceExpr& e) const noexcept { return e.hash(); }
};

namespace perfsurf {

/// Renders the expression grammar, e.g. "conv(cantor(p), scat(2,1,np))".
std::string toString(const SpaceExpr& e);

/// First failed invariant, with a path such as "$.summand[1].apex".
struct Violation {
  std::string path;
  std::string message;
};

class InvalidExpression : public DomainError {
 public:
  explicit InvalidExpression(Violation v)
      : DomainError(v.path + ": " + v.message), violation_(std::move(v)) {}
  const Violation& violation() const noexcept { return violation_; }

 private:
  Violation violation_;
};

std::optional<Violation> validateExpr(const SpaceExpr& e);

/// Throws InvalidExpression when validateExpr fails.
void requireValid(const SpaceExpr& e);

/// Parses the expression grammar and validates the result.
///   expr    := "empty" | "pt(" label ")" | "cantor(" label ")"
///            | "scat(" ordinal "," int "," label ")"
///            | "sum(" expr {"," expr} ")" | "conv(" expr "," expr ")"
///   label   := "p" | "np" | "no"
/// Throws ParseError (with byte position) or InvalidExpression.
SpaceExpr parseExpr(std::string_view text);

/// Parses without validating; for tools that want to report violations.
SpaceExpr parseExprUnchecked(std::string_view text);

// ---------------------------------------------------------------------------
// Cantor-Bendixson calculus

/// Cantor-Bendixson derivative (the set of limit points).
SpaceExpr derivative(const SpaceExpr& e);

struct RankResult {
  Ordinal rank;       // least l with D^l(e) = D^(l+1)(e)
  SpaceExpr kernel;   // perfect kernel, possibly Empty
};

/// Rank by derivative iteration; terms with Scat exponents >= w use the
/// closed form rank(Scat(a,n,l)) = a + 1 combined structurally.
RankResult rank(const SpaceExpr& e);

/// Survival level of a point: an ordinal, or Perfect (in the kernel).
struct PointRank {
  bool perfect = false;
  Ordinal level;

  static PointRank of(Ordinal level) { return {false, std::move(level)}; }
  static PointRank perfectPoint() { return {true, Ordinal{}}; }

  friend bool operator==(const PointRank&, const PointRank&) = default;
  /// Ordinals first, Perfect last.
  friend std::strong_ordering operator<=>(const PointRank& a, const PointRank& b);
};

std::string toString(const PointRank& r);

/// Largest l such that the designated point survives l derivatives.
/// Throws DomainError on Empty.
PointRank designatedRank(const SpaceExpr& e);

/// Subspace of points with label >= `atLeast`.
SpaceExpr restrictAtLeast(const SpaceExpr& e, Label atLeast);

/// Removes the maximal countable subset of the planar part that is open in
/// the planar part, leaving it perfect (possibly empty). Planar points that
/// are limits of planar Cantor copies are kept.
SpaceExpr removeCountablePlanar(const SpaceExpr& e);

/// True when removeCountablePlanar(e) == e.
bool isPlanarNormalized(const SpaceExpr& e);

enum class PlanarKind : std::uint8_t { None, CantorCompact, CantorMinusPoint };
std::string_view toString(PlanarKind kind);

/// Homeomorphism type of the planar part of a normalized term: empty, a
/// Cantor set, or a Cantor set minus a point. Throws DomainError when the
/// term still has a countable open planar part.
PlanarKind planarKind(const SpaceExpr& e);

/// Non-planar ranks (ranks inside E_np) of the non-planar points lying in the
/// closure of the planar part. Throws DomainError on non-normalized input.
std::set<PointRank> planarTrace(const SpaceExpr& e);

// ---------------------------------------------------------------------------
// Canonical forms and comparison

enum class RewriteRule : std::uint8_t {
  FlattenSum,        // R1
  DropEmpty,         // R2
  PointSequence,     // R3  Conv(Pt, Pt) -> Scat(1,1)
  ScatSequence,      // R4  Conv(Scat(a,n), Pt) -> Scat(a+1,1)
  ScatMerge,         // R5  Sum of same-label Scats
  CantorMerge,       // R6  Cantor + Cantor -> Cantor
  CantorSequence,    // R7  Conv(Cantor, Pt) -> Cantor
};
std::string_view toString(RewriteRule rule);

/// Called for each rule instance fired, with the standalone left and right
/// hand sides of the instance.
using RewriteObserver =
    std::function<void(RewriteRule, const SpaceExpr& lhs, const SpaceExpr& rhs)>;

/// Applies R1-R7 to a fixpoint and sorts Sum lists. Inside the apex of a Conv
/// the designated point is significant, so there the first summand stays
/// first and is never absorbed into a later one.
/// Canonical forms are memoized per node; the observer sees the instances
/// fired while computing forms not already memoized.
SpaceExpr canonicalize(const SpaceExpr& e, const RewriteObserver& observer = {});

struct Fingerprint {
  Ordinal rankE;
  bool kernelE = false;   // perfect kernel of E nonempty
  Ordinal rankNP;
  bool kernelNP = false;
  Ordinal rankNO;
  bool kernelNO = false;
  PlanarKind planarKind = PlanarKind::None;
  std::set<PointRank> planarTrace;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

/// Homeomorphism invariants of the triple. The planar fields are computed on
/// removeCountablePlanar(e).
Fingerprint fingerprint(const SpaceExpr& e);

enum class Verdict : std::uint8_t { Equal, Distinct, Unknown };
std::string_view toString(Verdict v);

/// Compares the perforated classes of two end triples: Equal when the
/// normalized canonical forms coincide, Distinct when their fingerprints
/// differ, Unknown otherwise.
Verdict equivalent(const SpaceExpr& a, const SpaceExpr& b);

}  // namespace perfsurf
