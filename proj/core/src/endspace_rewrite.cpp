#include <algorithm>
#include <limits>
#include <optional>
#include <utility>

#include "endspace_node.hpp"
#include "perfsurf/endspace.hpp"

namespace perfsurf {

using Kind = SpaceExpr::Kind;

std::string_view toString(RewriteRule rule) {
  switch (rule) {
    case RewriteRule::FlattenSum:
      return "R1";
    case RewriteRule::DropEmpty:
      return "R2";
    case RewriteRule::PointSequence:
      return "R3";
    case RewriteRule::ScatSequence:
      return "R4";
    case RewriteRule::ScatMerge:
      return "R5";
    case RewriteRule::CantorMerge:
      return "R6";
    case RewriteRule::CantorSequence:
      return "R7";
  }
  return "?";
}

namespace {

class Canonicalizer {
 public:
  explicit Canonicalizer(const RewriteObserver& observer) : observer_(observer) {}

  // `designated`: the designated point of e matters to the enclosing term
  // (e sits in apex position, possibly as a first summand).
  SpaceExpr run(const SpaceExpr& e, bool designated) {
    if (e.isEmpty() || e.isAtom()) return e;
    return detail::NodeAccess::memoized(
        e, [designated](const auto& n) -> detail::ExprMemo& { return n.canonical[designated ? 1 : 0]; },
        [&](const SpaceExpr& x) { return x.kind() == Kind::Sum ? sum(x, designated) : conv(x); });
  }

 private:
  // Instance terms are only built when someone is listening.
  template <typename Lhs, typename Rhs>
  void fire(RewriteRule rule, Lhs&& lhs, Rhs&& rhs) {
    if (observer_) observer_(rule, lhs(), rhs());
  }

  SpaceExpr conv(const SpaceExpr& e) {
    SpaceExpr body = run(e.body(), false);
    SpaceExpr apex = run(e.apex(), true);
    SpaceExpr current = body.sameNode(e.body()) && apex.sameNode(e.apex())
                            ? e
                            : SpaceExpr::conv(body, apex);
    if (apex.kind() != Kind::Pt || !body.isAtom() || body.label() != apex.label()) return current;
    const Label l = apex.label();
    SpaceExpr out;
    RewriteRule rule;
    switch (body.kind()) {
      case Kind::Pt:
        out = SpaceExpr::scat(1, 1, l);
        rule = RewriteRule::PointSequence;
        break;
      case Kind::Scat:
        out = SpaceExpr::scat(succ(body.exponent()), 1, l);
        rule = RewriteRule::ScatSequence;
        break;
      case Kind::Cantor:
        out = SpaceExpr::cantor(l);
        rule = RewriteRule::CantorSequence;
        break;
      default:
        return current;
    }
    fire(rule, [&] { return current; }, [&] { return out; });
    return out;
  }

  // Merges `b` into `a` if R5 or R6 applies. `headFixed`: a is the head of a
  // designated Sum and must keep its designated point.
  std::optional<SpaceExpr> merge(const SpaceExpr& a, const SpaceExpr& b, bool headFixed) {
    if (!a.isAtom() || !b.isAtom() || a.label() != b.label()) return std::nullopt;
    if (a.kind() == Kind::Cantor && b.kind() == Kind::Cantor) {
      fire(RewriteRule::CantorMerge, [&] { return SpaceExpr::sum({a, b}); }, [&] { return a; });
      return a;
    }
    if (a.kind() != Kind::Scat || b.kind() != Kind::Scat) return std::nullopt;
    auto c = a.exponent() <=> b.exponent();
    SpaceExpr out;
    if (c == 0) {
      // Finite sets: (n+1) + (m+1) points is Scat(0, n+m+1). Otherwise the
      // extra isolated point is absorbed.
      const std::uint64_t extra = a.exponent().isZero() ? 1 : 0;
      if (a.count() > std::numeric_limits<std::uint64_t>::max() - b.count() - extra) {
        throw DomainError("canonicalize: Scat multiplicity overflow");
      }
      out = SpaceExpr::scat(a.exponent(), a.count() + b.count() + extra, a.label());
    } else if (c > 0) {
      out = a;
    } else {
      if (headFixed) return std::nullopt;
      out = b;
    }
    fire(RewriteRule::ScatMerge, [&] { return SpaceExpr::sum({a, b}); }, [&] { return out; });
    return out;
  }

  SpaceExpr sum(const SpaceExpr& e, bool designated) {
    auto input = e.summands();
    std::vector<SpaceExpr> kids;
    kids.reserve(input.size());
    bool nested = false;
    bool hadEmpty = false;
    bool changed = false;
    for (std::size_t i = 0; i < input.size(); ++i) {
      SpaceExpr c = run(input[i], designated && i == 0);
      changed = changed || !c.sameNode(input[i]);
      if (c.isEmpty()) {
        hadEmpty = true;
        continue;
      }
      nested = nested || c.kind() == Kind::Sum;
      kids.push_back(std::move(c));
    }
    if (hadEmpty) {
      fire(RewriteRule::DropEmpty, [&] { return e; }, [&] {
        return kids.empty() ? SpaceExpr::empty() : kids.size() == 1 ? kids.front() : SpaceExpr::sum(kids);
      });
    }
    if (nested) {
      std::vector<SpaceExpr> flat;
      for (const auto& c : kids) {
        if (c.kind() == Kind::Sum) {
          flat.insert(flat.end(), c.summands().begin(), c.summands().end());
        } else {
          flat.push_back(c);
        }
      }
      fire(RewriteRule::FlattenSum, [&] { return SpaceExpr::sum(kids); }, [&] { return SpaceExpr::sum(flat); });
      kids = std::move(flat);
    }
    if (kids.empty()) return SpaceExpr::empty();

    // R5/R6: merge later summands into earlier ones until none apply.
    for (std::size_t i = 0; i < kids.size(); ++i) {
      for (std::size_t j = i + 1; j < kids.size();) {
        auto merged = merge(kids[i], kids[j], designated && i == 0);
        if (merged) {
          changed = true;
          kids[i] = std::move(*merged);
          kids.erase(kids.begin() + static_cast<std::ptrdiff_t>(j));
          j = i + 1;
        } else {
          ++j;
        }
      }
    }
    if (kids.size() == 1) return std::move(kids.front());
    const auto from = kids.begin() + (designated ? 1 : 0);
    if (!changed && !hadEmpty && !nested && std::is_sorted(from, kids.end())) return e;
    std::sort(from, kids.end());
    return SpaceExpr::sum(std::move(kids));
  }

  const RewriteObserver& observer_;
};

}  // namespace

SpaceExpr canonicalize(const SpaceExpr& e, const RewriteObserver& observer) {
  requireValid(e);
  Canonicalizer c(observer);
  SpaceExpr current = c.run(e, false);
  for (;;) {
    SpaceExpr next = c.run(current, false);
    if (next == current) return current;
    current = std::move(next);
  }
}

}  // namespace perfsurf
