#include "point_oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace oracle {

using perfsurf::Label;
using perfsurf::SpaceExpr;
using Kind = SpaceExpr::Kind;

Card addCard(Card a, Card b) {
  if (a >= kCountable || b >= kCountable) return std::max(a, b);
  unsigned s = unsigned{a} + b;
  if (s >= kCountable) throw std::overflow_error("oracle: finite count overflow");
  return static_cast<Card>(s);
}

Card timesOmega(Card a) {
  if (a == 0) return 0;
  return a == kContinuum ? kContinuum : kCountable;
}

std::uint32_t stabilization(const Signature& s) {
  std::uint32_t top = 0;
  for (const auto& row : s.scattered) {
    for (std::size_t l = 0; l < kLevels; ++l) {
      if (row[l] != 0) top = std::max(top, static_cast<std::uint32_t>(l + 1));
    }
  }
  return top;
}

bool kernelNonEmpty(const Signature& s) {
  return std::any_of(s.perfect.begin(), s.perfect.end(), [](Card c) { return c != 0; });
}

Signature shift(const Signature& s) {
  Signature out;
  out.perfect = s.perfect;
  for (std::size_t lab = 0; lab < 3; ++lab) {
    for (std::size_t l = 1; l < kLevels; ++l) out.scattered[lab][l - 1] = s.scattered[lab][l];
  }
  return out;
}

Signature kernelPart(const Signature& s) {
  Signature out;
  out.perfect = s.perfect;
  return out;
}

namespace {

void addPoint(Signature& s, Label label, std::uint32_t level, Card count) {
  auto lab = static_cast<std::size_t>(label);
  if (level == kPerfect) {
    s.perfect[lab] = addCard(s.perfect[lab], count);
    return;
  }
  if (level >= kLevels) throw std::out_of_range("oracle: level beyond table");
  s.scattered[lab][level] = addCard(s.scattered[lab][level], count);
}

void removeOnePoint(Signature& s, Label label, std::uint32_t level) {
  auto lab = static_cast<std::size_t>(label);
  Card& c = level == kPerfect ? s.perfect[lab] : s.scattered[lab][level];
  if (c == 0) throw std::logic_error("oracle: designated point missing");
  if (c < kCountable) --c;  // infinite counts are unchanged
}

}  // namespace

Info atomInfo(const SpaceExpr& atom) {
  Info info;
  info.empty = false;
  info.designatedLabel = atom.label();
  switch (atom.kind()) {
    case Kind::Pt:
      addPoint(info.sig, atom.label(), 0, 1);
      info.designatedLevel = 0;
      break;
    case Kind::Cantor:
      addPoint(info.sig, atom.label(), kPerfect, kContinuum);
      info.designatedLevel = kPerfect;
      break;
    case Kind::Scat: {
      auto a = atom.exponent().asFinite();
      if (!a) throw std::domain_error("oracle: transfinite exponent");
      if (atom.count() >= kCountable) throw std::domain_error("oracle: count too large");
      // w^a * n + 1: a-th level points are w^a, ..., w^a * n; every lower
      // level is infinite; the point 0 is isolated.
      addPoint(info.sig, atom.label(), 0, 1);
      for (std::uint32_t l = 0; l < *a; ++l) addPoint(info.sig, atom.label(), l, kCountable);
      addPoint(info.sig, atom.label(), static_cast<std::uint32_t>(*a), static_cast<Card>(atom.count()));
      info.designatedLevel = static_cast<std::uint32_t>(*a);
      break;
    }
    default:
      throw std::logic_error("atomInfo on a compound term");
  }
  return info;
}

void addSummand(Info& out, const Info& c) {
  if (c.empty) return;
  if (out.empty) {
    out.designatedLabel = c.designatedLabel;
    out.designatedLevel = c.designatedLevel;
    out.empty = false;
  }
  for (std::size_t lab = 0; lab < 3; ++lab) {
    out.sig.perfect[lab] = addCard(out.sig.perfect[lab], c.sig.perfect[lab]);
    for (std::size_t l = 0; l < kLevels; ++l) {
      out.sig.scattered[lab][l] = addCard(out.sig.scattered[lab][l], c.sig.scattered[lab][l]);
    }
  }
}

Info sumInfo(const Info* const* children, std::size_t count) {
  Info out;
  for (std::size_t i = 0; i < count; ++i) addSummand(out, *children[i]);
  return out;
}

Info convInfo(const Info& body, const Info& apex) {
  Info out = apex;
  for (std::size_t lab = 0; lab < 3; ++lab) {
    out.sig.perfect[lab] = addCard(out.sig.perfect[lab], timesOmega(body.sig.perfect[lab]));
    for (std::size_t l = 0; l < kLevels; ++l) {
      out.sig.scattered[lab][l] = addCard(out.sig.scattered[lab][l], timesOmega(body.sig.scattered[lab][l]));
    }
  }
  // The apex's designated point is a limit of the copies: it survives while
  // the copies do, and forever if they have a kernel.
  std::uint32_t level = apex.designatedLevel;
  if (kernelNonEmpty(body.sig)) {
    level = kPerfect;
  } else if (level != kPerfect) {
    level = std::max(level, stabilization(body.sig));
  }
  removeOnePoint(out.sig, apex.designatedLabel, apex.designatedLevel);
  addPoint(out.sig, apex.designatedLabel, level, 1);
  out.designatedLevel = level;
  return out;
}

Info infoOf(const SpaceExpr& e) {
  switch (e.kind()) {
    case Kind::Empty:
      return {};
    case Kind::Pt:
    case Kind::Cantor:
    case Kind::Scat:
      return atomInfo(e);
    case Kind::Sum: {
      Info out;
      for (const auto& s : e.summands()) addSummand(out, infoOf(s));
      return out;
    }
    case Kind::Conv:
      return convInfo(infoOf(e.body()), infoOf(e.apex()));
  }
  return {};
}

std::string describe(const Signature& s) {
  static const char* names[] = {"p", "np", "no"};
  auto card = [](Card c) {
    if (c == kCountable) return std::string("w");
    if (c == kContinuum) return std::string("c");
    return std::to_string(c);
  };
  std::string out = "{";
  for (std::size_t lab = 0; lab < 3; ++lab) {
    for (std::size_t l = 0; l < kLevels; ++l) {
      if (s.scattered[lab][l]) out += " " + std::string(names[lab]) + "@" + std::to_string(l) + ":" + card(s.scattered[lab][l]);
    }
    if (s.perfect[lab]) out += " " + std::string(names[lab]) + "@perfect:" + card(s.perfect[lab]);
  }
  return out + " }";
}

}  // namespace oracle
