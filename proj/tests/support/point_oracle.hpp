#pragma once

// Point-rank oracle: assigns every structural point of a term its survival
// level by direct recursion on the term, and summarizes the result as a
// count of points per (label, level). Finite Scat exponents only.

#include <array>
#include <cstdint>
#include <string>

#include "perfsurf/endspace.hpp"

namespace oracle {

// Cardinalities: finite counts, then aleph_0, then the continuum.
using Card = std::uint8_t;
inline constexpr Card kCountable = 254;
inline constexpr Card kContinuum = 255;

Card addCard(Card a, Card b);
// Countably many disjoint copies.
Card timesOmega(Card a);

inline constexpr std::size_t kLevels = 24;
inline constexpr std::uint32_t kPerfect = 0xffffffffu;

struct Signature {
  // scattered[label][level]: points of that label surviving exactly `level`
  // derivatives.
  std::array<std::array<Card, kLevels>, 3> scattered{};
  // Points of the perfect kernel, per label.
  std::array<Card, 3> perfect{};

  friend bool operator==(const Signature&, const Signature&) = default;
};

struct Info {
  Signature sig;
  bool empty = true;
  perfsurf::Label designatedLabel = perfsurf::Label::P;
  std::uint32_t designatedLevel = 0;  // kPerfect when in the kernel
};

// Least l with X^(l) = X^(l+1): one more than the top scattered level.
std::uint32_t stabilization(const Signature& s);
bool kernelNonEmpty(const Signature& s);
// Signature of the derived set.
Signature shift(const Signature& s);
// Only the kernel.
Signature kernelPart(const Signature& s);

Info atomInfo(const perfsurf::SpaceExpr& atom);
Info sumInfo(const Info* const* children, std::size_t count);
void addSummand(Info& sum, const Info& summand);
Info convInfo(const Info& body, const Info& apex);

// Full recursion.
Info infoOf(const perfsurf::SpaceExpr& e);

std::string describe(const Signature& s);

}  // namespace oracle
