#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "perfsurf/endspace.hpp"

namespace perfsurf {

/// Genus: a natural number or infinite.
class Genus {
 public:
  static Genus finite(std::uint64_t g) { return Genus(false, g); }
  static Genus infinite() { return Genus(true, 0); }

  bool isInfinite() const noexcept { return infinite_; }
  /// Throws DomainError when infinite.
  std::uint64_t value() const;

  friend bool operator==(const Genus&, const Genus&) = default;

 private:
  Genus(bool infinite, std::uint64_t value) : infinite_(infinite), value_(value) {}
  bool infinite_;
  std::uint64_t value_;
};

/// "inf" or the decimal value.
std::string toString(const Genus& g);
Genus parseGenus(std::string_view text);

/// Orientation class. NOfin covers every finite-genus non-orientable surface;
/// NOe and NOo are the infinite-genus classes with an even or odd number of
/// crosscaps, NOinf has infinitely many.
enum class Orientation : std::uint8_t { O, NOfin, NOe, NOo, NOinf };

std::string_view toString(Orientation o);
std::optional<Orientation> parseOrientation(std::string_view text);

struct SurfaceDescriptor {
  Genus genus = Genus::finite(0);
  Orientation orient = Orientation::O;
  SpaceExpr ends;
};

struct DescriptorViolation {
  /// "ends", "row1", "row2", "row3" or "compact".
  std::string rule;
  std::string message;
};

/// Checks the end term and the compatibility of genus, orientation class and
/// end triple:
///   row1: finite genus => orient in {O, NOfin} and E_np empty
///   row2: infinite genus with orient in {O, NOe, NOo} => E_no empty, E_np nonempty
///   row3: orient = NOinf <=> E_no nonempty, and then the genus is infinite
///   compact: no ends => finite genus
std::optional<DescriptorViolation> validateDescriptor(const SurfaceDescriptor& d);

class InvalidDescriptor : public DomainError {
 public:
  explicit InvalidDescriptor(DescriptorViolation v)
      : DomainError(v.rule + ": " + v.message), violation_(std::move(v)) {}
  const DescriptorViolation& violation() const noexcept { return violation_; }

 private:
  DescriptorViolation violation_;
};

/// Homeomorphism class representative of the perforated surface.
struct PerforationClass {
  Genus genus = Genus::finite(0);
  Orientation orient = Orientation::O;
  SpaceExpr canonicalEnds;
  PlanarKind planarKind = PlanarKind::None;
  Fingerprint fingerprint;

  friend bool operator==(const PerforationClass&, const PerforationClass&) = default;
};

/// Removes the countable open planar part, splits a compact planar Cantor
/// set off as a top-level summand and canonicalizes.
PerforationClass normalizePerforation(const SurfaceDescriptor& d);

/// Distinct when genus, orientation class or fingerprints differ; Equal when
/// the canonical end terms coincide; Unknown otherwise.
Verdict perforationEq(const SurfaceDescriptor& a, const SurfaceDescriptor& b);

/// Infinite-genus orientable surface whose ends are
///   Sum(Scat(m,1,NP), Conv(Cantor(P), Scat(n,1,NP)) for n in J).
/// Throws DomainError unless J is a nonempty subset of {1..m}.
SurfaceDescriptor generateEpFamily(std::uint64_t m, const std::set<std::uint64_t>& J);

}  // namespace perfsurf
