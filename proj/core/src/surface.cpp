#include "perfsurf/surface.hpp"

#include <charconv>

namespace perfsurf {

std::uint64_t Genus::value() const {
  if (infinite_) throw DomainError("genus is infinite");
  return value_;
}

std::string toString(const Genus& g) {
  return g.isInfinite() ? "inf" : std::to_string(g.value());
}

Genus parseGenus(std::string_view text) {
  if (text == "inf" || text == "infinite") return Genus::infinite();
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ParseError("genus: expected a natural number or \"inf\"", 0);
  }
  return Genus::finite(v);
}

std::string_view toString(Orientation o) {
  switch (o) {
    case Orientation::O:
      return "O";
    case Orientation::NOfin:
      return "NOfin";
    case Orientation::NOe:
      return "NOe";
    case Orientation::NOo:
      return "NOo";
    case Orientation::NOinf:
      return "NOinf";
  }
  return "?";
}

std::optional<Orientation> parseOrientation(std::string_view text) {
  for (auto o : {Orientation::O, Orientation::NOfin, Orientation::NOe, Orientation::NOo,
                 Orientation::NOinf}) {
    if (text == toString(o)) return o;
  }
  return std::nullopt;
}

std::optional<DescriptorViolation> validateDescriptor(const SurfaceDescriptor& d) {
  if (auto v = validateExpr(d.ends)) {
    return DescriptorViolation{"ends", v->path + ": " + v->message};
  }
  const bool hasNP = !restrictAtLeast(d.ends, Label::NP).isEmpty();
  const bool hasNO = !restrictAtLeast(d.ends, Label::NO).isEmpty();
  const bool finite = !d.genus.isInfinite();

  if (finite) {
    if (d.orient != Orientation::O && d.orient != Orientation::NOfin) {
      return DescriptorViolation{"row1", "finite genus requires orientation class O or NOfin"};
    }
    if (hasNP) return DescriptorViolation{"row1", "finite genus requires E_np to be empty"};
  } else {
    if (d.orient == Orientation::NOfin) {
      return DescriptorViolation{"row2", "infinite genus requires orientation class O, NOe, NOo or NOinf"};
    }
    if (d.orient != Orientation::NOinf) {
      if (hasNO) return DescriptorViolation{"row2", "E_no nonempty forces orientation class NOinf"};
      if (!hasNP) return DescriptorViolation{"row2", "infinite genus requires E_np to be nonempty"};
    }
  }
  if (d.orient == Orientation::NOinf && !hasNO) {
    return DescriptorViolation{"row3", "orientation class NOinf requires E_no to be nonempty"};
  }
  if (d.ends.isEmpty() && !finite) {
    return DescriptorViolation{"compact", "a surface without ends has finite genus"};
  }
  return std::nullopt;
}

PerforationClass normalizePerforation(const SurfaceDescriptor& d) {
  if (auto v = validateDescriptor(d)) throw InvalidDescriptor(std::move(*v));
  SpaceExpr ends = removeCountablePlanar(d.ends);
  PerforationClass c;
  c.genus = d.genus;
  c.orient = d.orient;
  c.planarKind = planarKind(ends);
  if (c.planarKind == PlanarKind::CantorCompact) {
    // The planar part is clopen and perfect, hence a single Cantor set.
    SpaceExpr rest = restrictAtLeast(ends, Label::NP);
    ends = rest.isEmpty() ? SpaceExpr::cantor(Label::P)
                          : SpaceExpr::sum({SpaceExpr::cantor(Label::P), std::move(rest)});
  }
  c.canonicalEnds = canonicalize(ends);
  c.fingerprint = fingerprint(c.canonicalEnds);
  return c;
}

Verdict perforationEq(const SurfaceDescriptor& a, const SurfaceDescriptor& b) {
  PerforationClass ca = normalizePerforation(a);
  PerforationClass cb = normalizePerforation(b);
  if (!(ca.genus == cb.genus) || ca.orient != cb.orient) return Verdict::Distinct;
  if (!(ca.fingerprint == cb.fingerprint)) return Verdict::Distinct;
  if (ca.canonicalEnds == cb.canonicalEnds) return Verdict::Equal;
  return Verdict::Unknown;
}

SurfaceDescriptor generateEpFamily(std::uint64_t m, const std::set<std::uint64_t>& J) {
  if (m == 0) throw DomainError("generateEpFamily: m must be positive");
  if (J.empty()) throw DomainError("generateEpFamily: J must be nonempty");
  if (*J.begin() < 1 || *J.rbegin() > m) {
    throw DomainError("generateEpFamily: J must be a subset of {1.." + std::to_string(m) + "}");
  }
  std::vector<SpaceExpr> parts;
  parts.push_back(SpaceExpr::scat(m, 1, Label::NP));
  for (std::uint64_t n : J) {
    parts.push_back(SpaceExpr::conv(SpaceExpr::cantor(Label::P), SpaceExpr::scat(n, 1, Label::NP)));
  }
  return {Genus::infinite(), Orientation::O, SpaceExpr::sum(std::move(parts))};
}

}  // namespace perfsurf
