#include <gtest/gtest.h>

#include <chrono>

#include "perfsurf/surface.hpp"

using namespace perfsurf;

namespace {

SurfaceDescriptor D(Genus g, Orientation o, const char* ends) { return {g, o, parseExprUnchecked(ends)}; }
Genus G(std::uint64_t g) { return Genus::finite(g); }
Genus inf() { return Genus::infinite(); }

std::vector<std::set<std::uint64_t>> subsets(std::uint64_t m) {
  std::vector<std::set<std::uint64_t>> out;
  for (std::uint64_t mask = 1; mask < (1u << m); ++mask) {
    std::set<std::uint64_t> J;
    for (std::uint64_t i = 0; i < m; ++i) {
      if (mask & (1u << i)) J.insert(i + 1);
    }
    out.push_back(J);
  }
  return out;
}

}  // namespace

TEST(ValidateDescriptor, Examples) {
  auto v = validateDescriptor(D(G(3), Orientation::NOfin, "pt(np)"));
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->rule, "row1");
  EXPECT_FALSE(validateDescriptor(D(G(0), Orientation::O, "cantor(p)")).has_value());
  v = validateDescriptor(D(inf(), Orientation::O, "cantor(no)"));
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->rule, "row2");
}

TEST(ValidateDescriptor, Rows) {
  EXPECT_FALSE(validateDescriptor(D(inf(), Orientation::NOinf, "cantor(no)")).has_value());
  EXPECT_EQ(validateDescriptor(D(G(2), Orientation::NOinf, "cantor(no)"))->rule, "row1");
  EXPECT_EQ(validateDescriptor(D(inf(), Orientation::NOinf, "pt(np)"))->rule, "row3");
  EXPECT_EQ(validateDescriptor(D(inf(), Orientation::O, "pt(p)"))->rule, "row2");
  EXPECT_EQ(validateDescriptor(D(inf(), Orientation::O, "empty"))->rule, "row2");
  EXPECT_EQ(validateDescriptor(D(G(1), Orientation::NOe, "pt(p)"))->rule, "row1");
  EXPECT_EQ(validateDescriptor(D(G(1), Orientation::O, "conv(pt(np), pt(p))"))->rule, "ends");
  EXPECT_FALSE(validateDescriptor(D(inf(), Orientation::NOo, "scat(2,1,np)")).has_value());
  EXPECT_FALSE(validateDescriptor(D(G(0), Orientation::O, "empty")).has_value());
  EXPECT_FALSE(validateDescriptor(D(G(4), Orientation::NOfin, "scat(3,2,p)")).has_value());
}

TEST(Normalize, SphereAndPlane) {
  auto sphere = normalizePerforation(D(G(0), Orientation::O, "empty"));
  auto plane = normalizePerforation(D(G(0), Orientation::O, "pt(p)"));
  EXPECT_EQ(sphere, plane);
  EXPECT_TRUE(sphere.canonicalEnds.isEmpty());
}

TEST(Normalize, Examples) {
  auto c = normalizePerforation(D(G(0), Orientation::O, "cantor(p)"));
  EXPECT_EQ(c.planarKind, PlanarKind::CantorCompact);
  auto x = normalizePerforation(D(inf(), Orientation::O, "conv(cantor(p), scat(2,1,np))"));
  EXPECT_EQ(x.planarKind, PlanarKind::CantorMinusPoint);
  EXPECT_EQ(x.fingerprint.planarTrace, std::set<PointRank>{PointRank::of(Ordinal::finite(2))});
  EXPECT_THROW(normalizePerforation(D(G(3), Orientation::NOfin, "pt(np)")), InvalidDescriptor);
}

TEST(Normalize, CompactPlanarPartDetached) {
  auto c = normalizePerforation(D(inf(), Orientation::O, "sum(scat(1,1,np), conv(cantor(p), pt(p)))"));
  EXPECT_EQ(c.planarKind, PlanarKind::CantorCompact);
  ASSERT_EQ(c.canonicalEnds.kind(), SpaceExpr::Kind::Sum);
  std::size_t cantors = 0;
  for (const auto& s : c.canonicalEnds.summands()) cantors += s == SpaceExpr::cantor(Label::P);
  EXPECT_EQ(cantors, 1u);
}

TEST(Normalize, IdempotentOnClasses) {
  const char* ends[] = {"cantor(p)", "pt(p)", "sum(cantor(p), scat(2,1,np))", "conv(cantor(p), scat(2,1,np))",
                        "sum(scat(3,1,np), conv(cantor(p), scat(1,1,np)), conv(cantor(p), scat(2,1,np)))",
                        "sum(pt(p), conv(scat(1,2,p), pt(np)))"};
  for (const char* e : ends) {
    SurfaceDescriptor d = D(inf(), Orientation::O, e);
    if (validateDescriptor(d)) d.genus = G(0);
    if (validateDescriptor(d)) continue;
    auto first = normalizePerforation(d);
    auto again = normalizePerforation({first.genus, first.orient, first.canonicalEnds});
    EXPECT_EQ(first, again) << e;
  }
}

TEST(PerforationEq, Examples) {
  EXPECT_EQ(perforationEq(D(G(0), Orientation::O, "empty"), D(G(0), Orientation::O, "pt(p)")), Verdict::Equal);
  EXPECT_EQ(perforationEq(D(G(0), Orientation::O, "cantor(p)"), D(G(0), Orientation::O, "empty")), Verdict::Distinct);
  EXPECT_EQ(perforationEq(generateEpFamily(2, {1}), generateEpFamily(2, {2})), Verdict::Distinct);
  EXPECT_EQ(perforationEq(D(G(1), Orientation::O, "empty"), D(G(2), Orientation::O, "empty")), Verdict::Distinct);
  EXPECT_EQ(perforationEq(D(G(1), Orientation::O, "empty"), D(G(1), Orientation::NOfin, "empty")), Verdict::Distinct);
}

TEST(PerforationEq, ReflexiveAndSymmetric) {
  std::vector<SurfaceDescriptor> ds = {
      D(G(0), Orientation::O, "empty"), D(G(0), Orientation::O, "cantor(p)"),
      D(G(2), Orientation::NOfin, "scat(1,2,p)"), D(inf(), Orientation::O, "conv(cantor(p), scat(2,1,np))"),
      D(inf(), Orientation::NOinf, "sum(cantor(no), conv(cantor(p), pt(np)))"),
      D(inf(), Orientation::NOe, "sum(scat(2,1,np), cantor(p))")};
  for (std::uint64_t m = 1; m <= 3; ++m) {
    for (const auto& J : subsets(m)) ds.push_back(generateEpFamily(m, J));
  }
  for (const auto& a : ds) {
    ASSERT_FALSE(validateDescriptor(a).has_value());
    EXPECT_EQ(perforationEq(a, a), Verdict::Equal);
    for (const auto& b : ds) EXPECT_EQ(perforationEq(a, b), perforationEq(b, a));
  }
}

TEST(Family, Examples) {
  auto d = generateEpFamily(2, {1});
  EXPECT_EQ(d.ends, parseExpr("sum(scat(2,1,np), conv(cantor(p), scat(1,1,np)))"));
  EXPECT_TRUE(d.genus.isInfinite());
  EXPECT_EQ(d.orient, Orientation::O);
  auto c = normalizePerforation(generateEpFamily(2, {1, 2}));
  EXPECT_EQ(c.fingerprint.planarTrace,
            (std::set<PointRank>{PointRank::of(Ordinal::finite(1)), PointRank::of(Ordinal::finite(2))}));
  EXPECT_THROW(generateEpFamily(1, {}), DomainError);
  EXPECT_THROW(generateEpFamily(2, {3}), DomainError);
  EXPECT_THROW(generateEpFamily(2, {0}), DomainError);
}

TEST(Family, PairwiseDistinctUpToSix) {
  for (std::uint64_t m = 1; m <= 6; ++m) {
    std::vector<SurfaceDescriptor> ds;
    for (const auto& J : subsets(m)) {
      ds.push_back(generateEpFamily(m, J));
      ASSERT_FALSE(validateDescriptor(ds.back()).has_value());
    }
    for (std::size_t i = 0; i < ds.size(); ++i) {
      for (std::size_t j = i + 1; j < ds.size(); ++j) {
        ASSERT_EQ(perforationEq(ds[i], ds[j]), Verdict::Distinct) << "m=" << m << " " << i << "," << j;
      }
    }
  }
}

TEST(GenusText, RoundTrip) {
  EXPECT_EQ(toString(parseGenus("inf")), "inf");
  EXPECT_EQ(parseGenus("12"), G(12));
  EXPECT_THROW(parseGenus("-1"), ParseError);
  EXPECT_EQ(parseOrientation("NOinf"), Orientation::NOinf);
  EXPECT_FALSE(parseOrientation("X").has_value());
  EXPECT_THROW(inf().value(), DomainError);
}
