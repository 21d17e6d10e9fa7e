#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "fractal_oracle.hpp"
#include "geometry_oracle.hpp"
#include "perfsurf/error.hpp"
#include "perfsurf/fractal.hpp"

using namespace perfsurf;

namespace {

mpq_class Q(long n, long d = 1) { return mpq_class(n, d); }
RationalVector V(std::initializer_list<mpq_class> c) { return RationalVector(c); }

constexpr FractalKind kAll[] = {FractalKind::Carpet, FractalKind::Gasket, FractalKind::Menger};

RationalVector retractAny(FractalKind k, const RationalVector& p) {
  return k == FractalKind::Gasket ? retractGasket(p) : retract(k, p);
}

bool inCorner(FractalKind k, const RationalVector& p) {
  if (k == FractalKind::Gasket) return p[0] + p[1] <= Q(1, 2);
  return std::all_of(p.begin(), p.end(), [](const mpq_class& c) { return c <= Q(1, 3); });
}

}  // namespace

TEST(Member, Examples) {
  EXPECT_FALSE(member(FractalKind::Carpet, V({Q(1, 2), Q(1, 2)})));
  for (long d = 1; d <= 12; ++d) {
    for (long n = 0; n <= d; ++n) EXPECT_TRUE(member(FractalKind::Carpet, V({Q(0), Q(n, d)})));
  }
  EXPECT_TRUE(member(FractalKind::Gasket, V({Q(1, 2), Q(1, 2)})));
  EXPECT_FALSE(member(FractalKind::Gasket, V({Q(3, 4), Q(1, 2)})));
  EXPECT_TRUE(member(FractalKind::Carpet, V({Q(1, 3), Q(1, 3)})));  // corner of the removed square
  EXPECT_FALSE(member(FractalKind::Menger, V({Q(1, 2), Q(1, 2), Q(0)})));
  EXPECT_TRUE(member(FractalKind::Menger, V({Q(1, 2), Q(0), Q(0)})));
  EXPECT_THROW(member(FractalKind::Carpet, V({Q(3, 2), Q(0)})), DomainError);
  EXPECT_THROW(member(FractalKind::Menger, V({Q(0), Q(0)})), DomainError);
}

TEST(Member, Expansions) {
  auto e = radixExpansions(Q(1, 3), 3);
  ASSERT_EQ(e.size(), 2u);
  EXPECT_EQ(radixExpansions(Q(1, 2), 3).size(), 1u);
  EXPECT_EQ(radixExpansions(Q(1, 2), 3)[0].digit(5), 1);
  EXPECT_EQ(radixExpansions(Q(0), 3).size(), 1u);
  EXPECT_EQ(radixExpansions(Q(1), 3).size(), 1u);
}

// Library membership against the cell-refinement oracle on a rational grid.
TEST(Member, AgreesWithRefinementOracle) {
  for (FractalKind k : kAll) {
    const std::size_t dim = dimension(k);
    const long maxDen = dim == 3 ? 10 : 27;
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<long> den(1, maxDen);
    std::size_t yes = 0, no = 0;
    for (int i = 0; i < 3000; ++i) {
      RationalVector p(dim);
      for (auto& c : p) {
        long d = den(rng);
        c = Q(std::uniform_int_distribution<long>(0, d)(rng), d);
        c.canonicalize();
      }
      if (k == FractalKind::Gasket && p[0] + p[1] > 1) p[1] = 1 - p[0];
      bool m = member(k, p);
      ASSERT_EQ(m, oracle::ifsMember(k, p)) << toString(k) << " " << p[0].get_str() << "," << p[1].get_str();
      (m ? yes : no)++;
    }
    EXPECT_GT(yes, 100u) << toString(k);
    EXPECT_GT(no, 100u) << toString(k);
  }
}

TEST(Rho, ExamplesAndSeams) {
  EXPECT_EQ(rho(Q(1, 4)), Q(1, 4));
  EXPECT_EQ(rho(Q(1, 2)), Q(1, 6));
  EXPECT_EQ(rho(Q(5, 6)), Q(1, 6));
  // Adjacent pieces agree at 1/3 and 2/3.
  EXPECT_EQ(rho(Q(1, 3)), Q(1, 3));
  EXPECT_EQ(rho(Q(2, 3)), Q(0));
  // Piecewise formula checked on a grid, continuity included.
  for (long n = 0; n <= 60; ++n) {
    mpq_class t(n, 60);
    t.canonicalize();
    mpq_class expect = t <= Q(1, 3) ? t : (t <= Q(2, 3) ? mpq_class(Q(2, 3) - t) : mpq_class(t - Q(2, 3)));
    EXPECT_EQ(rho(t), expect);
    EXPECT_GE(rho(t), 0);
    EXPECT_LE(rho(t), Q(1, 3));
  }
  EXPECT_EQ(rho(Q(0)), Q(0));
  EXPECT_EQ(rho(Q(1)), Q(1, 3));
  EXPECT_THROW(rho(Q(-1, 3)), DomainError);
  EXPECT_THROW(rho(Q(4, 3)), DomainError);
}

TEST(Retract, Examples) {
  EXPECT_EQ(rhoCube(V({Q(5, 6), Q(1, 2)})), V({Q(1, 6), Q(1, 6)}));
  EXPECT_EQ(rhoCube(V({Q(5, 6), Q(1, 2), Q(0)})), V({Q(1, 6), Q(1, 6), Q(0)}));
  // Those two points lie in removed cells, so the retraction proper refuses them.
  EXPECT_THROW(retract(FractalKind::Carpet, V({Q(5, 6), Q(1, 2)})), DomainError);
  EXPECT_THROW(retract(FractalKind::Menger, V({Q(5, 6), Q(1, 2), Q(0)})), DomainError);
  EXPECT_EQ(retract(FractalKind::Carpet, V({Q(1, 4), Q(1, 9)})), V({Q(1, 4), Q(1, 9)}));
  EXPECT_EQ(retract(FractalKind::Carpet, V({Q(5, 6), Q(0)})), V({Q(1, 6), Q(0)}));
  EXPECT_THROW(retract(FractalKind::Gasket, V({Q(0), Q(0)})), DomainError);
}

TEST(RetractGasket, Examples) {
  EXPECT_EQ(retractGasket(V({Q(1), Q(0)})), V({Q(0), Q(1, 2)}));
  EXPECT_EQ(retractGasket(V({Q(0), Q(1, 4)})), V({Q(0), Q(1, 4)}));
  EXPECT_EQ(retractGasket(V({Q(1, 2), Q(1, 2)})), V({Q(0), Q(0)}));
  EXPECT_EQ(retractGasket(V({Q(0), Q(1)})), V({Q(1, 2), Q(0)}));
  EXPECT_EQ(retractGasket(V({Q(0), Q(1, 2)})), V({Q(0), Q(1, 2)}));
  EXPECT_EQ(retractGasket(V({Q(1, 2), Q(0)})), V({Q(1, 2), Q(0)}));
  EXPECT_THROW(retractGasket(V({Q(3, 4), Q(1, 2)})), DomainError);
}

TEST(Retract, LawsOnSeededMembers) {
  for (FractalKind k : kAll) {
    std::mt19937_64 rng(1000 + static_cast<int>(k));
    for (int i = 0; i < 2000; ++i) {
      const bool corner = i % 5 == 0;
      RationalVector p = oracle::randomMember(k, rng, 1 + i % 6, 4, corner);
      ASSERT_TRUE(member(k, p));
      RationalVector r = retractAny(k, p);
      ASSERT_TRUE(member(k, r));
      ASSERT_TRUE(inCorner(k, r));
      ASSERT_EQ(retractAny(k, r), r);
      if (corner) ASSERT_EQ(r, p);
      if (i % 10 == 0) {
        ASSERT_TRUE(oracle::ifsMember(k, p));
        ASSERT_TRUE(oracle::ifsMember(k, r));
      }
    }
  }
}

TEST(Witness, HoleCentersMatchSubdivision) {
  for (FractalKind k : {FractalKind::Carpet, FractalKind::Gasket}) {
    auto a = removedCenters(k, 4);
    auto b = oracle::holeCenters(k, 4);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    EXPECT_EQ(a, b);
    for (const auto& c : b) EXPECT_FALSE(member(k, V({c.x, c.y})));
  }
}

TEST(Witness, Carpet) {
  auto w = witnessLoops(FractalKind::Carpet);
  ASSERT_EQ(w.holes.size(), 1u);
  EXPECT_EQ(w.holes[0].point, (RationalPoint{Q(1, 6), Q(1, 2)}));
  EXPECT_EQ(w.holes[0].winding, 1);
  EXPECT_EQ(oracle::quadrantWinding(w.loop, w.holes[0].point), 1);
  EXPECT_TRUE(w.retractedProfileZero);
  auto centers = oracle::holeCenters(FractalKind::Carpet, 6);
  EXPECT_EQ(w.centersChecked, centers.size());
  if (w.retracted.vertices.size() >= 3) {
    for (const auto& c : centers) ASSERT_EQ(oracle::quadrantWinding(w.retracted, c), 0);
  }
  // The loop runs inside the carpet.
  for (const auto& v : w.loop.vertices) EXPECT_TRUE(member(FractalKind::Carpet, V({v.x.a(), v.y.a()})));
}

TEST(Witness, Gasket) {
  auto w = witnessLoops(FractalKind::Gasket);
  ASSERT_EQ(w.holes.size(), 2u);
  EXPECT_EQ(w.holes[0].point, (RationalPoint{Q(2, 3), Q(1, 6)}));
  EXPECT_EQ(w.holes[0].winding, 1);
  EXPECT_EQ(w.holes[1].point, (RationalPoint{Q(1, 6), Q(1, 6)}));
  EXPECT_EQ(w.holes[1].winding, -1);
  for (const auto& h : w.holes) EXPECT_EQ(oracle::quadrantWinding(w.loop, h.point), h.winding);
  EXPECT_EQ(w.loop.basepoint(), (PlanePoint{QuadNum::rational(1, 2), QuadNum(0)}));
  EXPECT_TRUE(w.retractedProfileZero);
  auto centers = oracle::holeCenters(FractalKind::Gasket, 6);
  EXPECT_EQ(w.centersChecked, centers.size());
  if (w.retracted.vertices.size() >= 3) {
    for (const auto& c : centers) ASSERT_EQ(oracle::quadrantWinding(w.retracted, c), 0);
  }
  EXPECT_THROW(witnessLoops(FractalKind::Menger), DomainError);
}
