// Runs the eight acceptance criteria and prints one PASS/FAIL line each.
// Exit status is 0 only when all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "enum_check.hpp"
#include "fractal_oracle.hpp"
#include "geometry_oracle.hpp"
#include "perfsurf/covering.hpp"
#include "perfsurf/fractal.hpp"
#include "perfsurf/nonhopf.hpp"
#include "perfsurf/surface.hpp"

using namespace perfsurf;

namespace {

using Clock = std::chrono::steady_clock;

double seconds(Clock::time_point since) { return std::chrono::duration<double>(Clock::now() - since).count(); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void report(int id, const std::string& title, Outcome& o) {
  std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " --" << o.detail.str()
            << std::endl;
  if (!o.pass) ++failures;
}

void runGuarded(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  report(id, title, o);
}

SurfaceDescriptor descriptor(Genus g, Orientation o, SpaceExpr ends) {
  SurfaceDescriptor d;
  d.genus = g;
  d.orient = o;
  d.ends = std::move(ends);
  return d;
}

void familyCriterion(Outcome& o) {
  auto start = Clock::now();
  std::vector<SurfaceDescriptor> family;
  for (std::uint64_t mask = 1; mask < 32; ++mask) {
    std::set<std::uint64_t> J;
    for (std::uint64_t n = 1; n <= 5; ++n) {
      if (mask & (1u << (n - 1))) J.insert(n);
    }
    family.push_back(generateEpFamily(5, J));
  }
  std::size_t pairs = 0, distinct = 0, unknown = 0;
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t k = i + 1; k < family.size(); ++k) {
      ++pairs;
      Verdict v = perforationEq(family[i], family[k]);
      distinct += v == Verdict::Distinct;
      unknown += v == Verdict::Unknown;
    }
  }
  double t = seconds(start);
  o.detail << " descriptors=" << family.size() << " pairs=" << pairs << " distinct=" << distinct
           << " unknown=" << unknown << " time=" << t << "s";
  o.require(family.size() == 31, "31 descriptors");
  o.require(distinct == pairs, "all pairs Distinct");
  o.require(unknown == 0, "no Unknown verdicts");
  o.require(t < 10.0, "under 10 s");
}

void sphereCriterion(Outcome& o) {
  auto sphere = descriptor(Genus::finite(0), Orientation::O, SpaceExpr::empty());
  auto plane = descriptor(Genus::finite(0), Orientation::O, SpaceExpr::pt(Label::P));
  auto cantor = descriptor(Genus::finite(0), Orientation::O, SpaceExpr::cantor(Label::P));
  Verdict a = perforationEq(sphere, plane);
  Verdict b = perforationEq(cantor, sphere);
  o.detail << " sphere~plane=" << toString(a) << " cantor~empty=" << toString(b);
  o.require(a == Verdict::Equal, "sphere and plane Equal");
  o.require(b == Verdict::Distinct, "Cantor ends vs none Distinct");
}

void liftCriterion(Outcome& o) {
  auto start = Clock::now();
  std::mt19937_64 rng(20240601);
  std::size_t matched = 0;
  std::map<std::string, std::size_t> cases;
  for (int i = 0; i < 100; ++i) {
    PLLoop loop = oracle::randomLoop(rng, 8);
    LiftReport r = liftLoop(loop, 40);
    matched += r.match;
    ++cases[std::string(toString(r.liftCase))];
  }
  KernelWitness w = kernelWitness();
  long wind = windingNumber(w.alpha, w.enclosed);
  bool imageZero = !profileNonzero(applyF(w.alpha), 40).has_value();
  double t = seconds(start);
  o.detail << " matched=" << matched << "/100";
  for (const auto& [name, n] : cases) o.detail << " " << name << "=" << n;
  o.detail << " alphaWinding=" << wind << " imageProfileZero=" << imageZero << " time=" << t << "s";
  o.require(matched == 100, "all lifts match");
  o.require(wind == 1, "alpha winds once around (1/4, 3/2)");
  o.require(w.enclosed == (RationalPoint{mpq_class(1, 4), mpq_class(3, 2)}), "enclosed point");
  o.require(imageZero, "F(alpha) profile zero");
  o.require(t < 60.0, "under 60 s");
}

void fractalCriterion(Outcome& o) {
  // Seams: the three linear pieces agree where they meet, and rho takes that value.
  const mpq_class third(1, 3), twoThirds(2, 3);
  auto left = [](const mpq_class& t) { return mpq_class(t); };
  auto middle = [&](const mpq_class& t) { return mpq_class(twoThirds - t); };
  auto right = [&](const mpq_class& t) { return mpq_class(t - twoThirds); };
  bool seams = left(third) == middle(third) && rho(third) == left(third) && middle(twoThirds) == right(twoThirds) &&
               rho(twoThirds) == middle(twoThirds);
  o.require(seams, "rho seams");

  for (FractalKind k : {FractalKind::Carpet, FractalKind::Gasket, FractalKind::Menger}) {
    std::mt19937_64 rng(7000 + static_cast<int>(k));
    std::size_t bad = 0;
    for (int i = 0; i < 10000; ++i) {
      const bool corner = i % 4 == 0;
      RationalVector p = oracle::randomMember(k, rng, 1 + i % 7, 5, corner);
      if (!member(k, p)) {
        ++bad;
        continue;
      }
      RationalVector r = k == FractalKind::Gasket ? retractGasket(p) : retract(k, p);
      RationalVector rr = k == FractalKind::Gasket ? retractGasket(r) : retract(k, r);
      bool ok = member(k, r) && rr == r && (!corner || r == p);
      bad += !ok;
    }
    o.detail << " " << toString(k) << "Failures=" << bad;
    o.require(bad == 0, std::string(toString(k)) + " retraction laws");
  }

  FractalWitness c = witnessLoops(FractalKind::Carpet, 6);
  bool carpetOk = c.holes.size() == 1 && c.holes[0].point == RationalPoint{mpq_class(1, 6), mpq_class(1, 2)} &&
                  c.holes[0].winding == 1 && c.retractedProfileZero &&
                  c.centersChecked == oracle::holeCenters(FractalKind::Carpet, 6).size();
  o.detail << " carpetCenters=" << c.centersChecked;
  o.require(carpetOk, "carpet witness");

  FractalWitness g = witnessLoops(FractalKind::Gasket, 6);
  bool gasketOk = g.holes.size() == 2 && g.holes[0].point == RationalPoint{mpq_class(2, 3), mpq_class(1, 6)} &&
                  g.holes[0].winding == 1 && g.holes[1].point == RationalPoint{mpq_class(1, 6), mpq_class(1, 6)} &&
                  g.holes[1].winding == -1 && g.retractedProfileZero;
  o.detail << " gasketCenters=" << g.centersChecked;
  o.require(gasketOk, "gasket witness");
}

void coveringCriterion(Outcome& o) {
  std::size_t groups = 0;
  for (const auto& entry : finiteGroupCatalog()) {
    CoveringGraph g = buildCover(entry.spec);
    bool covering = true;
    for (std::size_t v = 0; v < g.vertexCount; ++v) covering = covering && coveringConditionAt(g, v);
    DeckGroupReport d = deckGroup(g);
    bool ok = g.vertexCount == entry.order && d.order() == entry.order && d.isomorphismVerified && isRegular(g) &&
              covering;
    o.require(ok, entry.name);
    ++groups;
  }
  CoveringGraph z = buildCover(GroupSpec::fromTranslations({{1}}, 10));
  std::size_t interior = 0, good = 0;
  for (std::size_t v = 0; v < z.vertexCount; ++v) {
    if (z.depth[v] >= 10) continue;
    ++interior;
    good += coveringConditionAt(z, v);
  }
  o.detail << " groups=" << groups << " zBallInterior=" << good << "/" << interior;
  o.require(z.truncated && interior == 19 && good == interior, "Z ball interior");
}

void obstructionCriterion(Outcome& o) {
  std::size_t checked = 0;
  for (std::uint64_t p : {2, 3, 5}) {
    for (std::uint64_t m = 1; m <= 20; ++m) {
      ObstructionResult r = hawaiianObstruction(p, m);
      o.require(r.k == m && r.value % p != 0, "p=" + std::to_string(p) + " m=" + std::to_string(m));
      ++checked;
    }
  }
  o.detail << " cases=" << checked;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int maxSize = 7;
  unsigned threads = 0;
  bool quiet = false;
  app.add_option("--max-size", maxSize, "Largest term size for the exhaustive sweep")->check(CLI::Range(1, 7));
  app.add_option("--threads", threads, "Worker threads (0: all cores)");
  app.add_flag("--quiet", quiet, "No progress output");
  CLI11_PARSE(app, argc, argv);

  runGuarded(1, "family m=5 pairwise Distinct", familyCriterion);

  oracle::EnumReport sweep;
  double sweepTime = 0;
  bool sweepThrew = false;
  std::string sweepError;
  {
    auto start = Clock::now();
    oracle::EnumOptions opts;
    opts.maxSize = maxSize;
    opts.threads = threads;
    opts.progress = !quiet;
    try {
      sweep = oracle::runEnumeration(opts);
    } catch (const std::exception& e) {
      sweepThrew = true;
      sweepError = e.what();
    }
    sweepTime = seconds(start);
  }
  runGuarded(2, "derivative/rank oracle equivalence to size " + std::to_string(maxSize), [&](Outcome& o) {
    o.require(!sweepThrew, sweepError);
    o.detail << " expressions=" << sweep.expressions << " steps=" << sweep.derivativeSteps
             << " derivativeMismatches=" << sweep.derivativeMismatches << " rankMismatches=" << sweep.rankMismatches
             << " designatedMismatches=" << sweep.designatedMismatches << " time=" << sweepTime << "s";
    o.require(sweep.derivativeOk(), "zero mismatches");
    o.require(maxSize == 7, "full size-7 sweep");
  });
  runGuarded(3, "rewrite soundness and idempotence", [&](Outcome& o) {
    o.require(!sweepThrew, sweepError);
    o.detail << " instances(R1..R7)=";
    for (std::size_t r = 0; r < 7; ++r) o.detail << (r ? "," : "") << sweep.instances[r];
    o.detail << " instanceFailures=" << sweep.instanceFailures << " idempotenceFailures=" << sweep.idempotenceFailures;
    o.require(sweep.rewriteOk(), "fingerprints preserved, canonicalize idempotent");
    o.require(maxSize == 7, "full size-7 sweep");
  });
  for (const auto& s : sweep.samples) std::cout << "  sample: " << s << "\n";
  std::cout << "INFO round trip parse(render(e)) = e: " << (sweep.roundTripOk() ? "ok" : "FAILED") << " ("
            << sweep.roundTripFailures << " failures)" << std::endl;
  if (!sweep.roundTripOk()) ++failures;

  runGuarded(4, "sphere/plane collapse", sphereCriterion);
  runGuarded(5, "non-Hopf lift suite", liftCriterion);
  runGuarded(6, "fractal retractions and witnesses", fractalCriterion);
  runGuarded(7, "covering catalog and Z ball", coveringCriterion);
  runGuarded(8, "Hawaiian obstruction", obstructionCriterion);

  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
