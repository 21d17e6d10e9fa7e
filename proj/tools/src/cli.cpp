#include "perfsurf/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "perfsurf/error.hpp"
#include "perfsurf/json_io.hpp"

namespace perfsurf::cli {

namespace {

// File or shape problems; reported with the usage exit status.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json readJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

json traceToJson(const std::vector<CaseTraceEntry>& trace) {
  json out = json::array();
  for (const auto& t : trace) {
    out.push_back({{"kind", t.kind == CaseTraceEntry::Kind::J ? "J" : "I"},
                   {"from", toString(t.bounds.a)},
                   {"to", toString(t.bounds.b)}});
  }
  return out;
}

json fractalOne(FractalKind which, const std::string& op, const json& point) {
  RationalVector p = io::rationalVectorFromJson(point);
  if (op == "member") return {{"point", io::toJson(p)}, {"member", member(which, p)}};
  RationalVector image = which == FractalKind::Gasket ? retractGasket(p) : retract(which, p);
  return {{"point", io::toJson(p)}, {"image", io::toJson(image)}};
}

}  // namespace

json classifyCommand(const SurfaceDescriptor& d) {
  if (auto v = validateDescriptor(d)) throw InvalidDescriptor(*v);
  return {{"command", "classify"}, {"input", io::toJson(d)}, {"class", io::toJson(normalizePerforation(d))}};
}

json compareCommand(const SurfaceDescriptor& a, const SurfaceDescriptor& b) {
  for (const auto* d : {&a, &b}) {
    if (auto v = validateDescriptor(*d)) throw InvalidDescriptor(*v);
  }
  return {
      {"command", "compare"},
      {"input", json::array({io::toJson(a), io::toJson(b)})},
      {"classes", json::array({io::toJson(normalizePerforation(a)), io::toJson(normalizePerforation(b))})},
      {"verdict", std::string(toString(perforationEq(a, b)))},
  };
}

json familyCommand(std::uint64_t m, bool check) {
  if (m == 0 || m > 20) throw DomainError("family: m must be in 1..20");
  std::vector<std::pair<std::set<std::uint64_t>, SurfaceDescriptor>> members;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
    std::set<std::uint64_t> J;
    for (std::uint64_t n = 1; n <= m; ++n) {
      if (mask & (std::uint64_t{1} << (n - 1))) J.insert(n);
    }
    members.emplace_back(J, generateEpFamily(m, J));
  }
  json report = {{"command", "family"}, {"m", m}, {"mode", check ? "check" : "emit"}, {"descriptors", members.size()}};
  if (!check) {
    json list = json::array();
    for (const auto& [J, d] : members) list.push_back({{"J", J}, {"descriptor", io::toJson(d)}});
    report["family"] = list;
    return report;
  }
  std::uint64_t pairs = 0, distinct = 0, equal = 0, unknown = 0;
  json offending = json::array();
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t k = i + 1; k < members.size(); ++k) {
      ++pairs;
      Verdict v = perforationEq(members[i].second, members[k].second);
      if (v == Verdict::Distinct) {
        ++distinct;
        continue;
      }
      (v == Verdict::Equal ? equal : unknown)++;
      offending.push_back({{"J1", members[i].first}, {"J2", members[k].first}, {"verdict", std::string(toString(v))}});
    }
  }
  report["pairs"] = pairs;
  report["distinct"] = distinct;
  report["equal"] = equal;
  report["unknown"] = unknown;
  report["failures"] = offending;
  return report;
}

json rankCommand(const std::string& exprText) {
  SpaceExpr e = parseExpr(exprText);
  RankResult r = rank(e);
  return {
      {"command", "rank"},
      {"input", exprText},
      {"expression", toString(e)},
      {"rank", toString(r.rank)},
      {"kernel", toString(r.kernel)},
      {"fingerprint", io::toJson(fingerprint(e))},
  };
}

json liftCommand(const PLLoop& loop, std::uint64_t D) {
  LiftReport r = liftLoop(loop, D);
  return {
      {"command", "lift"},
      {"input", io::toJson(r.input)},
      {"denominator", r.profileD},
      {"case", std::string(toString(r.liftCase))},
      {"caseTrace", traceToJson(r.caseTrace)},
      {"lifted", io::toJson(r.lifted)},
      {"match", r.match},
  };
}

json fractalCommand(FractalKind which, const std::string& op, const json& points, int level) {
  json report = {{"command", "fractal"}, {"which", std::string(toString(which))}, {"op", op}};
  if (op == "witness") {
    FractalWitness w = witnessLoops(which, level);
    json holes = json::array();
    for (const auto& h : w.holes) holes.push_back({{"point", io::toJson(h.point)}, {"winding", h.winding}});
    report["loop"] = io::toJson(w.loop);
    report["holes"] = holes;
    report["retracted"] = io::toJson(w.retracted);
    report["level"] = level;
    report["centersChecked"] = w.centersChecked;
    report["retractedProfileZero"] = w.retractedProfileZero;
    return report;
  }
  if (op != "member" && op != "retract") throw UsageError("fractal: unknown op \"" + op + "\"");
  if (points.is_null()) throw UsageError("fractal: --point is required for " + op);
  const bool many = points.is_array() && !points.empty() && points[0].is_array();
  if (!many) {
    report["result"] = fractalOne(which, op, points);
    return report;
  }
  json results = json::array();
  for (const auto& p : points) results.push_back(fractalOne(which, op, p));
  report["results"] = results;
  return report;
}

json coverCommand(const GroupSpec& spec) {
  CoveringGraph g = buildCover(spec);
  json report = {{"command", "cover"}, {"graph", io::toJson(g)}};
  if (g.truncated) {
    std::size_t interior = 0, satisfied = 0;
    for (std::size_t v = 0; v < g.vertexCount; ++v) {
      if (g.depth[v] >= spec.radius) continue;
      ++interior;
      satisfied += coveringConditionAt(g, v) ? 1 : 0;
    }
    report["verification"] = {{"interiorVertices", interior}, {"interiorCovering", satisfied}};
    return report;
  }
  bool covering = true;
  for (std::size_t v = 0; v < g.vertexCount; ++v) covering = covering && coveringConditionAt(g, v);
  DeckGroupReport d = deckGroup(g);
  report["verification"] = {
      {"groupOrder", g.vertexCount}, {"deckOrder", d.order()},
      {"deckTable", d.table},        {"isomorphismVerified", d.isomorphismVerified},
      {"regular", isRegular(g)},     {"coveringCondition", covering},
  };
  return report;
}

json obstructionCommand(std::uint64_t p, std::uint64_t m) {
  ObstructionResult r = hawaiianObstruction(p, m);
  return {{"command", "obstruction"}, {"p", p}, {"m", m}, {"k", r.k}, {"value", r.value}};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Perforated surface classification and non-Hopfian certificates", "perfsurf"};
  app.require_subcommand(1);

  std::string file1, file2, exprText, loopFile, groupFile, which, op, pointText;
  std::uint64_t m = 0, D = 40, p = 0;
  bool check = false, emit = false;
  int level = 6;

  auto* classify = app.add_subcommand("classify", "Normalize a surface descriptor");
  classify->add_option("descriptor", file1, "Descriptor JSON file")->required();

  auto* compare = app.add_subcommand("compare", "Compare two perforated surfaces");
  compare->add_option("first", file1, "Descriptor JSON file")->required();
  compare->add_option("second", file2, "Descriptor JSON file")->required();

  auto* family = app.add_subcommand("family", "Emit or check the end-space family for {1..m}");
  family->add_option("m", m, "Family size")->required();
  auto* checkFlag = family->add_flag("--check", check, "Compare all pairs");
  family->add_flag("--emit", emit, "List the descriptors (default)")->excludes(checkFlag);

  auto* rankCmd = app.add_subcommand("rank", "Cantor-Bendixson rank of an end expression");
  rankCmd->add_option("expr", exprText, "Expression text")->required();

  auto* lift = app.add_subcommand("lift", "Lift a loop through the fold map");
  lift->add_option("--loop", loopFile, "Loop JSON file")->required();
  lift->add_option("--denominator", D, "Profile denominator bound")->check(CLI::PositiveNumber);

  auto* fractal = app.add_subcommand("fractal", "Fractal membership, retraction and witnesses");
  fractal->add_option("--which", which, "carpet | gasket | menger")
      ->required()
      ->check(CLI::IsMember({"carpet", "gasket", "menger"}));
  fractal->add_option("--op", op, "member | retract | witness")
      ->required()
      ->check(CLI::IsMember({"member", "retract", "witness"}));
  fractal->add_option("--point", pointText, "Point or array of points as JSON");
  fractal->add_option("--level", level, "Removed-center level for witnesses")->check(CLI::Range(1, 8));

  auto* cover = app.add_subcommand("cover", "Cayley cover of the rose and its deck group");
  cover->add_option("--group", groupFile, "Group spec JSON file")->required();

  auto* obstruction = app.add_subcommand("obstruction", "Hawaiian earring obstruction modulo p");
  obstruction->add_option("p", p, "Prime")->required();
  obstruction->add_option("m", m, "Neighborhood index")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream cliOut, cliErr;
    int code = app.exit(e, cliOut, cliErr);
    out << cliOut.str();
    err << cliErr.str();
    return code == 0 ? kOk : kUsageError;
  }

  auto fail = [&](const char* kind, const std::string& msg, int code) {
    err << json{{"error", kind}, {"message", msg}}.dump() << "\n";
    return code;
  };
  try {
    json report;
    if (*classify) {
      report = classifyCommand(io::descriptorFromJson(readJsonFile(file1)));
    } else if (*compare) {
      report = compareCommand(io::descriptorFromJson(readJsonFile(file1)), io::descriptorFromJson(readJsonFile(file2)));
    } else if (*family) {
      report = familyCommand(m, check);
    } else if (*rankCmd) {
      report = rankCommand(exprText);
    } else if (*lift) {
      report = liftCommand(io::loopFromJson(readJsonFile(loopFile)), D);
    } else if (*fractal) {
      json points;
      if (!pointText.empty()) {
        try {
          points = json::parse(pointText);
        } catch (const json::parse_error& e) {
          throw UsageError(std::string("--point: ") + e.what());
        }
      }
      report = fractalCommand(*parseFractalKind(which), op, points, level);
    } else if (*cover) {
      report = coverCommand(io::groupSpecFromJson(readJsonFile(groupFile)));
    } else if (*obstruction) {
      report = obstructionCommand(p, m);
    }
    out << report.dump(2) << "\n";
    return kOk;
  } catch (const UsageError& e) {
    return fail("usage", e.what(), kUsageError);
  } catch (const ParseError& e) {
    return fail("parse", e.what(), kUsageError);
  } catch (const DomainError& e) {
    return fail("domain", e.what(), kDomainError);
  }
}

}  // namespace perfsurf::cli
