#include "perfsurf/json_io.hpp"

#include "perfsurf/error.hpp"

namespace perfsurf::io {

namespace {

[[noreturn]] void shape(const std::string& msg) { throw ParseError("input: " + msg); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) shape(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::string stringOf(const json& j, const std::string& what) {
  if (!j.is_string()) shape(what + " must be a string");
  return j.get<std::string>();
}

}  // namespace

json toJson(const Fingerprint& f) {
  json trace = json::array();
  for (const auto& r : f.planarTrace) trace.push_back(toString(r));
  return {
      {"rankE", toString(f.rankE)},   {"kernelE", f.kernelE},   {"rankNP", toString(f.rankNP)},
      {"kernelNP", f.kernelNP},       {"rankNO", toString(f.rankNO)}, {"kernelNO", f.kernelNO},
      {"planarKind", std::string(toString(f.planarKind))}, {"planarTrace", trace},
  };
}

json toJson(const PerforationClass& c) {
  return {
      {"genus", toString(c.genus)},
      {"orient", std::string(toString(c.orient))},
      {"canonicalEnds", toString(c.canonicalEnds)},
      {"planarKind", std::string(toString(c.planarKind))},
      {"fingerprint", toJson(c.fingerprint)},
  };
}

SurfaceDescriptor descriptorFromJson(const json& j) {
  SurfaceDescriptor d;
  const json& g = field(j, "genus");
  if (g.is_string()) {
    d.genus = parseGenus(g.get<std::string>());
  } else if (g.is_number_unsigned()) {
    d.genus = Genus::finite(g.get<std::uint64_t>());
  } else {
    shape("genus must be \"inf\" or a non-negative integer");
  }
  const std::string orient = stringOf(field(j, "orient"), "orient");
  auto o = parseOrientation(orient);
  if (!o) shape("unknown orientation class \"" + orient + "\"");
  d.orient = *o;
  d.ends = parseExpr(stringOf(field(j, "ends"), "ends"));
  return d;
}

json toJson(const SurfaceDescriptor& d) {
  json genus = d.genus.isInfinite() ? json("inf") : json(d.genus.value());
  return {{"genus", genus}, {"orient", std::string(toString(d.orient))}, {"ends", toString(d.ends)}};
}

QuadNum quadFromJson(const json& j) {
  if (j.is_string()) return QuadNum(parseRational(j.get<std::string>()));
  if (j.is_number_integer()) return QuadNum(j.get<long>());
  if (!j.is_array() || j.size() != 2) shape("coordinate must be [a, b] meaning a + b*sqrt2");
  auto part = [](const json& c) {
    if (c.is_string()) return parseRational(c.get<std::string>());
    if (c.is_number_integer()) return mpq_class(c.get<long>());
    shape("coordinate parts must be rational strings or integers");
  };
  return QuadNum(part(j[0]), part(j[1]));
}

json toJson(const QuadNum& q) { return json::array({toString(q.a()), toString(q.b())}); }

PLLoop loopFromJson(const json& j) {
  const json& vs = j.is_object() ? field(j, "vertices") : j;
  if (!vs.is_array()) shape("loop must be an array of vertices");
  PLLoop loop;
  for (const auto& v : vs) {
    if (!v.is_array() || v.size() != 2) shape("vertex must be [x, y]");
    loop.vertices.push_back({quadFromJson(v[0]), quadFromJson(v[1])});
  }
  return loop;
}

json toJson(const PLLoop& loop) {
  json out = json::array();
  for (const auto& v : loop.vertices) out.push_back(json::array({toJson(v.x), toJson(v.y)}));
  return out;
}

json toJson(const RationalPoint& p) { return json::array({toString(p.x), toString(p.y)}); }

RationalVector rationalVectorFromJson(const json& j) {
  if (!j.is_array()) shape("point must be an array of rationals");
  RationalVector out;
  for (const auto& c : j) {
    if (c.is_string()) {
      out.push_back(parseRational(c.get<std::string>()));
    } else if (c.is_number_integer()) {
      out.emplace_back(c.get<long>());
    } else {
      shape("point coordinates must be rational strings or integers");
    }
  }
  return out;
}

json toJson(const RationalVector& v) {
  json out = json::array();
  for (const auto& c : v) out.push_back(toString(c));
  return out;
}

GroupSpec groupSpecFromJson(const json& j) {
  const std::string type = stringOf(field(j, "type"), "type");
  const json& gens = field(j, "generators");
  if (!gens.is_array()) shape("generators must be an array");
  try {
    if (type == "table") {
      return GroupSpec::fromTable(field(j, "table").get<std::vector<std::vector<std::size_t>>>(),
                                  gens.get<std::vector<std::size_t>>());
    }
    if (type == "permutations") {
      const auto degree = field(j, "degree").get<std::size_t>();
      std::vector<Permutation> perms;
      for (const auto& g : gens) perms.push_back(parseCycles(stringOf(g, "permutation generator"), degree));
      return GroupSpec::fromPermutations(degree, std::move(perms));
    }
    if (type == "lattice") {
      return GroupSpec::fromTranslations(gens.get<std::vector<std::vector<long>>>(),
                                         field(j, "radius").get<std::size_t>());
    }
  } catch (const json::exception& e) {
    shape(std::string("group spec: ") + e.what());
  }
  shape("unknown group type \"" + type + "\"");
}

json toJson(const CoveringGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges) edges.push_back(json::array({e.source, e.label, e.target}));
  return {
      {"vertices", g.vertexNames}, {"labels", g.labelCount}, {"edges", edges},
      {"basepoint", g.basepoint},  {"truncated", g.truncated},
  };
}

}  // namespace perfsurf::io
