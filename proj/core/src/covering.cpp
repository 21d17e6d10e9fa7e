#include "perfsurf/covering.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>

#include "perfsurf/error.hpp"

namespace perfsurf {

namespace {

// "a then b".
Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation out(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) out[x] = b[a[x]];
  return out;
}

Permutation identityPermutation(std::size_t n) {
  Permutation p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  return p;
}

bool isBijection(const Permutation& p, std::size_t n) {
  if (p.size() != n) return false;
  std::vector<bool> hit(n, false);
  for (std::size_t v : p) {
    if (v >= n || hit[v]) return false;
    hit[v] = true;
  }
  return true;
}

std::string cycleString(const Permutation& p) {
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t s = 0; s < p.size(); ++s) {
    if (seen[s] || p[s] == s) continue;
    out += "(";
    for (std::size_t x = s; !seen[x]; x = p[x]) {
      if (x != s) out += " ";
      out += std::to_string(x + 1);
      seen[x] = true;
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

std::string coordString(const std::vector<long>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out + ")";
}

}  // namespace

Permutation parseCycles(const std::string& text, std::size_t degree) {
  Permutation p = identityPermutation(degree);
  std::vector<bool> used(degree, false);
  std::size_t i = 0;
  auto fail = [&](const std::string& msg) -> void { throw ParseError("cycles: " + msg + " at position " + std::to_string(i), i); };
  auto skip = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',')) ++i;
  };
  skip();
  while (i < text.size()) {
    if (text[i] != '(') fail("expected '('");
    ++i;
    std::vector<std::size_t> cycle;
    for (;;) {
      skip();
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) fail("expected point");
      std::size_t v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + static_cast<std::size_t>(text[i] - '0');
        if (v > degree) fail("point exceeds degree " + std::to_string(degree));
        ++i;
      }
      if (v == 0) fail("points are 1-based");
      if (used[v - 1]) fail("point " + std::to_string(v) + " repeated");
      used[v - 1] = true;
      cycle.push_back(v - 1);
    }
    for (std::size_t k = 0; k < cycle.size(); ++k) p[cycle[k]] = cycle[(k + 1) % cycle.size()];
    skip();
  }
  return p;
}

GroupSpec GroupSpec::fromTable(std::vector<std::vector<std::size_t>> table, std::vector<std::size_t> generators) {
  GroupSpec s;
  s.kind = Kind::Table;
  s.table = std::move(table);
  s.tableGenerators = std::move(generators);
  return s;
}

GroupSpec GroupSpec::fromPermutations(std::size_t degree, std::vector<Permutation> generators) {
  GroupSpec s;
  s.kind = Kind::Permutations;
  s.degree = degree;
  s.permutations = std::move(generators);
  return s;
}

GroupSpec GroupSpec::fromTranslations(std::vector<std::vector<long>> generators, std::size_t radius) {
  GroupSpec s;
  s.kind = Kind::Lattice;
  s.translations = std::move(generators);
  s.radius = radius;
  return s;
}

std::size_t GroupSpec::generatorCount() const {
  switch (kind) {
    case Kind::Table:
      return tableGenerators.size();
    case Kind::Permutations:
      return permutations.size();
    case Kind::Lattice:
      return translations.size();
  }
  return 0;
}

void validateGroupSpec(const GroupSpec& spec) {
  if (spec.generatorCount() == 0) throw DomainError("group spec: at least one generator is required");
  switch (spec.kind) {
    case GroupSpec::Kind::Table: {
      const std::size_t n = spec.table.size();
      if (n == 0) throw DomainError("group table is empty");
      for (const auto& row : spec.table) {
        if (!isBijection(row, n)) throw DomainError("group table rows must be permutations of 0..n-1");
      }
      for (std::size_t a = 0; a < n; ++a) {
        if (spec.table[0][a] != a || spec.table[a][0] != a) throw DomainError("group table: 0 is not the identity");
        if (std::find(spec.table[a].begin(), spec.table[a].end(), 0) == spec.table[a].end()) {
          throw DomainError("group table: missing inverse");
        }
      }
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          for (std::size_t c = 0; c < n; ++c) {
            if (spec.table[spec.table[a][b]][c] != spec.table[a][spec.table[b][c]]) {
              throw DomainError("group table is not associative");
            }
          }
        }
      }
      for (std::size_t g : spec.tableGenerators) {
        if (g >= n) throw DomainError("group table generator out of range");
      }
      return;
    }
    case GroupSpec::Kind::Permutations:
      if (spec.degree == 0) throw DomainError("permutation degree must be positive");
      for (const auto& p : spec.permutations) {
        if (!isBijection(p, spec.degree)) throw DomainError("generator is not a permutation of the given degree");
      }
      return;
    case GroupSpec::Kind::Lattice: {
      const std::size_t k = spec.translations.front().size();
      if (k == 0) throw DomainError("translation generators need at least one coordinate");
      for (const auto& t : spec.translations) {
        if (t.size() != k) throw DomainError("translation generators have different dimensions");
      }
      if (spec.radius < 1) throw DomainError("lattice radius must be >= 1");
      return;
    }
  }
}

std::optional<std::size_t> CoveringGraph::step(std::size_t v, std::size_t label) const {
  for (const auto& e : edges) {
    if (e.source == v && e.label == label) return e.target;
  }
  return std::nullopt;
}

std::vector<std::vector<std::optional<std::size_t>>> CoveringGraph::outgoing() const {
  std::vector<std::vector<std::optional<std::size_t>>> out(vertexCount, std::vector<std::optional<std::size_t>>(labelCount));
  for (const auto& e : edges) {
    if (out[e.source][e.label]) throw DomainError("two edges with the same label leave one vertex");
    out[e.source][e.label] = e.target;
  }
  return out;
}

namespace {

// Right-multiplication closure of a finite group from generators.
template <typename Element, typename Multiply, typename Name>
CoveringGraph closeFinite(const Element& identity, const std::vector<Element>& gens, Multiply mul, Name name,
                          std::size_t cap) {
  CoveringGraph g;
  g.labelCount = gens.size();
  std::map<Element, std::size_t> index;
  std::vector<Element> elements{identity};
  index.emplace(identity, 0);
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (std::size_t s = 0; s < gens.size(); ++s) {
      Element next = mul(elements[i], gens[s]);
      auto [it, inserted] = index.emplace(next, elements.size());
      if (inserted) {
        if (elements.size() >= cap) throw DomainError("group closure exceeds " + std::to_string(cap) + " elements");
        elements.push_back(next);
      }
      g.edges.push_back({i, s, it->second});
    }
  }
  g.vertexCount = elements.size();
  g.product.assign(elements.size(), std::vector<std::size_t>(elements.size()));
  for (std::size_t a = 0; a < elements.size(); ++a) {
    g.vertexNames.push_back(name(elements[a]));
    for (std::size_t b = 0; b < elements.size(); ++b) {
      auto it = index.find(mul(elements[a], elements[b]));
      if (it == index.end()) throw DomainError("generated set is not closed under products");
      g.product[a][b] = it->second;
    }
  }
  return g;
}

CoveringGraph latticeBall(const GroupSpec& spec, std::size_t cap) {
  CoveringGraph g;
  g.truncated = true;
  g.labelCount = spec.translations.size();
  const std::size_t k = spec.translations.front().size();
  std::map<std::vector<long>, std::size_t> index;
  std::vector<std::vector<long>> points{std::vector<long>(k, 0)};
  index.emplace(points[0], 0);
  g.depth.push_back(0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (g.depth[i] == spec.radius) continue;
    for (const auto& t : spec.translations) {
      for (int sign : {1, -1}) {
        std::vector<long> q = points[i];
        for (std::size_t c = 0; c < k; ++c) q[c] += sign * t[c];
        if (index.emplace(q, points.size()).second) {
          if (points.size() >= cap) throw DomainError("lattice ball exceeds " + std::to_string(cap) + " elements");
          points.push_back(q);
          g.depth.push_back(g.depth[i] + 1);
        }
      }
    }
  }
  g.vertexCount = points.size();
  for (std::size_t i = 0; i < points.size(); ++i) {
    g.vertexNames.push_back(coordString(points[i]));
    for (std::size_t s = 0; s < spec.translations.size(); ++s) {
      std::vector<long> q = points[i];
      for (std::size_t c = 0; c < k; ++c) q[c] += spec.translations[s][c];
      if (auto it = index.find(q); it != index.end()) g.edges.push_back({i, s, it->second});
    }
  }
  return g;
}

}  // namespace

CoveringGraph buildCover(const GroupSpec& spec, std::size_t elementCap) {
  validateGroupSpec(spec);
  switch (spec.kind) {
    case GroupSpec::Kind::Table: {
      // Elements are table indices; 0 is the identity.
      return closeFinite<std::size_t>(
          0, spec.tableGenerators, [&](std::size_t a, std::size_t b) { return spec.table[a][b]; },
          [](std::size_t a) { return std::to_string(a); }, elementCap);
    }
    case GroupSpec::Kind::Permutations:
      return closeFinite<Permutation>(identityPermutation(spec.degree), spec.permutations, compose, cycleString,
                                      elementCap);
    case GroupSpec::Kind::Lattice:
      return latticeBall(spec, elementCap);
  }
  return {};
}

CoveringGraph coverFromPermutations(std::size_t degree, const std::vector<Permutation>& generators) {
  if (degree == 0) throw DomainError("coverFromPermutations: degree must be positive");
  CoveringGraph g;
  g.vertexCount = degree;
  g.labelCount = generators.size();
  for (std::size_t v = 0; v < degree; ++v) g.vertexNames.push_back(std::to_string(v + 1));
  for (std::size_t s = 0; s < generators.size(); ++s) {
    if (!isBijection(generators[s], degree)) throw DomainError("coverFromPermutations: not a permutation");
    for (std::size_t v = 0; v < degree; ++v) g.edges.push_back({v, s, generators[s][v]});
  }
  return g;
}

bool coveringConditionAt(const CoveringGraph& g, std::size_t v) {
  std::vector<int> in(g.labelCount, 0), out(g.labelCount, 0);
  for (const auto& e : g.edges) {
    if (e.source == v) ++out[e.label];
    if (e.target == v) ++in[e.label];
  }
  for (std::size_t s = 0; s < g.labelCount; ++s) {
    if (in[s] != 1 || out[s] != 1) return false;
  }
  return true;
}

DeckGroupReport deckGroup(const CoveringGraph& g) {
  if (g.truncated) throw DomainError("deckGroup: the cover is truncated");
  const auto out = g.outgoing();
  for (std::size_t v = 0; v < g.vertexCount; ++v) {
    for (std::size_t s = 0; s < g.labelCount; ++s) {
      if (!out[v][s]) throw DomainError("deckGroup: vertex " + std::to_string(v) + " lacks an outgoing edge");
    }
  }
  const std::size_t n = g.vertexCount;
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  DeckGroupReport report;
  std::vector<std::size_t> indexOfImage(n, unset);
  for (std::size_t image = 0; image < n; ++image) {
    Permutation phi(n, unset);
    phi[g.basepoint] = image;
    std::deque<std::size_t> queue{g.basepoint};
    bool ok = true;
    while (!queue.empty() && ok) {
      std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t s = 0; s < g.labelCount && ok; ++s) {
        std::size_t a = *out[u][s];
        std::size_t b = *out[phi[u]][s];
        if (phi[a] == unset) {
          phi[a] = b;
          queue.push_back(a);
        } else if (phi[a] != b) {
          ok = false;
        }
      }
    }
    if (!ok || std::find(phi.begin(), phi.end(), unset) != phi.end() || !isBijection(phi, n)) continue;
    indexOfImage[image] = report.automorphisms.size();
    report.automorphisms.push_back(std::move(phi));
  }
  const std::size_t m = report.automorphisms.size();
  report.table.assign(m, std::vector<std::size_t>(m));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      // (a o b)(base) = a(b(base)).
      report.table[a][b] = indexOfImage[report.automorphisms[a][report.automorphisms[b][g.basepoint]]];
    }
  }
  if (!g.product.empty() && m == n) {
    bool verified = true;
    for (std::size_t h = 0; h < n && verified; ++h) {
      const Permutation& phi = report.automorphisms[indexOfImage[h]];
      for (std::size_t x = 0; x < n && verified; ++x) verified = phi[x] == g.product[h][x];
      for (std::size_t k = 0; k < n && verified; ++k) {
        verified = report.table[indexOfImage[h]][indexOfImage[k]] == indexOfImage[g.product[h][k]];
      }
    }
    report.isomorphismVerified = verified;
  }
  return report;
}

bool isRegular(const CoveringGraph& g) {
  const DeckGroupReport d = deckGroup(g);
  std::vector<bool> reached(g.vertexCount, false);
  for (const auto& phi : d.automorphisms) reached[phi[g.basepoint]] = true;
  return std::all_of(reached.begin(), reached.end(), [](bool b) { return b; });
}

ObstructionResult hawaiianObstruction(std::uint64_t p, std::uint64_t m) {
  if (p < 2) throw DomainError("hawaiianObstruction: p must be prime");
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) throw DomainError("hawaiianObstruction: " + std::to_string(p) + " is not prime");
  }
  if (m < 1) throw DomainError("hawaiianObstruction: m must be >= 1");
  // eta(x_k) = 1 in Z/p for every k, so x_m already escapes the kernel.
  return {m, 1};
}

std::vector<CatalogEntry> finiteGroupCatalog() {
  std::vector<CatalogEntry> out;
  for (std::size_t n = 1; n <= 12; ++n) {
    std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) table[a][b] = (a + b) % n;
    }
    out.push_back({"Z/" + std::to_string(n), GroupSpec::fromTable(std::move(table), {n == 1 ? std::size_t{0} : std::size_t{1}}), n});
  }
  out.push_back({"S3", GroupSpec::fromPermutations(3, {parseCycles("(1 2)", 3), parseCycles("(1 2 3)", 3)}), 6});
  out.push_back({"D4", GroupSpec::fromPermutations(4, {parseCycles("(1 2 3 4)", 4), parseCycles("(2 4)", 4)}), 8});
  {
    // Q8 = {+-1, +-i, +-j, +-k}; element 2u + s is (-1)^s times unit u.
    static const int unitSign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    static const int unitProduct[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    std::vector<std::vector<std::size_t>> table(8, std::vector<std::size_t>(8));
    for (std::size_t a = 0; a < 8; ++a) {
      for (std::size_t b = 0; b < 8; ++b) {
        std::size_t ua = a / 2, ub = b / 2;
        int sign = (a % 2 ? -1 : 1) * (b % 2 ? -1 : 1) * unitSign[ua][ub];
        table[a][b] = 2 * static_cast<std::size_t>(unitProduct[ua][ub]) + (sign < 0 ? 1 : 0);
      }
    }
    out.push_back({"Q8", GroupSpec::fromTable(std::move(table), {2, 4}), 8});
  }
  out.push_back({"A4", GroupSpec::fromPermutations(4, {parseCycles("(1 2 3)", 4), parseCycles("(1 2)(3 4)", 4)}), 12});
  return out;
}

}  // namespace perfsurf
