#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace perfsurf {

/// Permutation of {0..n-1} as its image list.
using Permutation = std::vector<std::size_t>;

/// Parses cycle notation over 1-based points, e.g. "(1 2)(3 4)" or "()",
/// into a permutation of {0..degree-1}. Throws ParseError.
Permutation parseCycles(const std::string& text, std::size_t degree);

/// A countable group given by generators.
struct GroupSpec {
  enum class Kind : std::uint8_t { Table, Permutations, Lattice };
  Kind kind = Kind::Table;

  /// Table: table[a][b] = a*b over {0..n-1}, identity 0.
  std::vector<std::vector<std::size_t>> table;
  /// Table: generator elements.
  std::vector<std::size_t> tableGenerators;

  /// Permutations: generators acting on {0..degree-1}.
  std::size_t degree = 0;
  std::vector<Permutation> permutations;

  /// Lattice: translation generators of Z^k, materialized in the word-metric
  /// ball of radius `radius`.
  std::vector<std::vector<long>> translations;
  std::size_t radius = 1;

  static GroupSpec fromTable(std::vector<std::vector<std::size_t>> table, std::vector<std::size_t> generators);
  static GroupSpec fromPermutations(std::size_t degree, std::vector<Permutation> generators);
  static GroupSpec fromTranslations(std::vector<std::vector<long>> generators, std::size_t radius);

  std::size_t generatorCount() const;
};

/// Throws DomainError when the spec is malformed: the table is not a group
/// with identity 0, a permutation is not a bijection, or the lattice
/// generators have mismatched dimensions or radius 0.
void validateGroupSpec(const GroupSpec& spec);

/// Labeled graph covering the rose with one petal per generator.
struct CoveringGraph {
  struct Edge {
    std::size_t source;
    std::size_t label;
    std::size_t target;
  };

  std::size_t vertexCount = 0;
  std::size_t labelCount = 0;
  std::vector<Edge> edges;
  std::size_t basepoint = 0;
  /// Ball of an infinite group; outer vertices lack edges.
  bool truncated = false;
  /// Human-readable vertex names.
  std::vector<std::string> vertexNames;
  /// For Cayley graphs: group product on vertex indices (vertex i is the
  /// element i; 0 is the identity). Empty otherwise.
  std::vector<std::vector<std::size_t>> product;
  /// For lattice balls: word distance of each vertex from the basepoint.
  std::vector<std::size_t> depth;

  /// Target of the unique `label` edge leaving v, if present.
  std::optional<std::size_t> step(std::size_t v, std::size_t label) const;

  /// Adjacency index, built on demand by the operations below.
  std::vector<std::vector<std::optional<std::size_t>>> outgoing() const;
};

/// Cayley graph of the generated group under right multiplication. Throws
/// DomainError if more than `elementCap` elements are generated.
CoveringGraph buildCover(const GroupSpec& spec, std::size_t elementCap = 100000);

/// Schreier graph of a permutation action: vertex i has an edge labeled j to
/// generators[j][i].
CoveringGraph coverFromPermutations(std::size_t degree, const std::vector<Permutation>& generators);

/// One in-edge and one out-edge per label at vertex v.
bool coveringConditionAt(const CoveringGraph& g, std::size_t v);

struct DeckGroupReport {
  /// Label-preserving automorphisms as vertex permutations; index 0 is the
  /// identity, the rest ordered by the image of the basepoint.
  std::vector<Permutation> automorphisms;
  /// Composition table: table[a][b] = index of automorphisms[a] o automorphisms[b].
  std::vector<std::vector<std::size_t>> table;
  /// The automorphism moving the basepoint to vertex h is left multiplication
  /// by h, and h -> that automorphism is a homomorphism onto the deck group.
  bool isomorphismVerified = false;

  std::size_t order() const { return automorphisms.size(); }
};

/// Throws DomainError on truncated covers.
DeckGroupReport deckGroup(const CoveringGraph& g);

/// Deck group transitive on the fiber. Throws DomainError on truncated covers.
bool isRegular(const CoveringGraph& g);

struct ObstructionResult {
  std::uint64_t k = 0;
  std::uint64_t value = 0;
};

/// The homomorphism to Z/p sending every earring generator x_k to 1: returns
/// the first k >= m with nonzero image. Throws DomainError unless p is prime
/// and m >= 1.
ObstructionResult hawaiianObstruction(std::uint64_t p, std::uint64_t m);

struct CatalogEntry {
  std::string name;
  GroupSpec spec;
  std::size_t order;
};

/// Z/n for n <= 12, S3, D4, Q8 and A4.
std::vector<CatalogEntry> finiteGroupCatalog();

}  // namespace perfsurf
