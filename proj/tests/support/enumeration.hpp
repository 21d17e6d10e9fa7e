#pragma once

// Exhaustive enumeration of valid end terms by node count over the atoms
// Pt, Cantor and Scat(a <= 3, n <= 2) with every label. Terms of size up to
// kStoredSize are kept (with oracle data); larger ones are streamed as one
// fresh Sum or Conv node over stored children.

#include <cstdint>
#include <functional>
#include <vector>

#include "perfsurf/endspace.hpp"
#include "point_oracle.hpp"

namespace oracle {

struct Stored {
  perfsurf::SpaceExpr expr;
  Info info;
};

class Enumerator {
 public:
  static constexpr int kStoredSize = 5;

  // Terms of size <= min(maxSize, kStoredSize) are built eagerly.
  explicit Enumerator(int maxSize);

  using Visit = std::function<void(const perfsurf::SpaceExpr&, const Info&)>;

  // Visits every valid term of exactly `size` nodes. With shardCount > 1 only
  // the terms whose top-level split falls in `shard` are visited; the shards
  // partition the terms.
  void forEach(int size, const Visit& visit, std::size_t shard = 0, std::size_t shardCount = 1) const;

  // Number of valid terms of each size, counted combinatorially.
  static std::uint64_t count(int size);

  const std::vector<Stored>& stored(int size) const { return bySize_[static_cast<std::size_t>(size)]; }

 private:
  void build(int size);
  void sums(int total, std::vector<const Stored*>& prefix, const Visit& visit, std::size_t shard,
            std::size_t shardCount, std::uint64_t& counter) const;

  int maxSize_;
  std::vector<std::vector<Stored>> bySize_;
};

}  // namespace oracle
