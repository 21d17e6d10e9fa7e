#include "enum_check.hpp"

#include <algorithm>
#include <chrono>
#include <iostream>
#include <mutex>
#include <thread>

#include <absl/container/flat_hash_set.h>

namespace oracle {

using perfsurf::SpaceExpr;

namespace {

// Distinct rule instances, keyed by (rule, lhs hash, rhs hash). The key
// space is 64-bit; a collision would only skip re-checking one instance.
class InstanceSet {
 public:
  bool insert(perfsurf::RewriteRule rule, const SpaceExpr& lhs, const SpaceExpr& rhs) {
    std::uint64_t k = lhs.hash();
    k ^= rhs.hash() + 0x9e3779b97f4a7c15ULL + (k << 6) + (k >> 2);
    k = k * 0xff51afd7ed558ccdULL + static_cast<std::uint64_t>(rule);
    Shard& s = shards_[k % kShards];
    std::lock_guard<std::mutex> lock(s.mutex);
    return s.keys.insert(k).second;
  }

 private:
  static constexpr std::size_t kShards = 64;
  struct Shard {
    std::mutex mutex;
    absl::flat_hash_set<std::uint64_t> keys;
  };
  std::array<Shard, kShards> shards_;
};

struct Local {
  EnumReport report;
  InstanceSet* instances = nullptr;
};

void note(EnumReport& r, const std::string& what, const SpaceExpr& e) {
  if (r.samples.size() < 20) r.samples.push_back(what + ": " + perfsurf::toString(e));
}

void checkOne(const SpaceExpr& e, const Info& info, Local& local, const EnumOptions& options) {
  EnumReport& r = local.report;
  ++r.expressions;

  if (options.roundTrip) {
    bool same = false;
    try {
      same = perfsurf::parseExpr(perfsurf::toString(e)) == e;
    } catch (const std::exception&) {
    }
    if (!same) {
      ++r.roundTripFailures;
      note(r, "roundTrip", e);
    }
  }

  const std::uint32_t want = stabilization(info.sig);
  Signature expect = info.sig;
  SpaceExpr x = e;
  std::uint32_t steps = 0;
  bool ok = true;
  for (;;) {
    SpaceExpr next = perfsurf::derivative(x);
    ++r.derivativeSteps;
    Signature derived = shift(expect);
    if (perfsurf::validateExpr(next) || infoOf(next).sig != derived) {
      ok = false;
      break;
    }
    if (next == x) break;
    x = std::move(next);
    expect = derived;
    if (++steps > want) {
      ok = false;
      break;
    }
  }
  if (!ok || steps != want) {
    ++r.derivativeMismatches;
    note(r, "derivative", e);
  }

  perfsurf::RankResult rk = perfsurf::rank(e);
  if (rk.rank.asFinite() != std::optional<std::uint64_t>(want) || infoOf(rk.kernel).sig != kernelPart(info.sig)) {
    ++r.rankMismatches;
    note(r, "rank", e);
  }
  perfsurf::PointRank d = perfsurf::designatedRank(e);
  bool dOk = info.designatedLevel == kPerfect ? d.perfect
                                              : !d.perfect && d.level.asFinite() == info.designatedLevel;
  if (!dOk) {
    ++r.designatedMismatches;
    note(r, "designatedRank", e);
  }

  if (!options.rewrites) return;
  // Each instance is checked the first time any thread sees it.
  SpaceExpr c = perfsurf::canonicalize(e, [&](perfsurf::RewriteRule rule, const SpaceExpr& lhs, const SpaceExpr& rhs) {
    if (!local.instances->insert(rule, lhs, rhs)) return;
    ++r.instances[static_cast<std::size_t>(rule)];
    if (!(perfsurf::fingerprint(lhs) == perfsurf::fingerprint(rhs))) {
      ++r.instanceFailures;
      if (r.samples.size() < 20) {
        r.samples.push_back("rewrite " + std::string(perfsurf::toString(rule)) + ": " + perfsurf::toString(lhs) +
                            " -> " + perfsurf::toString(rhs));
      }
    }
  });
  if (!(perfsurf::canonicalize(c) == c) || infoOf(c).sig != info.sig) {
    ++r.idempotenceFailures;
    note(r, "canonicalize", e);
  }
}

void merge(EnumReport& into, const EnumReport& from) {
  into.expressions += from.expressions;
  into.derivativeSteps += from.derivativeSteps;
  into.derivativeMismatches += from.derivativeMismatches;
  into.rankMismatches += from.rankMismatches;
  into.designatedMismatches += from.designatedMismatches;
  into.idempotenceFailures += from.idempotenceFailures;
  into.roundTripFailures += from.roundTripFailures;
  into.instanceFailures += from.instanceFailures;
  for (std::size_t r = 0; r < 7; ++r) into.instances[r] += from.instances[r];
  for (const auto& s : from.samples) {
    if (into.samples.size() < 20) into.samples.push_back(s);
  }
}

}  // namespace

EnumReport runEnumeration(const EnumOptions& options) {
  const unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  Enumerator en(options.maxSize);
  InstanceSet instances;
  std::vector<Local> locals(threads);
  for (auto& l : locals) l.instances = &instances;
  auto started = std::chrono::steady_clock::now();

  for (int size = 1; size <= options.maxSize; ++size) {
    auto work = [&](unsigned t) {
      Local& local = locals[t];
      auto visit = [&](const SpaceExpr& e, const Info& info) { checkOne(e, info, local, options); };
      if (size <= Enumerator::kStoredSize) {
        const auto& stored = en.stored(size);
        for (std::size_t i = t; i < stored.size(); i += threads) visit(stored[i].expr, stored[i].info);
      } else {
        en.forEach(size, visit, t, threads);
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work, t);
    work(0);
    for (auto& th : pool) th.join();
    if (options.progress) {
      std::uint64_t n = 0;
      for (const auto& l : locals) n += l.report.expressions;
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
      std::cerr << "  size " << size << " done: " << n << " terms, " << secs << " s\n";
    }
  }

  EnumReport total;
  for (const auto& l : locals) merge(total, l.report);
  return total;
}

}  // namespace oracle
