#include "cocoa/partition.hpp"

#include <numeric>
#include <utility>

#include "cocoa/errors.hpp"
#include "cocoa/rng.hpp"

namespace cocoa {

PartitionStrategy parse_partition_strategy(const std::string& name) {
  if (name == "balanced-random") return PartitionStrategy::BalancedRandom;
  if (name == "contiguous") return PartitionStrategy::Contiguous;
  throw ConfigError("unknown partition strategy '" + name +
                    "' (expected balanced-random or contiguous)");
}

std::string partition_strategy_name(PartitionStrategy s) {
  return s == PartitionStrategy::BalancedRandom ? "balanced-random" : "contiguous";
}

Partition::Partition(int n, int K, std::vector<int> owner)
    : K_(K), owner_(std::move(owner)) {
  if (K_ < 1 || n < K_) throw ConfigError("partition requires 1 <= K <= n");
  if (static_cast<int>(owner_.size()) != n) {
    throw DimensionError("owner vector length does not match n");
  }
  members_.resize(K_);
  for (int i = 0; i < n; ++i) {
    const int k = owner_[i];
    if (k < 0 || k >= K_) throw ConfigError("owner id out of range");
    members_[k].push_back(i);
  }
  for (int k = 0; k < K_; ++k) {
    if (members_[k].empty()) throw ConfigError("partition has an empty block");
  }
}

bool Partition::balanced() const {
  for (int k = 1; k < K_; ++k) {
    if (members_[k].size() != members_[0].size()) return false;
  }
  return true;
}

Partition make_partition(int n, int K, PartitionStrategy strategy, std::uint64_t seed) {
  if (K < 1 || K > n) throw ConfigError("make_partition requires 1 <= K <= n");
  std::vector<int> owner(n);
  if (strategy == PartitionStrategy::Contiguous) {
    // First n mod K blocks get one extra element.
    const int base = n / K, extra = n % K;
    int i = 0;
    for (int k = 0; k < K; ++k) {
      const int size = base + (k < extra ? 1 : 0);
      for (int j = 0; j < size; ++j) owner[i++] = k;
    }
  } else {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Rng rng(rng_key(seed, 0, 0x9a27));
    for (int i = n - 1; i > 0; --i) {
      const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
      std::swap(perm[i], perm[j]);
    }
    for (int pos = 0; pos < n; ++pos) owner[perm[pos]] = pos % K;
  }
  return Partition(n, K, std::move(owner));
}

}  // namespace cocoa
