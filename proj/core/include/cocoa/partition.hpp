#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cocoa {

enum class PartitionStrategy { BalancedRandom, Contiguous };

PartitionStrategy parse_partition_strategy(const std::string& name);
std::string partition_strategy_name(PartitionStrategy s);

// Disjoint assignment of the coordinate indices [n] to K workers. Block
// sizes differ by at most one for both strategies.
class Partition {
 public:
  Partition(int n, int K, std::vector<int> owner);

  int n() const { return static_cast<int>(owner_.size()); }
  int K() const { return K_; }
  int owner(int i) const { return owner_[i]; }
  const std::vector<int>& members(int k) const { return members_[k]; }
  int block_size(int k) const { return static_cast<int>(members_[k].size()); }
  bool balanced() const;  // all blocks the same size

 private:
  int K_;
  std::vector<int> owner_;
  std::vector<std::vector<int>> members_;
};

// BalancedRandom: seeded shuffle of [n] followed by a round-robin split.
// Contiguous: index blocks, the first n mod K blocks one element larger.
Partition make_partition(int n, int K, PartitionStrategy strategy, std::uint64_t seed);

}  // namespace cocoa
