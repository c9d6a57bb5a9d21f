#pragma once

#include <cstdint>
#include <vector>

#include "cocoa/objective.hpp"
#include "cocoa/partition.hpp"

namespace cocoa {

// Independent DisDCA (practical variant) implementation, kept solely as an
// equivalence oracle for the adding configuration: on balanced partitions,
// one round here matches one framework round with SDCA, sigma' = K, gamma = 1
// coordinate for coordinate. It deliberately re-derives its own update rule
// (dual steps against a local primal image maintained with factor
// 1/(lambda n_k)) instead of reusing the framework's solver.
struct DisDcaState {
  std::vector<double> alpha;
  std::vector<double> w;
  int round = 0;
};

DisDcaState disdca_init(const Problem& p);

// One synchronized round of H coordinate steps per worker. Workers draw from
// the same (seed, round, k) streams the framework uses. Requires a balanced
// partition (all n_k equal).
void disdca_p_round(const Problem& p, const Partition& part, DisDcaState* state, long H,
                    std::uint64_t seed);

}  // namespace cocoa
