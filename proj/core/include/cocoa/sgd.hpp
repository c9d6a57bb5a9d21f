#pragma once

#include "cocoa/framework.hpp"

namespace cocoa {

// Distributed primal mini-batch subgradient baseline. Per round, each worker
// averages loss subgradients at the shared w over H uniform draws from its
// block, the driver averages the worker gradients, adds lambda*w and steps
// with rate 1/(lambda*(t+1)). For comparability the log reports the duality
// gap of the dual point u with u_i = -l_i'(x_i' w).
ConvergenceLog minibatch_sgd_run(const Problem& p, const Partition& part,
                                 const RunConfig& cfg);

// One step of the baseline from an arbitrary iterate (t is the 0-based round).
void minibatch_sgd_step(const Problem& p, const Partition& part, const ResolvedConfig& cfg,
                        int t, std::vector<double>* w);

// The per-round dual candidate used for certificates.
std::vector<double> subgradient_dual_point(const Problem& p, const std::vector<double>& w);

}  // namespace cocoa
