#pragma once

#include <cstdint>
#include <vector>

#include "cocoa/objective.hpp"
#include "cocoa/partition.hpp"

namespace cocoa {

// Immutable inputs a worker sees for one round: the shared primal vector at
// round start, its own dual block (masked full-length vector, zero outside
// P_k), and the subproblem/aggregation parameters.
struct SubproblemContext {
  int k = 0;
  std::vector<double> w_snapshot;
  std::vector<double> alpha_block;
  double sigma_prime = 1.0;
  double gamma = 1.0;
};

// Data-dependent constants of a partition: per-block spectral norms sigma_k,
// their size-weighted sum sigma = sum_k sigma_k n_k, and the slack ratio
// n^2 / (K sigma) of the worst-case bound sigma <= n^2/K.
struct SpectralConstants {
  std::vector<double> sigma_k;
  double sigma = 0.0;
  double ratio = 0.0;
};

// Value of the local subproblem objective
//   G_k(d) = -(1/n) sum_{i in P_k} l_i*(-(alpha_i + d_i))
//            - (1/K)(lambda/2) ||w||^2 - (1/n) w' A d
//            - sigma' ||A d||^2 / (2 lambda n^2)
// for a masked update d supported on P_k; -inf if any conjugate is infinite.
// Recomputes A d from scratch on every call: this is the oracle the solver's
// incremental caches are tested against, so it shares no state with them.
double subproblem_value(const Problem& p, const Partition& part,
                        const SubproblemContext& ctx, const std::vector<double>& delta_block);

// Largest eigenvalue of A_k' A_k (columns of block k) by power iteration to
// relative tolerance tol, capped at 10000 sweeps. Deterministic all-ones
// start plus one fixed-seed random restart. Empty or all-zero blocks give 0.
double block_sigma(const SparseDataset& ds, const Partition& part, int k,
                   double tol = 1e-9);

SpectralConstants spectral_constants(const SparseDataset& ds, const Partition& part,
                                     double tol = 1e-9);

// Sampled lower bound on the smallest valid subproblem parameter
//   sigma'_min = gamma * max_alpha ||A alpha||^2 / sum_k ||A alpha_[k]||^2.
// Seeded random directions refined by gradient ascent; best-so-far over
// trials, so the result is nondecreasing in `trials`. The exact maximum is a
// generalized eigenproblem this deliberately does not solve.
double sigma_prime_lower_bound(const SparseDataset& ds, const Partition& part,
                               double gamma, int trials, std::uint64_t seed);

// The always-valid choice sigma' = gamma * K.
double safe_sigma_prime(double gamma, int K);

}  // namespace cocoa
