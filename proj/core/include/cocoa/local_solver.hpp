#pragma once

#include <cstdint>
#include <vector>

#include "cocoa/subproblem.hpp"

namespace cocoa {

// Result of one local solve: the accumulated dual change of block k (masked
// full-length vector) and its primal image delta_w = A delta_alpha/(lambda n),
// maintained incrementally step by step.
struct LocalUpdate {
  std::vector<double> delta_alpha;
  std::vector<double> delta_w;
  long steps = 0;
};

// Exact maximizer of the one-dimensional concave problem a single coordinate
// step solves:
//   max_delta  -l_i*(-(alpha_i + delta)) - delta * x_i' u_local
//              - sigma' ||x_i||^2 / (2 lambda n) * delta^2
// Closed form for hinge and smoothed hinge (box-clipped Newton step in the
// beta = alpha*y parameterization), safeguarded Newton with bisection
// fallback for logistic. Zero-norm columns short-circuit to delta = 0.
double coordinate_delta(const LossModel& loss, const std::vector<FeatureEntry>& xi,
                        double xi_norm_sq, int yi, double alpha_i,
                        const std::vector<double>& u_local, double sigma_prime,
                        double lambda, int n);

// Randomized single-coordinate ascent on the local subproblem: H uniform
// draws from P_k with replacement, each taking the exact coordinate argmax.
// The running local primal image u = w + (sigma'/(lambda n)) A delta_alpha is
// kept dense so each step costs O(nnz(x_i)).
LocalUpdate local_sdca(const Problem& p, const Partition& part,
                       const SubproblemContext& ctx, long H, std::uint64_t rng_seed);

// Inner-iteration budget guaranteeing quality theta for (1/mu)-smooth losses:
//   ceil( n_k * (sigma' r_max + lambda n mu) / (lambda n mu) * log(1/theta) ).
long required_H_smooth(long n_k, double sigma_prime, double r_max, double lambda,
                       long n, double mu, double theta);

// Inner-iteration budget for L-Lipschitz losses, a pure formula evaluator fed
// with the optimal-solution quantities (block optimum norm and subproblem
// gap) an oracle must supply:
//   ceil( n_k * ( (1-theta)/theta
//                 + sigma' r_max ||d*||^2 / (2 theta lambda n^2 gap) ) ).
long required_H_lipschitz(long n_k, double sigma_prime, double r_max, double lambda,
                          long n, double theta, double delta_star_norm_sq,
                          double subproblem_gap);

// Realized approximation quality of an update against a near-optimal
// reference value of the same subproblem:
//   (G(ref) - G(update)) / (G(ref) - G(0)), clamped to [0, 1];
// 0 when the subproblem is already optimal at 0.
double measure_theta(const Problem& p, const Partition& part, const SubproblemContext& ctx,
                     const LocalUpdate& update, double reference_opt_value);

}  // namespace cocoa
