#pragma once

// Test-side oracles, deliberately independent of the implementation paths
// they check: brute-force conjugates, a dense Jacobi eigensolver, grid and
// golden-section searches for 1-D coordinate problems, and a certified
// reference solver (its quality is attested by its own duality gap, whose
// math is validated separately against the brute-force oracles).

#include <cstdint>
#include <vector>

#include "cocoa/framework.hpp"

namespace cocoa::testing {

// sup_a { a*v - l(a) } over the grid a = -50 + j*1e-4, j = 0..10^6.
double conjugate_by_grid(const LossModel& loss, double v, int y);

// Largest eigenvalue of a symmetric matrix by cyclic Jacobi sweeps.
double jacobi_top_eigenvalue(std::vector<std::vector<double>> m);

// Dense Gram matrix of one partition block.
std::vector<std::vector<double>> block_gram(const SparseDataset& ds, const Partition& part,
                                            int k);

// The 1-D objective a single coordinate step maximizes, evaluated at the dual
// box coordinate beta (so delta = y*(beta - alpha_i*y)); assembled from
// LossModel::conjugate rather than the solver's closed forms.
double coordinate_objective(const LossModel& loss, const std::vector<FeatureEntry>& xi,
                            int yi, double alpha_i, const std::vector<double>& u_local,
                            double sigma_prime, double lambda, int n, double beta);

// Best value over 10001 equally spaced beta in [0, 1].
double coordinate_grid_max(const LossModel& loss, const std::vector<FeatureEntry>& xi,
                           int yi, double alpha_i, const std::vector<double>& u_local,
                           double sigma_prime, double lambda, int n);

// Golden-section maximum of the same objective over beta in [0, 1].
double coordinate_golden_max(const LossModel& loss, const std::vector<FeatureEntry>& xi,
                             int yi, double alpha_i, const std::vector<double>& u_local,
                             double sigma_prime, double lambda, int n);

// Small random problem on normalized synthetic data.
Problem make_random_problem(int n, int d, LossKind kind, double lambda,
                            std::uint64_t seed, double sparsity = 0.5);

// Dual vector with every beta_i = alpha_i*y_i uniform in [0, 1].
std::vector<double> random_feasible_alpha(const Problem& p, std::uint64_t seed);

struct Reference {
  double primal = 0.0;
  double dual = 0.0;
  double gap = 0.0;
  bool reached = false;
};

// Serial (K = 1) solve until the duality gap certifies the requested
// accuracy; P* lies in [dual, primal] on success.
Reference reference_solve(const Problem& p, double gap_tol, std::uint64_t seed,
                          int max_rounds = 20000);

}  // namespace cocoa::testing
