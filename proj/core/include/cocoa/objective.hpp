#pragma once

#include <vector>

#include "cocoa/dataset.hpp"
#include "cocoa/losses.hpp"

namespace cocoa {

// Regularized empirical loss instance:
//   P(w) = (1/n) sum_i l_i(x_i' w) + (lambda/2) ||w||^2
// with dual
//   D(alpha) = -(1/n) sum_i l_i*(-alpha_i) - (lambda/2) ||A alpha / (lambda n)||^2
// and the primal-dual map w(alpha) = A alpha / (lambda n).
struct Problem {
  Problem(SparseDataset dataset_in, LossModel loss_in, double lambda_in);

  SparseDataset dataset;
  LossModel loss;
  double lambda;

  int n() const { return dataset.n(); }
  int dim() const { return dataset.dim(); }
};

// Dual vector together with the primal image w(alpha) a driver maintains
// incrementally alongside it.
struct DualState {
  std::vector<double> alpha;
  std::vector<double> w;
};

enum class SumMode { Plain, Compensated };

// w(alpha) computed from scratch; the oracle incremental caches are checked
// against.
std::vector<double> primal_from_dual(const Problem& p, const std::vector<double>& alpha);

double primal_value(const Problem& p, const std::vector<double>& w,
                    SumMode mode = SumMode::Plain);

// -inf when any conjugate term is infinite (dual-infeasible alpha).
double dual_value(const Problem& p, const std::vector<double>& alpha,
                  SumMode mode = SumMode::Plain);

// P(w(alpha)) - D(alpha). Raw value: tiny negatives (~ -1e-12 roundoff) are
// possible and deliberately not clamped here; +inf for infeasible alpha.
double duality_gap(const Problem& p, const std::vector<double>& alpha,
                   SumMode mode = SumMode::Plain);

// max_j |w_j - w_from_scratch_j| <= tol * (1 + max_j |w_j|); used to validate
// incrementally maintained primal images.
bool dual_state_consistent(const Problem& p, const DualState& state, double tol = 1e-8);

}  // namespace cocoa
