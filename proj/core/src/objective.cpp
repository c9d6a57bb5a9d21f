#include "cocoa/objective.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "cocoa/errors.hpp"

namespace cocoa {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Left-to-right summation by default; Kahan compensation on request.
class Accumulator {
 public:
  explicit Accumulator(SumMode mode) : compensated_(mode == SumMode::Compensated) {}

  void add(double x) {
    if (compensated_) {
      const double y = x - carry_;
      const double t = sum_ + y;
      carry_ = (t - sum_) - y;
      sum_ = t;
    } else {
      sum_ += x;
    }
  }

  double total() const { return sum_; }

 private:
  bool compensated_;
  double sum_ = 0.0;
  double carry_ = 0.0;
};

double squared_norm(const std::vector<double>& v, SumMode mode) {
  Accumulator acc(mode);
  for (double x : v) acc.add(x * x);
  return acc.total();
}

}  // namespace

Problem::Problem(SparseDataset dataset_in, LossModel loss_in, double lambda_in)
    : dataset(std::move(dataset_in)), loss(loss_in), lambda(lambda_in) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ConfigError("lambda must be positive and finite");
  }
}

std::vector<double> primal_from_dual(const Problem& p, const std::vector<double>& alpha) {
  if (static_cast<int>(alpha.size()) != p.n()) {
    throw DimensionError("alpha length does not match dataset size");
  }
  std::vector<double> w(p.dim(), 0.0);
  for (int i = 0; i < p.n(); ++i) {
    if (alpha[i] != 0.0) add_scaled_column(p.dataset, i, alpha[i], &w);
  }
  const double inv = 1.0 / (p.lambda * static_cast<double>(p.n()));
  for (double& x : w) x *= inv;
  return w;
}

double primal_value(const Problem& p, const std::vector<double>& w, SumMode mode) {
  if (static_cast<int>(w.size()) != p.dim()) {
    throw DimensionError("w length does not match feature dimension");
  }
  Accumulator acc(mode);
  for (int i = 0; i < p.n(); ++i) {
    acc.add(p.loss.value(dot_column(p.dataset, i, w), p.dataset.label(i)));
  }
  return acc.total() / static_cast<double>(p.n()) +
         0.5 * p.lambda * squared_norm(w, mode);
}

double dual_value(const Problem& p, const std::vector<double>& alpha, SumMode mode) {
  if (static_cast<int>(alpha.size()) != p.n()) {
    throw DimensionError("alpha length does not match dataset size");
  }
  Accumulator acc(mode);
  for (int i = 0; i < p.n(); ++i) {
    const double c = p.loss.conjugate(-alpha[i], p.dataset.label(i));
    if (c == kInf) return -kInf;
    acc.add(c);
  }
  std::vector<double> scaled = primal_from_dual(p, alpha);  // A alpha / (lambda n)
  return -acc.total() / static_cast<double>(p.n()) -
         0.5 * p.lambda * squared_norm(scaled, mode);
}

double duality_gap(const Problem& p, const std::vector<double>& alpha, SumMode mode) {
  const double d = dual_value(p, alpha, mode);
  if (d == -kInf) return kInf;
  return primal_value(p, primal_from_dual(p, alpha), mode) - d;
}

bool dual_state_consistent(const Problem& p, const DualState& state, double tol) {
  const std::vector<double> fresh = primal_from_dual(p, state.alpha);
  double max_abs = 0.0, max_err = 0.0;
  for (std::size_t j = 0; j < fresh.size(); ++j) {
    max_abs = std::max(max_abs, std::fabs(state.w[j]));
    max_err = std::max(max_err, std::fabs(state.w[j] - fresh[j]));
  }
  return max_err <= tol * (1.0 + max_abs);
}

}  // namespace cocoa
