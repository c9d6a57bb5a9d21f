#pragma once

#include <string>

namespace cocoa {

enum class LossKind { Hinge, SmoothedHinge, Logistic };

// A margin-based classification loss together with its convex conjugate and
// the regularity constants the rate calculators consume. Labels y in {-1,+1}
// are folded into the margin y*a, so every family has a single code path.
//
// Families:
//   Hinge           l(a) = max(0, 1 - y*a)
//   SmoothedHinge   quadratic smoothing of the hinge with parameter mu:
//                   0 for y*a >= 1, (1 - y*a)^2 / (2 mu) near the kink,
//                   1 - y*a - mu/2 for y*a <= 1 - mu
//   Logistic        l(a) = log(1 + exp(-y*a))
//
// All three satisfy l >= 0, l(0) <= 1 and are 1-Lipschitz.
class LossModel {
 public:
  static LossModel hinge();
  static LossModel smoothed_hinge(double mu);
  static LossModel logistic();

  LossKind kind() const { return kind_; }

  // Lipschitz constant L of the loss (1 for all shipped families).
  double lipschitz() const { return 1.0; }

  // Smoothness constant 1/mu of the loss; +inf for the plain hinge.
  double smoothness_inv_mu() const;

  // Strong-convexity constant mu of the conjugate (0 for the plain hinge,
  // mu for the smoothed hinge, 4 for logistic). This is the mu appearing in
  // the smooth-loss rate and inner-iteration bounds.
  double conjugate_mu() const;

  bool smooth() const { return kind_ != LossKind::Hinge; }

  // l(a) for label y. Throws std::domain_error for non-finite a.
  double value(double a, int y) const;

  // Conjugate l*(v) for label y; +inf outside the conjugate's domain.
  // In terms of beta := -y*v, the domain is beta in [0,1] and
  //   hinge:          -beta
  //   smoothed hinge: -beta + (mu/2) beta^2
  //   logistic:       beta log beta + (1-beta) log(1-beta)   (0 log 0 := 0)
  double conjugate(double v, int y) const;

  // One element of the subdifferential of l at a; the derivative for the
  // differentiable families, and 0 at the hinge kink y*a = 1.
  double subgradient(double a, int y) const;

  std::string name() const;

 private:
  LossModel(LossKind kind, double mu) : kind_(kind), mu_(mu) {}

  LossKind kind_;
  double mu_;  // smoothing parameter; meaningful for SmoothedHinge only
};

}  // namespace cocoa
