#include "cocoa/losses.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cocoa/errors.hpp"

namespace cocoa {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

void check_label(int y) {
  if (y != 1 && y != -1) throw ConfigError("label must be +1 or -1");
}

}  // namespace

LossModel LossModel::hinge() { return LossModel(LossKind::Hinge, 0.0); }

LossModel LossModel::smoothed_hinge(double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw ConfigError("smoothed hinge requires mu > 0");
  }
  return LossModel(LossKind::SmoothedHinge, mu);
}

LossModel LossModel::logistic() { return LossModel(LossKind::Logistic, 0.0); }

double LossModel::smoothness_inv_mu() const {
  switch (kind_) {
    case LossKind::Hinge:
      return kInf;
    case LossKind::SmoothedHinge:
      return 1.0 / mu_;
    case LossKind::Logistic:
      return 0.25;
  }
  return kInf;
}

double LossModel::conjugate_mu() const {
  switch (kind_) {
    case LossKind::Hinge:
      return 0.0;
    case LossKind::SmoothedHinge:
      return mu_;
    case LossKind::Logistic:
      return 4.0;
  }
  return 0.0;
}

double LossModel::value(double a, int y) const {
  check_label(y);
  if (!std::isfinite(a)) throw std::domain_error("loss argument must be finite");
  const double m = static_cast<double>(y) * a;
  switch (kind_) {
    case LossKind::Hinge:
      return m >= 1.0 ? 0.0 : 1.0 - m;
    case LossKind::SmoothedHinge: {
      if (m >= 1.0) return 0.0;
      if (m <= 1.0 - mu_) return 1.0 - m - 0.5 * mu_;
      const double t = 1.0 - m;
      return t * t / (2.0 * mu_);
    }
    case LossKind::Logistic:
      // log1p(exp(-m)) overflows for very negative m; use the stable split.
      return m >= 0.0 ? std::log1p(std::exp(-m)) : -m + std::log1p(std::exp(m));
  }
  return 0.0;
}

double LossModel::conjugate(double v, int y) const {
  check_label(y);
  double beta = -static_cast<double>(y) * v;
  // Update aggregation re-rounds dual values sitting exactly on the box
  // boundary; a tiny slack keeps such points in-domain.
  constexpr double kDomainSlack = 1e-12;
  if (beta < -kDomainSlack || beta > 1.0 + kDomainSlack) return kInf;
  beta = beta < 0.0 ? 0.0 : (beta > 1.0 ? 1.0 : beta);
  switch (kind_) {
    case LossKind::Hinge:
      return -beta;
    case LossKind::SmoothedHinge:
      return -beta + 0.5 * mu_ * beta * beta;
    case LossKind::Logistic:
      return xlogx(beta) + xlogx(1.0 - beta);
  }
  return kInf;
}

double LossModel::subgradient(double a, int y) const {
  check_label(y);
  const double yd = static_cast<double>(y);
  const double m = yd * a;
  switch (kind_) {
    case LossKind::Hinge:
      // 0 at the kink m == 1 (minimal-norm element, keeps diagnostics
      // deterministic).
      return m >= 1.0 ? 0.0 : -yd;
    case LossKind::SmoothedHinge: {
      if (m >= 1.0) return 0.0;
      if (m <= 1.0 - mu_) return -yd;
      return -yd * (1.0 - m) / mu_;
    }
    case LossKind::Logistic: {
      // -y * sigmoid(-m), computed without overflow.
      const double s = m >= 0.0 ? std::exp(-m) / (1.0 + std::exp(-m))
                                : 1.0 / (1.0 + std::exp(m));
      return -yd * s;
    }
  }
  return 0.0;
}

std::string LossModel::name() const {
  switch (kind_) {
    case LossKind::Hinge:
      return "hinge";
    case LossKind::SmoothedHinge:
      return "smoothed-hinge:" + std::to_string(mu_);
    case LossKind::Logistic:
      return "logistic";
  }
  return "?";
}

}  // namespace cocoa
