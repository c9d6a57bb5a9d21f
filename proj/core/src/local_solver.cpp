#include "cocoa/local_solver.hpp"

#include <cmath>
#include <utility>

#include "cocoa/errors.hpp"
#include "cocoa/rng.hpp"

namespace cocoa {

namespace {

double clip01(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

// Root of  F'(beta) = log((1-beta)/beta) - g*y - q*(beta - beta0)  on (0,1),
// the stationarity condition of the logistic coordinate problem. F' is
// strictly decreasing, so we keep a sign-change bracket and fall back to
// bisection whenever the Newton step leaves it.
double logistic_beta_root(double gy, double q, double beta0) {
  constexpr double kEdge = 1e-12;
  double lo = kEdge, hi = 1.0 - kEdge;

  auto fprime = [&](double b) { return std::log((1.0 - b) / b) - gy - q * (b - beta0); };

  if (fprime(lo) <= 0.0) return lo;
  if (fprime(hi) >= 0.0) return hi;

  double beta = clip01(beta0) * 0.5 + 0.25;  // interior start
  for (int iter = 0; iter < 50; ++iter) {
    const double f = fprime(beta);
    if (f > 0.0) {
      lo = beta;
    } else {
      hi = beta;
    }
    const double fpp = -1.0 / (beta * (1.0 - beta)) - q;
    double next = beta - f / fpp;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - beta) <= 1e-12) return next;
    beta = next;
  }
  return beta;
}

}  // namespace

double coordinate_delta(const LossModel& loss, const std::vector<FeatureEntry>& xi,
                        double xi_norm_sq, int yi, double alpha_i,
                        const std::vector<double>& u_local, double sigma_prime,
                        double lambda, int n) {
  if (xi_norm_sq <= 0.0) return 0.0;

  const double y = static_cast<double>(yi);
  const double q = sigma_prime * xi_norm_sq / (lambda * static_cast<double>(n));
  double g = 0.0;
  for (const FeatureEntry& e : xi) g += e.value * u_local[e.index];

  const double beta0 = alpha_i * y;
  double beta = beta0;
  switch (loss.kind()) {
    case LossKind::Hinge:
      beta = clip01(beta0 + (1.0 - y * g) / q);
      break;
    case LossKind::SmoothedHinge: {
      // Stationarity of beta - (mu/2) beta^2 - y g (beta - beta0)
      //                    - (q/2)(beta - beta0)^2.
      const double mu = loss.conjugate_mu();
      beta = clip01((q * beta0 + 1.0 - y * g) / (q + mu));
      break;
    }
    case LossKind::Logistic:
      beta = logistic_beta_root(g * y, q, beta0);
      break;
  }
  return y * (beta - beta0);
}

LocalUpdate local_sdca(const Problem& p, const Partition& part,
                       const SubproblemContext& ctx, long H, std::uint64_t rng_seed) {
  if (H < 0) throw ConfigError("local solver step count must be >= 0");
  const std::vector<int>& members = part.members(ctx.k);
  const int n = p.n();
  const double w_scale = 1.0 / (p.lambda * static_cast<double>(n));
  const double u_scale = ctx.sigma_prime / (p.lambda * static_cast<double>(n));

  LocalUpdate out;
  out.delta_alpha.assign(n, 0.0);
  out.delta_w.assign(p.dim(), 0.0);
  out.steps = H;

  std::vector<double> u = ctx.w_snapshot;  // running local primal image
  Rng rng(rng_seed);
  const std::uint64_t block_size = static_cast<std::uint64_t>(members.size());

  for (long h = 0; h < H; ++h) {
    const int i = members[rng.below(block_size)];
    const double delta = coordinate_delta(
        p.loss, p.dataset.column(i), p.dataset.column_norm_sq(i), p.dataset.label(i),
        ctx.alpha_block[i] + out.delta_alpha[i], u, ctx.sigma_prime, p.lambda, n);
    if (delta == 0.0) continue;
    out.delta_alpha[i] += delta;
    add_scaled_column(p.dataset, i, u_scale * delta, &u);
    add_scaled_column(p.dataset, i, w_scale * delta, &out.delta_w);
  }
  return out;
}

long required_H_smooth(long n_k, double sigma_prime, double r_max, double lambda,
                       long n, double mu, double theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw ConfigError("theta must lie in (0, 1)");
  if (n_k < 1 || n < 1 || !(sigma_prime > 0.0) || !(r_max > 0.0) || !(lambda > 0.0) ||
      !(mu > 0.0)) {
    throw ConfigError("required_H_smooth inputs must be positive");
  }
  const double lnm = lambda * static_cast<double>(n) * mu;
  const double bound = static_cast<double>(n_k) * (sigma_prime * r_max + lnm) / lnm *
                       std::log(1.0 / theta);
  return static_cast<long>(std::ceil(bound));
}

long required_H_lipschitz(long n_k, double sigma_prime, double r_max, double lambda,
                          long n, double theta, double delta_star_norm_sq,
                          double subproblem_gap) {
  if (!(theta > 0.0 && theta < 1.0)) throw ConfigError("theta must lie in (0, 1)");
  if (!(subproblem_gap > 0.0)) throw ConfigError("subproblem gap must be positive");
  if (n_k < 1 || n < 1 || !(sigma_prime > 0.0) || !(r_max > 0.0) || !(lambda > 0.0) ||
      delta_star_norm_sq < 0.0) {
    throw ConfigError("required_H_lipschitz inputs must be positive");
  }
  const double nn = static_cast<double>(n);
  const double bound =
      static_cast<double>(n_k) *
      ((1.0 - theta) / theta +
       sigma_prime * r_max / (2.0 * theta * lambda * nn * nn) * delta_star_norm_sq /
           subproblem_gap);
  return static_cast<long>(std::ceil(bound));
}

double measure_theta(const Problem& p, const Partition& part, const SubproblemContext& ctx,
                     const LocalUpdate& update, double reference_opt_value) {
  const double at_update = subproblem_value(p, part, ctx, update.delta_alpha);
  if (reference_opt_value < at_update - 1e-9) {
    throw ConfigError("reference value is worse than the update being measured");
  }
  const std::vector<double> zero(p.n(), 0.0);
  const double at_zero = subproblem_value(p, part, ctx, zero);
  const double denom = reference_opt_value - at_zero;
  if (denom <= 1e-15) return 0.0;  // subproblem already optimal at 0
  return clip01((reference_opt_value - at_update) / denom);
}

}  // namespace cocoa
