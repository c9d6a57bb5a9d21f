#include "cocoa/disdca.hpp"

#include <cmath>

#include "cocoa/errors.hpp"
#include "cocoa/rng.hpp"

namespace cocoa {

namespace {

double clip01(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

// Single dual coordinate step of DisDCA-p with scaling parameter scl = K:
//   max_delta  -l*(-(a + delta)) - delta * x' u - (K ||x||^2 / (2 lambda n)) delta^2
// solved in the beta = a*y parameterization.
double disdca_step(const LossModel& loss, const std::vector<FeatureEntry>& xi,
                   double xi_norm_sq, int yi, double a,
                   const std::vector<double>& u, double scl, double lambda, int n) {
  if (xi_norm_sq <= 0.0) return 0.0;
  const double y = static_cast<double>(yi);
  const double q = scl * xi_norm_sq / (lambda * static_cast<double>(n));
  double g = 0.0;
  for (const FeatureEntry& e : xi) g += e.value * u[e.index];

  const double beta0 = a * y;
  double beta = beta0;
  switch (loss.kind()) {
    case LossKind::Hinge:
      beta = clip01(beta0 + (1.0 - y * g) / q);
      break;
    case LossKind::SmoothedHinge: {
      const double mu = loss.conjugate_mu();
      beta = clip01((q * beta0 + 1.0 - y * g) / (q + mu));
      break;
    }
    case LossKind::Logistic: {
      const double gy = g * y;
      constexpr double kEdge = 1e-12;
      double lo = kEdge, hi = 1.0 - kEdge;
      auto fprime = [&](double b) {
        return std::log((1.0 - b) / b) - gy - q * (b - beta0);
      };
      if (fprime(lo) <= 0.0) {
        beta = lo;
        break;
      }
      if (fprime(hi) >= 0.0) {
        beta = hi;
        break;
      }
      double b = clip01(beta0) * 0.5 + 0.25;
      for (int iter = 0; iter < 50; ++iter) {
        const double f = fprime(b);
        if (f > 0.0) {
          lo = b;
        } else {
          hi = b;
        }
        const double fpp = -1.0 / (b * (1.0 - b)) - q;
        double next = b - f / fpp;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::fabs(next - b) <= 1e-12) {
          b = next;
          break;
        }
        b = next;
      }
      beta = b;
      break;
    }
  }
  return y * (beta - beta0);
}

}  // namespace

DisDcaState disdca_init(const Problem& p) {
  DisDcaState s;
  s.alpha.assign(p.n(), 0.0);
  s.w.assign(p.dim(), 0.0);
  s.round = 0;
  return s;
}

void disdca_p_round(const Problem& p, const Partition& part, DisDcaState* state, long H,
                    std::uint64_t seed) {
  if (!part.balanced()) {
    throw ConfigError("DisDCA-p requires a balanced partition (all n_k equal)");
  }
  const int n = p.n();
  const int K = part.K();
  const double scl = static_cast<double>(K);
  const int n_k = part.block_size(0);
  const double u_step = 1.0 / (p.lambda * static_cast<double>(n_k));

  std::vector<std::vector<double>> dalpha(K, std::vector<double>(n, 0.0));
  std::vector<std::vector<double>> du(K);

  for (int k = 0; k < K; ++k) {
    const std::vector<int>& members = part.members(k);
    std::vector<double> u = state->w;  // local primal image
    du[k].assign(p.dim(), 0.0);
    Rng rng(rng_key(seed, static_cast<std::uint64_t>(state->round),
                    static_cast<std::uint64_t>(k)));
    for (long h = 0; h < H; ++h) {
      const int i = members[rng.below(members.size())];
      const double delta = disdca_step(p.loss, p.dataset.column(i),
                                       p.dataset.column_norm_sq(i), p.dataset.label(i),
                                       state->alpha[i] + dalpha[k][i], u, scl, p.lambda, n);
      if (delta == 0.0) continue;
      dalpha[k][i] += delta;
      add_scaled_column(p.dataset, i, u_step * delta, &u);
      add_scaled_column(p.dataset, i, u_step * delta, &du[k]);
    }
  }

  // Apply blocks in ascending k; the shared vector moves by the 1/K-scaled
  // local images (n_k/n = 1/K on balanced partitions).
  const double dw_scale = static_cast<double>(n_k) / static_cast<double>(n);
  std::vector<double> sum_dw(p.dim(), 0.0);
  for (int k = 0; k < K; ++k) {
    for (int i : part.members(k)) {
      if (dalpha[k][i] != 0.0) state->alpha[i] += dalpha[k][i];
    }
    for (int j = 0; j < p.dim(); ++j) sum_dw[j] += du[k][j] * dw_scale;
  }
  for (int j = 0; j < p.dim(); ++j) state->w[j] += sum_dw[j];
  ++state->round;
}

}  // namespace cocoa
