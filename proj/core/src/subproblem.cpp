#include "cocoa/subproblem.hpp"

#include <cmath>
#include <limits>

#include "cocoa/errors.hpp"
#include "cocoa/rng.hpp"

namespace cocoa {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_block_support(const Partition& part, int k, const std::vector<double>& v,
                         const char* what) {
  if (static_cast<int>(v.size()) != part.n()) {
    throw DimensionError(std::string(what) + " length does not match n");
  }
  for (int i = 0; i < part.n(); ++i) {
    if (v[i] != 0.0 && part.owner(i) != k) {
      throw DimensionError(std::string(what) + " has support outside block " +
                           std::to_string(k));
    }
  }
}

double squared_norm(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return acc;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) acc += a[j] * b[j];
  return acc;
}

// y = A_k' (A_k v) for a compact block vector v indexed like `members`.
// Returns ||A_k v||^2 via the intermediate dense image.
double gram_apply(const SparseDataset& ds, const std::vector<int>& members,
                  const std::vector<double>& v, std::vector<double>* dense_scratch,
                  std::vector<double>* out) {
  std::vector<double>& z = *dense_scratch;
  std::fill(z.begin(), z.end(), 0.0);
  for (std::size_t t = 0; t < members.size(); ++t) {
    if (v[t] != 0.0) add_scaled_column(ds, members[t], v[t], &z);
  }
  double image_norm_sq = 0.0;
  for (double x : z) image_norm_sq += x * x;
  for (std::size_t t = 0; t < members.size(); ++t) {
    (*out)[t] = dot_column(ds, members[t], z);
  }
  return image_norm_sq;
}

double power_iteration(const SparseDataset& ds, const std::vector<int>& members,
                       std::vector<double> v, double tol) {
  const std::size_t m = members.size();
  std::vector<double> dense(ds.dim(), 0.0);
  std::vector<double> y(m, 0.0);

  double norm = std::sqrt(squared_norm(v));
  if (norm == 0.0) return 0.0;
  for (double& x : v) x /= norm;

  double estimate = 0.0;
  for (int iter = 0; iter < 10000; ++iter) {
    // With ||v|| = 1, ||A_k v||^2 is the Rayleigh quotient of the Gram matrix.
    const double next = gram_apply(ds, members, v, &dense, &y);
    const double y_norm = std::sqrt(squared_norm(y));
    if (y_norm == 0.0) return 0.0;  // v in the null space; block may be rank 0
    const bool converged = std::fabs(next - estimate) <= tol * std::max(next, 1e-300);
    estimate = next;
    if (converged && iter > 0) break;
    for (std::size_t t = 0; t < m; ++t) v[t] = y[t] / y_norm;
  }
  return estimate;
}

}  // namespace

double subproblem_value(const Problem& p, const Partition& part,
                        const SubproblemContext& ctx, const std::vector<double>& delta_block) {
  check_block_support(part, ctx.k, delta_block, "delta_block");
  check_block_support(part, ctx.k, ctx.alpha_block, "alpha_block");
  if (static_cast<int>(ctx.w_snapshot.size()) != p.dim()) {
    throw DimensionError("w_snapshot length does not match feature dimension");
  }

  const double n = static_cast<double>(p.n());
  double conj_sum = 0.0;
  std::vector<double> a_delta(p.dim(), 0.0);
  for (int i : part.members(ctx.k)) {
    const double c = p.loss.conjugate(-(ctx.alpha_block[i] + delta_block[i]),
                                      p.dataset.label(i));
    if (c == kInf) return -kInf;
    conj_sum += c;
    if (delta_block[i] != 0.0) add_scaled_column(p.dataset, i, delta_block[i], &a_delta);
  }

  return -conj_sum / n -
         (0.5 * p.lambda / static_cast<double>(part.K())) * squared_norm(ctx.w_snapshot) -
         dot(ctx.w_snapshot, a_delta) / n -
         ctx.sigma_prime * squared_norm(a_delta) / (2.0 * p.lambda * n * n);
}

double block_sigma(const SparseDataset& ds, const Partition& part, int k, double tol) {
  if (!(tol > 0.0)) throw ConfigError("power iteration tolerance must be positive");
  const std::vector<int>& members = part.members(k);
  if (members.empty()) return 0.0;

  std::vector<double> ones(members.size(), 1.0);
  double best = power_iteration(ds, members, ones, tol);

  // One fixed-seed random restart guards against a start vector orthogonal to
  // the top eigenvector.
  Rng rng(rng_key(0xb10c5, 0, static_cast<std::uint64_t>(k)));
  std::vector<double> random_start(members.size());
  for (double& x : random_start) x = rng.normal();
  best = std::max(best, power_iteration(ds, members, std::move(random_start), tol));
  return best;
}

SpectralConstants spectral_constants(const SparseDataset& ds, const Partition& part,
                                     double tol) {
  SpectralConstants out;
  out.sigma_k.resize(part.K());
  out.sigma = 0.0;
  for (int k = 0; k < part.K(); ++k) {
    out.sigma_k[k] = block_sigma(ds, part, k, tol);
    out.sigma += out.sigma_k[k] * static_cast<double>(part.block_size(k));
  }
  const double n = static_cast<double>(part.n());
  out.ratio = out.sigma > 0.0 ? n * n / (static_cast<double>(part.K()) * out.sigma) : kInf;
  return out;
}

namespace {

// ||A alpha||^2 / sum_k ||A alpha_[k]||^2 with the numerator assembled from
// the same per-block images as the denominator, so K = 1 gives exactly 1.
double separability_ratio(const SparseDataset& ds, const Partition& part,
                          const std::vector<double>& alpha,
                          std::vector<std::vector<double>>* block_images) {
  const int d = ds.dim();
  block_images->assign(part.K(), std::vector<double>(d, 0.0));
  for (int i = 0; i < ds.n(); ++i) {
    if (alpha[i] != 0.0) {
      add_scaled_column(ds, i, alpha[i], &(*block_images)[part.owner(i)]);
    }
  }
  double denom = 0.0;
  std::vector<double> full(d, 0.0);
  for (int k = 0; k < part.K(); ++k) {
    denom += squared_norm((*block_images)[k]);
    for (int j = 0; j < d; ++j) full[j] += (*block_images)[k][j];
  }
  if (denom == 0.0) return 0.0;
  return squared_norm(full) / denom;
}

}  // namespace

double sigma_prime_lower_bound(const SparseDataset& ds, const Partition& part,
                               double gamma, int trials, std::uint64_t seed) {
  if (trials < 1) throw ConfigError("sigma' estimation requires trials >= 1");
  const int n = ds.n();
  std::vector<std::vector<double>> images;
  double best = 0.0;

  for (int trial = 0; trial < trials; ++trial) {
    Rng rng(rng_key(seed, static_cast<std::uint64_t>(trial), 0x51e7));
    std::vector<double> alpha(n);
    for (double& a : alpha) a = rng.normal();
    double ratio = separability_ratio(ds, part, alpha, &images);

    // Gradient ascent on the ratio with backtracking; the gradient of N/D is
    // (2/D) (A'A alpha - ratio * blockdiag(A_k'A_k) alpha).
    for (int step = 0; step < 60; ++step) {
      std::vector<double> full(ds.dim(), 0.0);
      for (int k = 0; k < part.K(); ++k) {
        for (int j = 0; j < ds.dim(); ++j) full[j] += images[k][j];
      }
      std::vector<double> grad(n);
      double grad_norm_sq = 0.0;
      for (int i = 0; i < n; ++i) {
        const double gi = dot_column(ds, i, full) -
                          ratio * dot_column(ds, i, images[part.owner(i)]);
        grad[i] = gi;
        grad_norm_sq += gi * gi;
      }
      if (grad_norm_sq <= 1e-24) break;

      double alpha_norm = std::sqrt(squared_norm(alpha));
      double eta = alpha_norm / std::sqrt(grad_norm_sq);
      bool improved = false;
      for (int bt = 0; bt < 12; ++bt) {
        std::vector<double> candidate(n);
        for (int i = 0; i < n; ++i) candidate[i] = alpha[i] + eta * grad[i];
        const double cand_ratio = separability_ratio(ds, part, candidate, &images);
        if (cand_ratio > ratio + 1e-13) {
          alpha = std::move(candidate);
          ratio = cand_ratio;
          improved = true;
          break;
        }
        eta *= 0.5;
      }
      if (!improved) {
        // Restore images for alpha (the last evaluation was for a rejected
        // candidate).
        separability_ratio(ds, part, alpha, &images);
        break;
      }
    }
    best = std::max(best, ratio);
  }
  return gamma * best;
}

double safe_sigma_prime(double gamma, int K) {
  if (!(gamma > 0.0) || gamma > 1.0) throw ConfigError("gamma must lie in (0, 1]");
  if (K < 1) throw ConfigError("K must be >= 1");
  return gamma * static_cast<double>(K);
}

}  // namespace cocoa
