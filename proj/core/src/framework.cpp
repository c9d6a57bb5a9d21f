#include "cocoa/framework.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

#include "cocoa/disdca.hpp"
#include "cocoa/errors.hpp"
#include "cocoa/rng.hpp"
#include "cocoa/sgd.hpp"

namespace cocoa {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool finite_vector(const std::vector<double>& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

}  // namespace

Variant parse_variant(const std::string& name) {
  if (name == "cocoa+" || name == "adding") return Variant::CocoaPlusAdding;
  if (name == "cocoa" || name == "averaging") return Variant::CocoaAveraging;
  if (name == "disdca-p") return Variant::DisDcaP;
  if (name == "minibatch-sgd") return Variant::MiniBatchSgd;
  throw ConfigError("unknown variant '" + name +
                    "' (expected adding, averaging, disdca-p or minibatch-sgd)");
}

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::CocoaPlusAdding:
      return "adding";
    case Variant::CocoaAveraging:
      return "averaging";
    case Variant::DisDcaP:
      return "disdca-p";
    case Variant::MiniBatchSgd:
      return "minibatch-sgd";
  }
  return "?";
}

ResolvedConfig RunConfig::resolve() const {
  if (K < 1) throw ConfigError("K must be >= 1");
  if (H < 0) throw ConfigError("H must be >= 0");
  if (T_max < 1) throw ConfigError("T_max must be >= 1");
  if (!(gap_tol >= 0.0)) throw ConfigError("gap tolerance must be >= 0");
  if (gap_every < 1) throw ConfigError("gap-every must be >= 1");

  ResolvedConfig r;
  r.K = K;
  r.H = H;
  r.T_max = T_max;
  r.gap_tol = gap_tol;
  r.gap_every = gap_every;
  r.seed = seed;
  r.variant = variant;
  r.partition = partition;

  // The variant pins gamma; averaging divides updates by K, everything else
  // adds them.
  const double forced_gamma =
      variant == Variant::CocoaAveraging ? 1.0 / static_cast<double>(K) : 1.0;
  if (gamma.has_value() && std::fabs(*gamma - forced_gamma) > 1e-12) {
    throw ConfigError("variant " + variant_name(variant) + " requires gamma = " +
                      std::to_string(forced_gamma));
  }
  r.gamma = forced_gamma;

  if (sigma_prime.has_value()) {
    if (!(*sigma_prime > 0.0) || !std::isfinite(*sigma_prime)) {
      throw ConfigError("sigma' must be positive and finite");
    }
    r.sigma_prime = *sigma_prime;
  } else {
    r.sigma_prime = safe_sigma_prime(r.gamma, r.K);
  }
  r.sigma_prime_below_safe = r.sigma_prime < safe_sigma_prime(r.gamma, r.K) - 1e-12;

  if (variant == Variant::DisDcaP &&
      std::fabs(r.sigma_prime - static_cast<double>(K)) > 1e-12) {
    throw ConfigError("disdca-p is defined for sigma' = K");
  }
  return r;
}

void framework_round(const Problem& p, const Partition& part, const ResolvedConfig& cfg,
                     int round, int threads, std::vector<double>* alpha,
                     std::vector<double>* w) {
  const int K = cfg.K;
  std::vector<LocalUpdate> results(K);

  auto solve_block = [&](int k) {
    SubproblemContext ctx;
    ctx.k = k;
    ctx.w_snapshot = *w;
    ctx.alpha_block.assign(p.n(), 0.0);
    for (int i : part.members(k)) ctx.alpha_block[i] = (*alpha)[i];
    ctx.sigma_prime = cfg.sigma_prime;
    ctx.gamma = cfg.gamma;
    results[k] = local_sdca(p, part, ctx, cfg.H,
                            rng_key(cfg.seed, static_cast<std::uint64_t>(round),
                                    static_cast<std::uint64_t>(k)));
  };

  if (threads <= 1 || K == 1) {
    for (int k = 0; k < K; ++k) solve_block(k);
  } else {
    const int workers = std::min(threads, K);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) {
      pool.emplace_back([&, t]() {
        for (int k = t; k < K; k += workers) solve_block(k);
      });
    }
    for (std::thread& th : pool) th.join();
  }

  // Reduce in ascending k regardless of which thread produced what.
  std::vector<double> sum_dw(p.dim(), 0.0);
  for (int k = 0; k < K; ++k) {
    for (int i : part.members(k)) {
      const double d = results[k].delta_alpha[i];
      if (d != 0.0) (*alpha)[i] += cfg.gamma * d;
    }
    for (int j = 0; j < p.dim(); ++j) sum_dw[j] += results[k].delta_w[j];
  }
  for (int j = 0; j < p.dim(); ++j) (*w)[j] += cfg.gamma * sum_dw[j];
}

ConvergenceLog run(const Problem& p, const Partition& part, const RunConfig& cfg,
                   int threads) {
  const ResolvedConfig rc = cfg.resolve();
  if (part.K() != rc.K) throw ConfigError("partition K does not match config K");
  if (part.n() != p.n()) throw ConfigError("partition size does not match dataset");

  if (rc.variant == Variant::MiniBatchSgd) return minibatch_sgd_run(p, part, cfg);

  ConvergenceLog log;
  log.header.config = rc;
  log.header.n = p.n();
  log.header.d = p.dim();
  log.header.nnz = p.dataset.nnz();
  log.header.r_max = p.dataset.r_max();
  log.header.loss = p.loss.name();
  log.header.lambda = p.lambda;
  if (rc.sigma_prime_below_safe) {
    log.header.warnings.push_back(
        "sigma' = " + std::to_string(rc.sigma_prime) + " is below the safe bound gamma*K = " +
        std::to_string(safe_sigma_prime(rc.gamma, rc.K)) +
        "; convergence guarantees do not apply and the run may diverge");
  }

  std::vector<double> alpha(p.n(), 0.0);
  std::vector<double> w(p.dim(), 0.0);
  DisDcaState disdca_state;
  if (rc.variant == Variant::DisDcaP) disdca_state = disdca_init(p);

  for (int t = 0; t < rc.T_max; ++t) {
    const auto start = std::chrono::steady_clock::now();
    if (rc.variant == Variant::DisDcaP) {
      disdca_p_round(p, part, &disdca_state, rc.H, rc.seed);
      alpha = disdca_state.alpha;
      w = disdca_state.w;
    } else {
      framework_round(p, part, rc, t, threads, &alpha, &w);
    }

    const int round = t + 1;
    if (!finite_vector(w)) throw DivergedError("non-finite iterate", round);

    const bool evaluate = (round % rc.gap_every == 0) || round == rc.T_max;
    if (!evaluate) continue;

    const double primal = primal_value(p, w);
    const double dual = dual_value(p, alpha);
    if (!std::isfinite(primal) || !std::isfinite(dual)) {
      throw DivergedError("non-finite objective value", round);
    }
    const double gap = primal - dual;
    const double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();

    RoundRecord rec;
    rec.round = round;
    rec.comm_vectors = 2L * rc.K * round;
    rec.dual = dual;
    rec.primal = primal;
    rec.gap = gap < 0.0 ? 0.0 : gap;
    rec.wall_ms = wall_ms;
    log.records.push_back(rec);

    if (rec.gap <= rc.gap_tol) break;
  }
  return log;
}

std::optional<int> ConvergenceLog::rounds_to(double tol) const {
  for (const RoundRecord& rec : records) {
    if (rec.gap <= tol) return rec.round;
  }
  return std::nullopt;
}

LipschitzRounds theoretical_rounds_lipschitz(double L, double sigma, double sigma_prime,
                                             double lambda, long n, double gamma,
                                             double theta, double eps_gap,
                                             double dual_gap_at_zero) {
  if (!(eps_gap > 0.0)) throw ConfigError("target gap must be positive");
  if (!(theta >= 0.0 && theta < 1.0)) throw ConfigError("theta must lie in [0, 1)");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw ConfigError("gamma must lie in (0, 1]");
  if (!(L > 0.0) || !(sigma > 0.0) || !(sigma_prime > 0.0) || !(lambda > 0.0) || n < 1 ||
      !(dual_gap_at_zero > 0.0)) {
    throw ConfigError("rate inputs must be positive");
  }

  const double nn = static_cast<double>(n);
  const double rate = gamma * (1.0 - theta);
  const double quad = 4.0 * L * L * sigma * sigma_prime / (lambda * nn * nn);

  LipschitzRounds out;
  out.t0 = std::max(0.0, std::ceil(std::log(2.0 * lambda * nn * nn * dual_gap_at_zero /
                                            (4.0 * L * L * sigma * sigma_prime)) /
                                   rate));
  const double burn_in = 2.0 / rate * (2.0 * quad / eps_gap - 1.0);
  out.T0 = out.t0 + std::max(0.0, burn_in);
  out.T = out.T0 + std::max(std::ceil(1.0 / rate), quad / (eps_gap * rate));
  return out;
}

SmoothRounds theoretical_rounds_smooth(double mu, double lambda, long n, double sigma_max,
                                       double sigma_prime, double gamma, double theta,
                                       double eps) {
  if (!(eps > 0.0)) throw ConfigError("target accuracy must be positive");
  if (!(theta >= 0.0 && theta < 1.0)) throw ConfigError("theta must lie in [0, 1)");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw ConfigError("gamma must lie in (0, 1]");
  if (!(mu > 0.0) || !(lambda > 0.0) || n < 1 || !(sigma_max > 0.0) ||
      !(sigma_prime > 0.0)) {
    throw ConfigError("rate inputs must be positive");
  }

  const double lmn = lambda * mu * static_cast<double>(n);
  const double condition = (lmn + sigma_max * sigma_prime) / lmn;
  const double scale = condition / (gamma * (1.0 - theta));

  SmoothRounds out;
  out.T_dual = scale * std::log(1.0 / eps);
  out.T_gap = scale * std::log(scale / eps);
  return out;
}

}  // namespace cocoa
