#include "cocoa/sgd.hpp"

#include <chrono>
#include <cmath>

#include "cocoa/errors.hpp"
#include "cocoa/rng.hpp"

namespace cocoa {

std::vector<double> subgradient_dual_point(const Problem& p, const std::vector<double>& w) {
  std::vector<double> u(p.n());
  for (int i = 0; i < p.n(); ++i) {
    u[i] = -p.loss.subgradient(dot_column(p.dataset, i, w), p.dataset.label(i));
  }
  return u;
}

void minibatch_sgd_step(const Problem& p, const Partition& part, const ResolvedConfig& cfg,
                        int t, std::vector<double>* w) {
  std::vector<double> grad(p.dim(), 0.0);
  const double sample_weight =
      1.0 / (static_cast<double>(cfg.H) * static_cast<double>(cfg.K));
  for (int k = 0; k < cfg.K; ++k) {
    const std::vector<int>& members = part.members(k);
    Rng rng(rng_key(cfg.seed, static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(k)));
    for (long h = 0; h < cfg.H; ++h) {
      const int i = members[rng.below(members.size())];
      const double slope =
          p.loss.subgradient(dot_column(p.dataset, i, *w), p.dataset.label(i));
      if (slope != 0.0) add_scaled_column(p.dataset, i, slope * sample_weight, &grad);
    }
  }
  const double eta = 1.0 / (p.lambda * static_cast<double>(t + 1));
  for (int j = 0; j < p.dim(); ++j) (*w)[j] -= eta * (grad[j] + p.lambda * (*w)[j]);
}

ConvergenceLog minibatch_sgd_run(const Problem& p, const Partition& part,
                                 const RunConfig& cfg) {
  const ResolvedConfig rc = cfg.resolve();
  if (part.K() != rc.K) throw ConfigError("partition K does not match config K");
  if (rc.H < 1) throw ConfigError("mini-batch SGD requires H >= 1");

  ConvergenceLog log;
  log.header.config = rc;
  log.header.n = p.n();
  log.header.d = p.dim();
  log.header.nnz = p.dataset.nnz();
  log.header.r_max = p.dataset.r_max();
  log.header.loss = p.loss.name();
  log.header.lambda = p.lambda;

  std::vector<double> w(p.dim(), 0.0);

  for (int t = 0; t < rc.T_max; ++t) {
    const auto start = std::chrono::steady_clock::now();
    minibatch_sgd_step(p, part, rc, t, &w);

    const int round = t + 1;
    bool finite = true;
    for (double x : w) finite = finite && std::isfinite(x);
    if (!finite) throw DivergedError("non-finite iterate", round);

    const bool evaluate = (round % rc.gap_every == 0) || round == rc.T_max;
    if (!evaluate) continue;

    const double primal = primal_value(p, w);
    const std::vector<double> u = subgradient_dual_point(p, w);
    const double dual = dual_value(p, u);
    const double gap = duality_gap(p, u);
    if (!std::isfinite(primal) || !std::isfinite(dual)) {
      throw DivergedError("non-finite objective value", round);
    }

    RoundRecord rec;
    rec.round = round;
    rec.comm_vectors = 2L * rc.K * round;
    rec.dual = dual;
    rec.primal = primal;
    rec.gap = gap < 0.0 ? 0.0 : gap;
    rec.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    log.records.push_back(rec);

    if (rec.gap <= rc.gap_tol) break;
  }
  return log;
}

}  // namespace cocoa
