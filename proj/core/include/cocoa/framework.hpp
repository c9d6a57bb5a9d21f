#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cocoa/local_solver.hpp"
#include "cocoa/objective.hpp"
#include "cocoa/partition.hpp"
#include "cocoa/subproblem.hpp"

namespace cocoa {

// Aggregation/solver presets:
//   CocoaPlusAdding   gamma = 1, default sigma' = K     (updates added)
//   CocoaAveraging    gamma = 1/K, default sigma' = 1   (updates averaged)
//   DisDcaP           independent DisDCA-p path, equivalent to adding with
//                     SDCA on balanced partitions; kept as a cross-check
//   MiniBatchSgd      distributed primal subgradient baseline
enum class Variant { CocoaPlusAdding, CocoaAveraging, DisDcaP, MiniBatchSgd };

Variant parse_variant(const std::string& name);
std::string variant_name(Variant v);

struct ResolvedConfig {
  int K = 1;
  double gamma = 1.0;
  double sigma_prime = 1.0;
  long H = 1;
  int T_max = 100;
  double gap_tol = 1e-6;
  int gap_every = 1;
  std::uint64_t seed = 0;
  Variant variant = Variant::CocoaPlusAdding;
  PartitionStrategy partition = PartitionStrategy::BalancedRandom;
  bool sigma_prime_below_safe = false;  // theory void; logged as a warning
};

// User-facing run configuration. gamma is forced by the variant (an explicit
// conflicting value is a config error); sigma_prime left empty resolves to
// the safe bound gamma*K. Values below gamma*K are allowed but flagged.
struct RunConfig {
  int K = 1;
  std::optional<double> gamma;
  std::optional<double> sigma_prime;
  long H = 1;
  int T_max = 100;
  double gap_tol = 1e-6;
  int gap_every = 1;
  std::uint64_t seed = 0;
  Variant variant = Variant::CocoaPlusAdding;
  PartitionStrategy partition = PartitionStrategy::BalancedRandom;

  ResolvedConfig resolve() const;
};

struct RoundRecord {
  int round = 0;           // 1-based
  long comm_vectors = 0;   // 2*K per round: K broadcasts of w, K returns of dw
  double dual = 0.0;
  double primal = 0.0;
  double gap = 0.0;        // clamped to >= 0 for reporting
  double wall_ms = 0.0;
};

struct LogHeader {
  ResolvedConfig config;
  int n = 0;
  int d = 0;
  std::size_t nnz = 0;
  double r_max = 0.0;
  std::string loss;
  double lambda = 0.0;
  std::optional<SpectralConstants> constants;
  std::vector<std::string> warnings;
};

struct ConvergenceLog {
  LogHeader header;
  std::vector<RoundRecord> records;

  // First round whose recorded gap is <= tol.
  std::optional<int> rounds_to(double tol) const;
};

// One synchronized round of the primal-dual framework: snapshot w, run the K
// local solvers on immutable inputs (in parallel when threads > 1), then
// apply alpha_[k] += gamma * dalpha_[k] and w += gamma * sum_k dw_k with the
// reduction in ascending k. Results are bit-identical for any thread count.
void framework_round(const Problem& p, const Partition& part, const ResolvedConfig& cfg,
                     int round, int threads, std::vector<double>* alpha,
                     std::vector<double>* w);

// Full run from alpha = 0, w = 0 until the duality-gap certificate reaches
// cfg.gap_tol or cfg.T_max rounds elapse. The gap is evaluated every
// cfg.gap_every rounds (and on the final round). Non-finite primal, dual or
// iterate values abort with DivergedError.
ConvergenceLog run(const Problem& p, const Partition& part, const RunConfig& cfg,
                   int threads = 1);

// Iteration bound for L-Lipschitz losses at target duality gap eps_gap:
//   T  >= T0 + max{ ceil(1/(gamma(1-theta))),
//                   4 L^2 sigma sigma' / (lambda n^2 eps_gap gamma (1-theta)) }
//   T0 >= t0 + ( 2/(gamma(1-theta)) * (8 L^2 sigma sigma'/(lambda n^2 eps_gap) - 1) )_+
//   t0 >= max(0, ceil( 1/(gamma(1-theta))
//                      * log(2 lambda n^2 D0 / (4 L^2 sigma sigma')) ))
// where D0 is the dual gap at alpha = 0 (at most 1 for normalized losses).
struct LipschitzRounds {
  double T = 0.0;
  double T0 = 0.0;
  double t0 = 0.0;
};

LipschitzRounds theoretical_rounds_lipschitz(double L, double sigma, double sigma_prime,
                                             double lambda, long n, double gamma,
                                             double theta, double eps_gap,
                                             double dual_gap_at_zero);

// Iteration bounds for (1/mu)-smooth losses: with
//   C = 1/(gamma(1-theta)) * (lambda mu n + sigma_max sigma') / (lambda mu n),
// T_dual = C log(1/eps) rounds reach dual suboptimality eps and
// T_gap = C log(C/eps) rounds reach duality gap eps.
struct SmoothRounds {
  double T_dual = 0.0;
  double T_gap = 0.0;
};

SmoothRounds theoretical_rounds_smooth(double mu, double lambda, long n, double sigma_max,
                                       double sigma_prime, double gamma, double theta,
                                       double eps);

}  // namespace cocoa
