#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cocoa/framework.hpp"

namespace cocoa {

// Process exit codes shared by the command implementations and the CLI.
enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitParse = 3,
  kExitIo = 4,
  kExitDiverged = 5,
  kExitCertificate = 6,
};

int exit_code_for(const std::exception& e);

struct SyntheticSpec {
  int n = 0;
  int d = 0;
  double sparsity = 1.0;
};

// Either a LIBSVM file or a synthetic generator spec.
struct DataSource {
  std::string path;
  std::optional<SyntheticSpec> synthetic;
  int dim_override = 0;
  bool normalize = false;
};

SparseDataset load_dataset(const DataSource& source, std::uint64_t seed);

// One sweep cell. Empty gamma defers to the variant preset, empty sigma_prime
// to the safe bound gamma*K, empty H to the smooth-loss budget formula at the
// spec's target theta.
struct SweepCell {
  Variant variant = Variant::CocoaPlusAdding;
  int K = 1;
  std::optional<double> gamma;
  std::optional<double> sigma_prime;
  std::optional<long> H;
};

// Parses "variant:K:gamma:sigma:H" where gamma may be "-" (preset), sigma may
// be "safe" and H may be "auto".
SweepCell parse_cell(const std::string& text);

struct ExperimentSpec {
  DataSource data;
  std::string loss_flag = "hinge";
  double lambda = 1e-3;
  std::vector<SweepCell> cells;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  double gap_tol = 1e-6;
  int T_max = 1000;
  int gap_every = 1;
  PartitionStrategy partition = PartitionStrategy::BalancedRandom;
  int threads = 1;
  bool allow_diverge = false;
  bool write_csv = false;
  bool with_constants = false;
  bool dump_config = false;
  double theta = 0.5;  // target local quality for H = auto
};

// Loss flag grammar: "hinge" | "smoothed-hinge" | "smoothed-hinge:<mu>" |
// "logistic". Bare smoothed-hinge uses mu = 1.
LossModel parse_loss_flag(const std::string& flag);

// Runs every sweep cell, one JSONL log per cell plus a summary CSV in
// spec.out_dir. All cells are validated (and the data source opened) before
// anything is written. A diverged cell aborts the sweep unless
// spec.allow_diverge is set, in which case it is recorded in the summary.
int cmd_train(const ExperimentSpec& spec, std::ostream& out, std::ostream& err);

// Prints the data-dependent constants of a partition as CSV: per-block
// sigma_k, sigma, the ratio n^2/(K sigma), the sampled sigma'_min lower bound
// and the safe bound gamma*K.
int cmd_constants(const DataSource& data, int K, PartitionStrategy strategy,
                  std::uint64_t seed, double gamma, int trials, std::ostream& out,
                  std::ostream& err);

// Evaluates the certificate for a dual vector read from a text file (one
// value per line): prints P(w(alpha)), D(alpha) and the gap; exit 0 iff the
// gap is within tol. Infeasible alpha reports gap=inf and the certificate
// exit code.
int cmd_certify(const DataSource& data, const std::string& loss_flag, double lambda,
                const std::string& alpha_path, double tol, std::ostream& out,
                std::ostream& err);

// Writes a synthetic dataset in LIBSVM text form.
int cmd_generate(int n, int d, double sparsity, std::uint64_t seed,
                 const std::string& out_path, std::ostream& err);

}  // namespace cocoa
