// Command-line front end: dataset generation, experiment sweeps, constants
// reporting and certificate checking. All heavy lifting lives in the core
// library; this file only maps flags onto it.
//
// Exit codes: 0 ok, 2 config, 3 parse, 4 I/O, 5 diverged, 6 certificate
// failed.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cocoa/experiments.hpp"

namespace {

struct DataFlags {
  std::string file;
  int synthetic_n = 0;
  int synthetic_d = 0;
  double sparsity = 1.0;
  int dim_override = 0;
  bool normalize = false;
};

void add_data_flags(CLI::App* cmd, DataFlags* flags) {
  cmd->add_option("--data", flags->file, "LIBSVM text file");
  cmd->add_option("--synthetic-n", flags->synthetic_n,
                  "generate a synthetic dataset with this many datapoints");
  cmd->add_option("--synthetic-d", flags->synthetic_d, "synthetic feature dimension");
  cmd->add_option("--sparsity", flags->sparsity,
                  "synthetic per-feature presence probability, in (0,1]");
  cmd->add_option("--dim", flags->dim_override,
                  "widen the feature dimension beyond the largest index seen");
  cmd->add_flag("--normalize", flags->normalize, "scale every datapoint to unit norm");
}

cocoa::DataSource to_source(const DataFlags& flags) {
  cocoa::DataSource src;
  src.path = flags.file;
  if (flags.synthetic_n > 0 || flags.synthetic_d > 0) {
    src.synthetic = cocoa::SyntheticSpec{flags.synthetic_n, flags.synthetic_d,
                                         flags.sparsity};
  }
  src.dim_override = flags.dim_override;
  src.normalize = flags.normalize;
  return src;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"communication-efficient distributed primal-dual training"};
  app.require_subcommand(1);

  // --- train ---------------------------------------------------------------
  auto* train = app.add_subcommand("train", "run one or more training sweep cells");
  DataFlags train_data;
  add_data_flags(train, &train_data);
  cocoa::ExperimentSpec spec;
  std::vector<std::string> cell_flags;
  std::string variant_flag = "adding";
  std::string partition_flag = "balanced-random";
  std::string gamma_flag = "-";
  std::string sigma_flag = "safe";
  std::string h_flag = "1000";
  int single_K = 1;
  train->add_option("--loss", spec.loss_flag, "hinge | smoothed-hinge[:<mu>] | logistic");
  train->add_option("--lambda", spec.lambda, "regularization parameter");
  train->add_option("--cell", cell_flags,
                    "sweep cell variant:K:gamma:sigma:H (gamma '-' = preset, sigma "
                    "'safe' = gamma*K, H 'auto' = smooth-loss budget); repeatable");
  train->add_option("--variant", variant_flag,
                    "adding | averaging | disdca-p | minibatch-sgd (single-cell form)");
  train->add_option("--K", single_K, "worker count (single-cell form)");
  train->add_option("--gamma", gamma_flag, "aggregation parameter (single-cell form)");
  train->add_option("--sigma-prime", sigma_flag, "subproblem parameter (single-cell form)");
  train->add_option("--H", h_flag, "local steps per round, or 'auto' (single-cell form)");
  train->add_option("--theta", spec.theta, "target local quality for H=auto");
  train->add_option("--seed", spec.seed, "master seed; all randomness flows from it");
  train->add_option("--out", spec.out_dir, "output directory");
  train->add_option("--gap-tol", spec.gap_tol, "stop when the duality gap reaches this");
  train->add_option("--max-rounds", spec.T_max, "round cap");
  train->add_option("--gap-every", spec.gap_every, "evaluate the certificate every Nth round");
  train->add_option("--partition", partition_flag, "balanced-random | contiguous");
  train->add_option("--threads", spec.threads, "worker threads (never changes results)");
  train->add_flag("--allow-diverge", spec.allow_diverge,
                  "record diverged cells in the summary instead of aborting");
  train->add_flag("--csv", spec.write_csv, "also write per-cell CSV logs");
  train->add_flag("--constants", spec.with_constants,
                  "compute spectral constants into each log header");
  train->add_flag("--dump-config", spec.dump_config,
                  "echo each resolved run config as JSON to stdout");

  // --- constants -----------------------------------------------------------
  auto* constants = app.add_subcommand("constants", "print data-dependent constants as CSV");
  DataFlags const_data;
  add_data_flags(constants, &const_data);
  int const_K = 1;
  double const_gamma = 1.0;
  int const_trials = 16;
  std::uint64_t const_seed = 0;
  std::string const_partition = "balanced-random";
  constants->add_option("--K", const_K, "worker count");
  constants->add_option("--gamma", const_gamma, "aggregation parameter");
  constants->add_option("--trials", const_trials, "random restarts for the sigma' bound");
  constants->add_option("--seed", const_seed, "seed");
  constants->add_option("--partition", const_partition, "balanced-random | contiguous");

  // --- certify ---------------------------------------------------------------
  auto* certify = app.add_subcommand("certify", "evaluate the duality-gap certificate");
  DataFlags cert_data;
  add_data_flags(certify, &cert_data);
  std::string cert_loss = "hinge";
  double cert_lambda = 1e-3;
  std::string alpha_file;
  double cert_tol = 1e-6;
  certify->add_option("--loss", cert_loss, "loss flag");
  certify->add_option("--lambda", cert_lambda, "regularization parameter");
  certify->add_option("--alpha", alpha_file, "dual vector file, one value per line")
      ->required();
  certify->add_option("--tol", cert_tol, "largest acceptable gap");

  // --- generate --------------------------------------------------------------
  auto* generate = app.add_subcommand("generate", "write a synthetic LIBSVM dataset");
  int gen_n = 1000, gen_d = 100;
  double gen_sparsity = 1.0;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  generate->add_option("--n", gen_n, "datapoints");
  generate->add_option("--d", gen_d, "feature dimension");
  generate->add_option("--sparsity", gen_sparsity, "per-feature presence probability");
  generate->add_option("--seed", gen_seed, "seed");
  generate->add_option("--out", gen_out, "output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : cocoa::kExitConfig;
  }

  try {
    if (train->parsed()) {
      spec.data = to_source(train_data);
      spec.partition = cocoa::parse_partition_strategy(partition_flag);
      for (const std::string& text : cell_flags) {
        spec.cells.push_back(cocoa::parse_cell(text));
      }
      if (spec.cells.empty()) {
        spec.cells.push_back(cocoa::parse_cell(variant_flag + ":" +
                                               std::to_string(single_K) + ":" + gamma_flag +
                                               ":" + sigma_flag + ":" + h_flag));
      }
      return cocoa::cmd_train(spec, std::cout, std::cerr);
    }
    if (constants->parsed()) {
      return cocoa::cmd_constants(to_source(const_data), const_K,
                                  cocoa::parse_partition_strategy(const_partition),
                                  const_seed, const_gamma, const_trials, std::cout,
                                  std::cerr);
    }
    if (certify->parsed()) {
      return cocoa::cmd_certify(to_source(cert_data), cert_loss, cert_lambda, alpha_file,
                                cert_tol, std::cout, std::cerr);
    }
    if (generate->parsed()) {
      return cocoa::cmd_generate(gen_n, gen_d, gen_sparsity, gen_seed, gen_out, std::cerr);
    }
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return cocoa::exit_code_for(e);
  }
  return cocoa::kExitConfig;
}
