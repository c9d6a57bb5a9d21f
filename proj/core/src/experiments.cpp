#include "cocoa/experiments.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "cocoa/errors.hpp"
#include "cocoa/log.hpp"

namespace cocoa {

namespace fs = std::filesystem;

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return kExitParse;
  if (dynamic_cast<const DivergedError*>(&e)) return kExitDiverged;
  if (dynamic_cast<const IoError*>(&e)) return kExitIo;
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const DimensionError*>(&e)) {
    return kExitConfig;
  }
  return kExitConfig;
}

SparseDataset load_dataset(const DataSource& source, std::uint64_t seed) {
  if (source.synthetic.has_value() && !source.path.empty()) {
    throw ConfigError("specify either a data file or a synthetic spec, not both");
  }
  if (source.synthetic.has_value()) {
    const SyntheticSpec& s = *source.synthetic;
    SparseDataset ds = generate_synthetic(s.n, s.d, s.sparsity, seed);
    return source.normalize ? normalize_columns(ds) : ds;
  }
  if (source.path.empty()) throw ConfigError("no data source given");
  SparseDataset ds = parse_libsvm_file(source.path, source.dim_override);
  return source.normalize ? normalize_columns(ds) : ds;
}

LossModel parse_loss_flag(const std::string& flag) {
  if (flag == "hinge") return LossModel::hinge();
  if (flag == "logistic") return LossModel::logistic();
  if (flag == "smoothed-hinge") return LossModel::smoothed_hinge(1.0);
  const std::string prefix = "smoothed-hinge:";
  if (flag.rfind(prefix, 0) == 0) {
    try {
      std::size_t used = 0;
      const std::string arg = flag.substr(prefix.size());
      const double mu = std::stod(arg, &used);
      if (used != arg.size()) throw std::invalid_argument(arg);
      return LossModel::smoothed_hinge(mu);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      throw ConfigError("cannot parse smoothing parameter in '" + flag + "'");
    }
  }
  throw ConfigError("unknown loss '" + flag +
                    "' (expected hinge, smoothed-hinge[:<mu>] or logistic)");
}

SweepCell parse_cell(const std::string& text) {
  std::vector<std::string> parts;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ':')) parts.push_back(token);
  if (parts.size() != 5) {
    throw ConfigError("cell '" + text + "' must have the form variant:K:gamma:sigma:H");
  }
  SweepCell cell;
  cell.variant = parse_variant(parts[0]);
  try {
    cell.K = std::stoi(parts[1]);
    if (parts[2] != "-") cell.gamma = std::stod(parts[2]);
    if (parts[3] != "safe") cell.sigma_prime = std::stod(parts[3]);
    if (parts[4] != "auto") cell.H = std::stol(parts[4]);
  } catch (const std::exception&) {
    throw ConfigError("cannot parse cell '" + text + "'");
  }
  return cell;
}

namespace {

struct PreparedCell {
  SweepCell cell;
  RunConfig config;
  Partition partition;
};

RunConfig cell_config(const SweepCell& cell, const ExperimentSpec& spec) {
  RunConfig cfg;
  cfg.K = cell.K;
  cfg.gamma = cell.gamma;
  cfg.sigma_prime = cell.sigma_prime;
  cfg.H = cell.H.value_or(1);
  cfg.T_max = spec.T_max;
  cfg.gap_tol = spec.gap_tol;
  cfg.gap_every = spec.gap_every;
  cfg.seed = spec.seed;
  cfg.variant = cell.variant;
  cfg.partition = spec.partition;
  return cfg;
}

long auto_budget(const SweepCell& cell, const ExperimentSpec& spec, const Problem& p,
                 const Partition& part) {
  if (!p.loss.smooth()) {
    throw ConfigError("H=auto needs a smooth loss (the budget formula uses mu)");
  }
  int max_block = 0;
  for (int k = 0; k < part.K(); ++k) max_block = std::max(max_block, part.block_size(k));
  const double gamma =
      cell.variant == Variant::CocoaAveraging ? 1.0 / static_cast<double>(cell.K) : 1.0;
  const double sigma_prime = cell.sigma_prime.value_or(safe_sigma_prime(gamma, cell.K));
  return required_H_smooth(max_block, sigma_prime, p.dataset.r_max(), p.lambda, p.n(),
                           p.loss.conjugate_mu(), spec.theta);
}

std::string cell_file_name(std::size_t index, const ResolvedConfig& rc) {
  std::ostringstream name;
  name << "cell" << index << '_' << variant_name(rc.variant) << "_K" << rc.K << "_H"
       << rc.H << ".jsonl";
  return name.str();
}

}  // namespace

int cmd_train(const ExperimentSpec& spec, std::ostream& out, std::ostream& err) {
  try {
    if (spec.cells.empty()) throw ConfigError("no sweep cells given");
    const LossModel loss = parse_loss_flag(spec.loss_flag);
    Problem problem(load_dataset(spec.data, spec.seed), loss, spec.lambda);

    // Validate every cell before anything runs or is written.
    std::vector<PreparedCell> prepared;
    prepared.reserve(spec.cells.size());
    for (std::size_t c = 0; c < spec.cells.size(); ++c) {
      try {
        const SweepCell& cell = spec.cells[c];
        Partition part =
            make_partition(problem.n(), cell.K, spec.partition, spec.seed);
        RunConfig cfg = cell_config(cell, spec);
        if (!cell.H.has_value()) cfg.H = auto_budget(cell, spec, problem, part);
        (void)cfg.resolve();
        prepared.push_back(PreparedCell{cell, cfg, std::move(part)});
      } catch (const std::exception& e) {
        throw ConfigError("cell " + std::to_string(c) + ": " + e.what());
      }
    }

    fs::create_directories(spec.out_dir);
    std::ostringstream summary;
    summary << "cell,variant,K,gamma,sigma_prime,H,status,rounds_to_tol,final_gap,log\n";
    summary.precision(17);

    for (std::size_t c = 0; c < prepared.size(); ++c) {
      const PreparedCell& pc = prepared[c];
      const ResolvedConfig rc = pc.config.resolve();
      if (spec.dump_config) out << config_json(rc) << '\n';

      ConvergenceLog log;
      std::string status = "ok";
      try {
        log = run(problem, pc.partition, pc.config, spec.threads);
      } catch (const DivergedError& e) {
        if (!spec.allow_diverge) {
          err << "cell " << c << " diverged: " << e.what() << '\n';
          return kExitDiverged;
        }
        status = "diverged";
        log.header.config = rc;
        log.header.n = problem.n();
        log.header.d = problem.dim();
        log.header.nnz = problem.dataset.nnz();
        log.header.r_max = problem.dataset.r_max();
        log.header.loss = problem.loss.name();
        log.header.lambda = problem.lambda;
        log.header.warnings.push_back(std::string("diverged: ") + e.what());
      }
      if (spec.with_constants && status == "ok") {
        log.header.constants = spectral_constants(problem.dataset, pc.partition);
      }

      const std::string file_name = cell_file_name(c, rc);
      const fs::path log_path = fs::path(spec.out_dir) / file_name;
      {
        std::ofstream f(log_path);
        if (!f) throw IoError("cannot write '" + log_path.string() + "'");
        f << to_jsonl(log);
      }
      if (spec.write_csv) {
        const fs::path csv_path = fs::path(spec.out_dir) / (file_name + ".csv");
        std::ofstream f(csv_path);
        if (!f) throw IoError("cannot write '" + csv_path.string() + "'");
        f << to_csv(log);
      }

      const std::optional<int> rounds = log.rounds_to(spec.gap_tol);
      const double final_gap =
          log.records.empty() ? std::numeric_limits<double>::quiet_NaN()
                              : log.records.back().gap;
      summary << c << ',' << variant_name(rc.variant) << ',' << rc.K << ',' << rc.gamma
              << ',' << rc.sigma_prime << ',' << rc.H << ',' << status << ','
              << (rounds.has_value() ? std::to_string(*rounds) : std::string()) << ','
              << final_gap << ',' << file_name << '\n';
    }

    const fs::path summary_path = fs::path(spec.out_dir) / "summary.csv";
    {
      std::ofstream f(summary_path);
      if (!f) throw IoError("cannot write '" + summary_path.string() + "'");
      f << summary.str();
    }
    out << summary_path.string() << '\n';
    return kExitOk;
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return exit_code_for(e);
  }
}

int cmd_constants(const DataSource& data, int K, PartitionStrategy strategy,
                  std::uint64_t seed, double gamma, int trials, std::ostream& out,
                  std::ostream& err) {
  try {
    const SparseDataset ds = load_dataset(data, seed);
    const Partition part = make_partition(ds.n(), K, strategy, seed);
    const SpectralConstants sc = spectral_constants(ds, part);
    const double lb = sigma_prime_lower_bound(ds, part, gamma, trials, seed);

    out.precision(17);
    out << "quantity,k,value\n";
    for (int k = 0; k < part.K(); ++k) {
      out << "n_k," << k << ',' << part.block_size(k) << '\n';
    }
    for (int k = 0; k < part.K(); ++k) {
      out << "sigma_k," << k << ',' << sc.sigma_k[k] << '\n';
    }
    out << "sigma,," << sc.sigma << '\n';
    out << "ratio,," << sc.ratio << '\n';
    out << "sigma_prime_min_lower_bound,," << lb << '\n';
    out << "safe_sigma_prime,," << safe_sigma_prime(gamma, K) << '\n';
    return kExitOk;
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return exit_code_for(e);
  }
}

int cmd_certify(const DataSource& data, const std::string& loss_flag, double lambda,
                const std::string& alpha_path, double tol, std::ostream& out,
                std::ostream& err) {
  try {
    const LossModel loss = parse_loss_flag(loss_flag);
    Problem problem(load_dataset(data, 0), loss, lambda);

    std::ifstream f(alpha_path);
    if (!f) throw IoError("cannot open '" + alpha_path + "'");
    std::vector<double> alpha;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(f, line)) {
      ++line_number;
      if (line.empty()) continue;
      try {
        std::size_t used = 0;
        const double v = std::stod(line, &used);
        alpha.push_back(v);
      } catch (const std::exception&) {
        throw ParseError("cannot parse dual value '" + line + "'", line_number, 0);
      }
    }
    if (static_cast<int>(alpha.size()) != problem.n()) {
      throw ParseError("alpha length " + std::to_string(alpha.size()) +
                           " does not match dataset size " + std::to_string(problem.n()),
                       line_number, 0);
    }

    const double dual = dual_value(problem, alpha);
    const double primal = primal_value(problem, primal_from_dual(problem, alpha));
    const double gap = primal - dual;  // +inf when alpha is infeasible
    const double reported = gap < 0.0 ? 0.0 : gap;
    out.precision(17);
    out << "primal,dual,gap\n" << primal << ',' << dual << ',' << reported << '\n';
    return reported <= tol ? kExitOk : kExitCertificate;
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return exit_code_for(e);
  }
}

int cmd_generate(int n, int d, double sparsity, std::uint64_t seed,
                 const std::string& out_path, std::ostream& err) {
  try {
    const SparseDataset ds = generate_synthetic(n, d, sparsity, seed);
    std::ofstream f(out_path);
    if (!f) throw IoError("cannot write '" + out_path + "'");
    f << to_libsvm(ds);
    return kExitOk;
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return exit_code_for(e);
  }
}

}  // namespace cocoa
