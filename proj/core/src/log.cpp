#include "cocoa/log.hpp"

#include <sstream>

#include <json.hpp>

namespace cocoa {

namespace {

using Json = nlohmann::ordered_json;

Json config_to_json(const ResolvedConfig& cfg) {
  Json j;
  j["variant"] = variant_name(cfg.variant);
  j["K"] = cfg.K;
  j["gamma"] = cfg.gamma;
  j["sigma_prime"] = cfg.sigma_prime;
  j["H"] = cfg.H;
  j["T_max"] = cfg.T_max;
  j["gap_tol"] = cfg.gap_tol;
  j["gap_every"] = cfg.gap_every;
  j["seed"] = cfg.seed;
  j["partition"] = partition_strategy_name(cfg.partition);
  j["sigma_prime_below_safe"] = cfg.sigma_prime_below_safe;
  return j;
}

}  // namespace

std::string to_jsonl(const ConvergenceLog& log, bool with_wall_ms) {
  Json header;
  header["type"] = "header";
  header["config"] = config_to_json(log.header.config);
  header["loss"] = log.header.loss;
  header["lambda"] = log.header.lambda;
  header["dataset"] = {{"n", log.header.n},
                       {"d", log.header.d},
                       {"nnz", log.header.nnz},
                       {"r_max", log.header.r_max}};
  if (log.header.constants.has_value()) {
    const SpectralConstants& c = *log.header.constants;
    header["constants"] = {
        {"sigma_k", c.sigma_k}, {"sigma", c.sigma}, {"ratio", c.ratio}};
  }
  header["warnings"] = log.header.warnings;

  std::string out = header.dump();
  out += '\n';
  for (const RoundRecord& rec : log.records) {
    Json j;
    j["round"] = rec.round;
    j["comm_vectors"] = rec.comm_vectors;
    j["dual"] = rec.dual;
    j["primal"] = rec.primal;
    j["gap"] = rec.gap;
    if (with_wall_ms) j["wall_ms"] = rec.wall_ms;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string to_csv(const ConvergenceLog& log) {
  std::ostringstream out;
  out << "round,comm_vectors,dual,primal,gap,wall_ms\n";
  out.precision(17);
  for (const RoundRecord& rec : log.records) {
    out << rec.round << ',' << rec.comm_vectors << ',' << rec.dual << ',' << rec.primal
        << ',' << rec.gap << ',' << rec.wall_ms << '\n';
  }
  return out.str();
}

std::string config_json(const ResolvedConfig& cfg) { return config_to_json(cfg).dump(2); }

}  // namespace cocoa
