#pragma once

#include <string>

#include "cocoa/framework.hpp"

namespace cocoa {

// JSON-lines rendering: one header object, then one object per record with
// keys round, comm_vectors, dual, primal, gap, wall_ms. with_wall_ms=false
// drops the timing field (the only nondeterministic one) so logs can be
// compared byte for byte.
std::string to_jsonl(const ConvergenceLog& log, bool with_wall_ms = true);

// CSV rendering of the records with a one-line column header.
std::string to_csv(const ConvergenceLog& log);

// The resolved configuration alone, as a JSON object (the `--dump-config`
// payload).
std::string config_json(const ResolvedConfig& cfg);

}  // namespace cocoa
