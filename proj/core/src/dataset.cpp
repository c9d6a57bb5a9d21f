#include "cocoa/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>
#include <utility>

#include "cocoa/errors.hpp"
#include "cocoa/rng.hpp"

namespace cocoa {

SparseDataset::SparseDataset(int dim, std::vector<std::vector<FeatureEntry>> columns,
                             std::vector<int> labels)
    : dim_(dim), columns_(std::move(columns)), labels_(std::move(labels)) {
  if (labels_.size() != columns_.size()) {
    throw DimensionError("label count does not match column count");
  }
  col_norm_sq_.reserve(columns_.size());
  r_max_ = 0.0;
  nnz_ = 0;
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (labels_[i] != 1 && labels_[i] != -1) {
      throw ConfigError("labels must be +1 or -1");
    }
    int prev = -1;
    double norm_sq = 0.0;
    for (const FeatureEntry& e : columns_[i]) {
      if (e.index <= prev || e.index >= dim_) {
        throw DimensionError("column indices must be strictly increasing and < dim");
      }
      if (!std::isfinite(e.value) || e.value == 0.0) {
        throw ConfigError("column values must be finite and nonzero");
      }
      prev = e.index;
      norm_sq += e.value * e.value;
    }
    nnz_ += columns_[i].size();
    col_norm_sq_.push_back(norm_sq);
    r_max_ = std::max(r_max_, norm_sq);
  }
}

namespace {

bool parse_double(const std::string& tok, double* out) {
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end != tok.c_str() + tok.size() || tok.empty()) return false;
  *out = v;
  return true;
}

}  // namespace

SparseDataset parse_libsvm(std::istream& in, int dim_override) {
  std::vector<std::vector<FeatureEntry>> columns;
  std::vector<int> labels;
  int max_index = 0;  // 1-based maximum seen

  std::string line;
  std::size_t line_number = 0;
  std::size_t line_start_byte = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::size_t this_line_start = line_start_byte;
    line_start_byte += line.size() + 1;  // getline consumed the newline (if any)
    if (!line.empty() && line.back() == '\r') line.pop_back();

    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);

    std::istringstream tokens(line);
    std::string tok;
    if (!(tokens >> tok)) continue;  // blank or comment-only line

    int label = 0;
    if (tok == "+1" || tok == "1") {
      label = 1;
    } else if (tok == "-1" || tok == "0") {
      label = -1;
    } else {
      throw ParseError("unrecognized label '" + tok + "'", line_number, this_line_start);
    }

    std::vector<FeatureEntry> col;
    int prev_index = 0;  // 1-based
    while (tokens >> tok) {
      const std::size_t colon = tok.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 >= tok.size()) {
        throw ParseError("malformed feature token '" + tok + "'", line_number,
                         this_line_start);
      }
      int index = 0;
      try {
        std::size_t used = 0;
        index = std::stoi(tok.substr(0, colon), &used);
        if (used != colon) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ParseError("malformed feature index in '" + tok + "'", line_number,
                         this_line_start);
      }
      if (index < 1) {
        throw ParseError("feature indices are 1-based, got " + std::to_string(index),
                         line_number, this_line_start);
      }
      if (index <= prev_index) {
        throw ParseError("feature indices not strictly increasing at '" + tok + "'",
                         line_number, this_line_start);
      }
      double value = 0.0;
      if (!parse_double(tok.substr(colon + 1), &value) || !std::isfinite(value)) {
        throw ParseError("non-finite or malformed value in '" + tok + "'", line_number,
                         this_line_start);
      }
      prev_index = index;
      max_index = std::max(max_index, index);
      if (value != 0.0) col.push_back({index - 1, value});
    }
    columns.push_back(std::move(col));
    labels.push_back(label);
  }

  if (columns.empty()) throw ParseError("empty dataset", line_number, line_start_byte);

  int dim = max_index;
  if (dim_override > 0) {
    if (dim_override < max_index) {
      throw ConfigError("dimension override " + std::to_string(dim_override) +
                        " is smaller than the largest feature index " +
                        std::to_string(max_index));
    }
    dim = dim_override;
  }
  return SparseDataset(dim, std::move(columns), std::move(labels));
}

SparseDataset parse_libsvm_file(const std::string& path, int dim_override) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return parse_libsvm(in, dim_override);
}

std::string to_libsvm(const SparseDataset& ds) {
  std::string out;
  char buf[64];
  for (int i = 0; i < ds.n(); ++i) {
    out += ds.label(i) > 0 ? "+1" : "-1";
    for (const FeatureEntry& e : ds.column(i)) {
      std::snprintf(buf, sizeof(buf), " %d:%.17g", e.index + 1, e.value);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

SparseDataset generate_synthetic(int n, int d, double sparsity, std::uint64_t seed) {
  if (n < 1 || d < 1) throw ConfigError("synthetic data requires n >= 1 and d >= 1");
  if (!(sparsity > 0.0) || sparsity > 1.0) {
    throw ConfigError("sparsity must lie in (0, 1]");
  }

  Rng rng(rng_key(seed, 0, 0x5d47));
  std::vector<double> truth(d);
  for (double& t : truth) t = rng.normal();

  std::vector<std::vector<FeatureEntry>> columns(n);
  std::vector<int> labels(n);
  for (int i = 0; i < n; ++i) {
    std::vector<FeatureEntry>& col = columns[i];
    double norm_sq = 0.0;
    // Redraw empty columns: a datapoint with no features is unlearnable and
    // would put a permanent floor under the duality gap.
    while (col.empty()) {
      for (int j = 0; j < d; ++j) {
        if (sparsity < 1.0 && rng.uniform() >= sparsity) continue;
        double v = rng.normal();
        while (v == 0.0) v = rng.normal();
        col.push_back({j, v});
        norm_sq += v * v;
      }
    }
    {
      const double inv = 1.0 / std::sqrt(norm_sq);
      for (FeatureEntry& e : col) e.value *= inv;
    }
    double margin = 0.0;
    for (const FeatureEntry& e : col) margin += e.value * truth[e.index];
    int y = margin >= 0.0 ? 1 : -1;
    if (rng.uniform() < 0.05) y = -y;  // label noise
    labels[i] = y;
  }
  return SparseDataset(d, std::move(columns), std::move(labels));
}

SparseDataset normalize_columns(const SparseDataset& ds) {
  std::vector<std::vector<FeatureEntry>> columns(ds.n());
  std::vector<int> labels(ds.n());
  for (int i = 0; i < ds.n(); ++i) {
    columns[i] = ds.column(i);
    labels[i] = ds.label(i);
    const double norm_sq = ds.column_norm_sq(i);
    if (norm_sq > 0.0) {
      const double inv = 1.0 / std::sqrt(norm_sq);
      for (FeatureEntry& e : columns[i]) e.value *= inv;
    }
  }
  return SparseDataset(ds.dim(), std::move(columns), std::move(labels));
}

double dot_column(const SparseDataset& ds, int i, const std::vector<double>& dense) {
  double acc = 0.0;
  for (const FeatureEntry& e : ds.column(i)) acc += e.value * dense[e.index];
  return acc;
}

void add_scaled_column(const SparseDataset& ds, int i, double scale,
                       std::vector<double>* dense) {
  for (const FeatureEntry& e : ds.column(i)) (*dense)[e.index] += scale * e.value;
}

}  // namespace cocoa
