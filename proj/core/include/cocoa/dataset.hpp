#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cocoa {

struct FeatureEntry {
  int index;     // 0-based feature id, < dim
  double value;  // finite, nonzero

  friend bool operator==(const FeatureEntry& a, const FeatureEntry& b) {
    return a.index == b.index && a.value == b.value;
  }
};

// Column-major sparse dataset: one sparse column per datapoint, one label in
// {-1,+1} per column. Indices are strictly increasing within a column.
// Squared column norms and their maximum are cached at construction.
class SparseDataset {
 public:
  SparseDataset(int dim, std::vector<std::vector<FeatureEntry>> columns,
                std::vector<int> labels);

  int n() const { return static_cast<int>(columns_.size()); }
  int dim() const { return dim_; }
  const std::vector<FeatureEntry>& column(int i) const { return columns_[i]; }
  int label(int i) const { return labels_[i]; }
  double column_norm_sq(int i) const { return col_norm_sq_[i]; }
  double r_max() const { return r_max_; }  // max_i ||x_i||^2
  std::size_t nnz() const { return nnz_; }

  friend bool operator==(const SparseDataset& a, const SparseDataset& b) {
    return a.dim_ == b.dim_ && a.columns_ == b.columns_ && a.labels_ == b.labels_;
  }

 private:
  int dim_;
  std::vector<std::vector<FeatureEntry>> columns_;
  std::vector<int> labels_;
  std::vector<double> col_norm_sq_;
  double r_max_;
  std::size_t nnz_;
};

// Reads LIBSVM/SVMLight text: one datapoint per nonempty non-comment line,
// "label idx:value idx:value ...", 1-based indices, '#' starts a comment.
// Accepted label spellings: "+1", "1", "-1", "0" (0 maps to -1).
// Zero-valued entries are dropped. dim_override > 0 widens the feature
// dimension beyond the largest index seen (it may not shrink it).
SparseDataset parse_libsvm(std::istream& in, int dim_override = 0);
SparseDataset parse_libsvm_file(const std::string& path, int dim_override = 0);

// Writes the exact text form parse_libsvm accepts; values are printed with
// enough digits to round-trip bit-exactly.
std::string to_libsvm(const SparseDataset& ds);

// Reproducible synthetic binary classification data. Each feature of each
// column is present with probability `sparsity`, values are standard normal,
// nonzero columns are scaled to unit norm. Labels are sign(x_i' w0) for a
// hidden normal vector w0, flipped with probability 5%.
SparseDataset generate_synthetic(int n, int d, double sparsity, std::uint64_t seed);

// Scales every nonzero column to unit Euclidean norm; zero columns stay zero.
SparseDataset normalize_columns(const SparseDataset& ds);

double dot_column(const SparseDataset& ds, int i, const std::vector<double>& dense);
void add_scaled_column(const SparseDataset& ds, int i, double scale,
                       std::vector<double>* dense);

}  // namespace cocoa
