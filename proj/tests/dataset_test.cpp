#include <cmath>
#include <sstream>

#include <doctest.h>

#include "cocoa/dataset.hpp"
#include "cocoa/errors.hpp"
#include "cocoa/partition.hpp"
#include "cocoa/rng.hpp"

using namespace cocoa;

TEST_CASE("parses the basic two-line file") {
  std::istringstream in("+1 1:0.5 3:-0.25\n-1 2:1.0\n");
  const SparseDataset ds = parse_libsvm(in);
  REQUIRE(ds.n() == 2);
  CHECK(ds.dim() == 3);
  CHECK(ds.label(0) == 1);
  CHECK(ds.label(1) == -1);
  REQUIRE(ds.column(0).size() == 2);
  CHECK(ds.column(0)[0] == FeatureEntry{0, 0.5});
  CHECK(ds.column(0)[1] == FeatureEntry{2, -0.25});
  CHECK(ds.column(1)[0] == FeatureEntry{1, 1.0});
  CHECK(ds.r_max() == doctest::Approx(1.0));
}

TEST_CASE("parser error paths") {
  SUBCASE("empty stream") {
    std::istringstream in("");
    CHECK_THROWS_WITH_AS(parse_libsvm(in), doctest::Contains("empty dataset"), ParseError);
  }
  SUBCASE("comment-only stream is empty") {
    std::istringstream in("# nothing here\n\n");
    CHECK_THROWS_AS(parse_libsvm(in), ParseError);
  }
  SUBCASE("indices must increase") {
    std::istringstream in("+1 2:1 1:1\n");
    try {
      parse_libsvm(in);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line_number == 1);
      CHECK(std::string(e.what()).find("increasing") != std::string::npos);
    }
  }
  SUBCASE("duplicate index is an error, not last-wins") {
    std::istringstream in("+1 2:1 2:3\n");
    CHECK_THROWS_AS(parse_libsvm(in), ParseError);
  }
  SUBCASE("unknown label") {
    std::istringstream in("+2 1:1\n");
    CHECK_THROWS_AS(parse_libsvm(in), ParseError);
  }
  SUBCASE("malformed token") {
    std::istringstream in("+1 1x\n");
    CHECK_THROWS_AS(parse_libsvm(in), ParseError);
  }
  SUBCASE("non-finite value") {
    std::istringstream in("+1 1:inf\n");
    CHECK_THROWS_AS(parse_libsvm(in), ParseError);
  }
  SUBCASE("byte offset points at the offending line") {
    std::istringstream in("+1 1:1\n-1 1:bad\n");
    try {
      parse_libsvm(in);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line_number == 2);
      CHECK(e.byte_offset == 7);
    }
  }
}

TEST_CASE("label zero maps to -1, comments and blanks are skipped") {
  std::istringstream in("\n# header\n0 1:2.0  # trailing comment\n1 2:1\n");
  const SparseDataset ds = parse_libsvm(in);
  REQUIRE(ds.n() == 2);
  CHECK(ds.label(0) == -1);
  CHECK(ds.label(1) == 1);
}

TEST_CASE("explicit zero values are dropped") {
  std::istringstream in("+1 1:0.0 2:1.0\n");
  const SparseDataset ds = parse_libsvm(in);
  CHECK(ds.column(0).size() == 1);
  CHECK(ds.nnz() == 1);
}

TEST_CASE("dimension override") {
  std::istringstream in("+1 1:1\n");
  CHECK(parse_libsvm(in, 10).dim() == 10);
  std::istringstream in2("+1 5:1\n");
  CHECK_THROWS_AS(parse_libsvm(in2, 3), ConfigError);
}

TEST_CASE("serialize/parse round-trip is exact") {
  const SparseDataset ds = generate_synthetic(60, 17, 0.4, 99);
  std::istringstream in(to_libsvm(ds));
  const SparseDataset back = parse_libsvm(in, ds.dim());
  CHECK(back == ds);
}

TEST_CASE("synthetic generator") {
  SUBCASE("deterministic") {
    CHECK(generate_synthetic(100, 20, 1.0, 7) == generate_synthetic(100, 20, 1.0, 7));
  }
  SUBCASE("dense columns all have unit norm") {
    const SparseDataset ds = generate_synthetic(100, 20, 1.0, 7);
    for (int i = 0; i < ds.n(); ++i) {
      CHECK(ds.column_norm_sq(i) == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(ds.r_max() <= 1.0 + 1e-12);
  }
  SUBCASE("mean nonzeros per column tracks the binomial expectation") {
    const SparseDataset ds = generate_synthetic(1000, 50, 0.1, 1);
    const double mean = static_cast<double>(ds.nnz()) / ds.n();
    CHECK(mean > 3.0);
    CHECK(mean < 7.0);
  }
  SUBCASE("bad parameters") {
    CHECK_THROWS_AS(generate_synthetic(10, 5, 0.0, 1), ConfigError);
    CHECK_THROWS_AS(generate_synthetic(10, 5, 1.5, 1), ConfigError);
    CHECK_THROWS_AS(generate_synthetic(0, 5, 0.5, 1), ConfigError);
  }
}

TEST_CASE("normalize_columns") {
  std::vector<std::vector<FeatureEntry>> cols{{{0, 3.0}, {1, 4.0}}, {}};
  const SparseDataset ds(2, std::move(cols), {1, -1});
  const SparseDataset norm = normalize_columns(ds);
  CHECK(norm.column(0)[0].value == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(norm.column(0)[1].value == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(norm.column(1).empty());  // zero column stays zero
  CHECK(norm.r_max() == doctest::Approx(1.0));
}

TEST_CASE("r_max is invariant under datapoint permutation") {
  const SparseDataset ds = generate_synthetic(40, 9, 0.6, 3);
  std::vector<std::vector<FeatureEntry>> cols;
  std::vector<int> labels;
  for (int i = ds.n() - 1; i >= 0; --i) {
    cols.push_back(ds.column(i));
    labels.push_back(ds.label(i));
  }
  const SparseDataset reversed(ds.dim(), std::move(cols), std::move(labels));
  CHECK(reversed.r_max() == ds.r_max());
}

TEST_CASE("dataset invariant violations throw") {
  CHECK_THROWS_AS(SparseDataset(2, {{{0, 1.0}, {0, 2.0}}}, {1}), DimensionError);
  CHECK_THROWS_AS(SparseDataset(2, {{{2, 1.0}}}, {1}), DimensionError);
  CHECK_THROWS_AS(SparseDataset(2, {{{0, 0.0}}}, {1}), ConfigError);
  CHECK_THROWS_AS(SparseDataset(2, {{{0, 1.0}}}, {2}), ConfigError);
  CHECK_THROWS_AS(SparseDataset(2, {{{0, 1.0}}}, {1, -1}), DimensionError);
}

TEST_CASE("partitions") {
  SUBCASE("contiguous blocks") {
    const Partition part = make_partition(8, 4, PartitionStrategy::Contiguous, 0);
    for (int k = 0; k < 4; ++k) CHECK(part.block_size(k) == 2);
    CHECK(part.members(0) == std::vector<int>{0, 1});
    CHECK(part.balanced());
  }
  SUBCASE("balanced random covers disjointly with sizes within one") {
    const Partition part = make_partition(7, 2, PartitionStrategy::BalancedRandom, 42);
    CHECK(part.block_size(0) + part.block_size(1) == 7);
    CHECK(std::abs(part.block_size(0) - part.block_size(1)) <= 1);
    std::vector<int> seen(7, 0);
    for (int k = 0; k < 2; ++k) {
      for (int i : part.members(k)) {
        ++seen[i];
        CHECK(part.owner(i) == k);
      }
    }
    for (int c : seen) CHECK(c == 1);
  }
  SUBCASE("one point per worker") {
    const Partition part = make_partition(5, 5, PartitionStrategy::BalancedRandom, 9);
    for (int k = 0; k < 5; ++k) CHECK(part.block_size(k) == 1);
  }
  SUBCASE("bad K") {
    CHECK_THROWS_AS(make_partition(4, 5, PartitionStrategy::Contiguous, 0), ConfigError);
    CHECK_THROWS_AS(make_partition(4, 0, PartitionStrategy::Contiguous, 0), ConfigError);
  }
  SUBCASE("deterministic in the seed") {
    const Partition a = make_partition(40, 4, PartitionStrategy::BalancedRandom, 5);
    const Partition b = make_partition(40, 4, PartitionStrategy::BalancedRandom, 5);
    for (int i = 0; i < 40; ++i) CHECK(a.owner(i) == b.owner(i));
  }
}

TEST_CASE("masked block vectors partition the squared norm") {
  Rng rng(31);
  const Partition part = make_partition(50, 4, PartitionStrategy::BalancedRandom, 8);
  std::vector<double> alpha(50);
  for (double& a : alpha) a = rng.normal();
  double total = 0.0, by_block = 0.0;
  for (double a : alpha) total += a * a;
  for (int k = 0; k < 4; ++k) {
    for (int i : part.members(k)) by_block += alpha[i] * alpha[i];
  }
  CHECK(by_block == doctest::Approx(total).epsilon(1e-13));
}
