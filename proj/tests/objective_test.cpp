#include <cmath>
#include <limits>

#include <doctest.h>

#include "cocoa/errors.hpp"
#include "cocoa/objective.hpp"
#include "support/oracles.hpp"

using namespace cocoa;
using cocoa::testing::make_random_problem;
using cocoa::testing::random_feasible_alpha;
using cocoa::testing::reference_solve;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

// Single datapoint x = (1, 0), y = +1.
Problem unit_problem(LossModel loss, double lambda) {
  return Problem(SparseDataset(2, {{{0, 1.0}}}, {1}), loss, lambda);
}

}  // namespace

TEST_CASE("primal_from_dual") {
  Problem p = unit_problem(LossModel::hinge(), 1.0);
  CHECK(primal_from_dual(p, {0.0}) == std::vector<double>{0.0, 0.0});
  CHECK(primal_from_dual(p, {1.0}) == std::vector<double>{1.0, 0.0});
  CHECK_THROWS_AS(primal_from_dual(p, {1.0, 2.0}), DimensionError);

  Problem q = make_random_problem(30, 8, LossKind::Hinge, 0.05, 5);
  const std::vector<double> alpha = random_feasible_alpha(q, 1);
  std::vector<double> twice(alpha);
  for (double& a : twice) a *= 2.0;
  const std::vector<double> w1 = primal_from_dual(q, alpha);
  const std::vector<double> w2 = primal_from_dual(q, twice);
  for (std::size_t j = 0; j < w1.size(); ++j) {
    CHECK(w2[j] == doctest::Approx(2.0 * w1[j]).epsilon(1e-13));
  }
}

TEST_CASE("primal_value at reference points") {
  Problem hinge = unit_problem(LossModel::hinge(), 2.0);
  CHECK(primal_value(hinge, {0.0, 0.0}) == 1.0);
  // l(1) = 0 plus (2/2)*1.
  CHECK(primal_value(hinge, {1.0, 0.0}) == 1.0);
  CHECK_THROWS_AS(primal_value(hinge, {1.0}), DimensionError);

  Problem logi = unit_problem(LossModel::logistic(), 1.0);
  CHECK(primal_value(logi, {0.0, 0.0}) == doctest::Approx(std::log(2.0)));

  Problem many = make_random_problem(25, 6, LossKind::Hinge, 0.1, 9);
  CHECK(primal_value(many, std::vector<double>(6, 0.0)) == doctest::Approx(1.0));
}

TEST_CASE("dual_value at reference points") {
  Problem p = unit_problem(LossModel::hinge(), 1.0);
  CHECK(dual_value(p, {0.0}) == 0.0);
  CHECK(dual_value(p, {1.0}) == doctest::Approx(0.5));
  // alpha*y = 2 is outside the conjugate domain.
  CHECK(dual_value(p, {2.0}) == -kInf);
  CHECK(duality_gap(p, {2.0}) == kInf);
}

TEST_CASE("duality gap at reference points") {
  Problem p = unit_problem(LossModel::hinge(), 1.0);
  CHECK(duality_gap(p, {0.0}) == doctest::Approx(1.0));
  CHECK(duality_gap(p, {1.0}) == doctest::Approx(0.0).epsilon(0).margin(1e-15));
}

TEST_CASE("weak duality on random feasible points") {
  for (int inst = 0; inst < 4; ++inst) {
    const LossKind kind = inst % 2 == 0 ? LossKind::Hinge : LossKind::Logistic;
    Problem p = make_random_problem(20 + inst * 5, 6, kind, 0.05, 100 + inst);
    for (int t = 0; t < 50; ++t) {
      CHECK(duality_gap(p, random_feasible_alpha(p, 1000 * inst + t)) >= -1e-9);
    }
  }
}

TEST_CASE("certificate bounds primal suboptimality") {
  Problem p = make_random_problem(30, 8, LossKind::SmoothedHinge, 0.1, 17);
  const auto ref = reference_solve(p, 1e-11, 3);
  REQUIRE(ref.reached);
  for (int t = 0; t < 40; ++t) {
    const std::vector<double> alpha = random_feasible_alpha(p, 50 + t);
    const double gap = duality_gap(p, alpha);
    const double primal = primal_value(p, primal_from_dual(p, alpha));
    CHECK(primal - ref.primal <= gap + 1e-9);
  }
}

TEST_CASE("dual improvement over zero never exceeds one for normalized losses") {
  for (int inst = 0; inst < 3; ++inst) {
    const LossKind kind =
        inst == 0 ? LossKind::Hinge : (inst == 1 ? LossKind::SmoothedHinge : LossKind::Logistic);
    Problem p = make_random_problem(24, 6, kind, 0.1, 200 + inst);
    const auto ref = reference_solve(p, 1e-9, 4);
    REQUIRE(ref.reached);
    CHECK(dual_value(p, std::vector<double>(p.n(), 0.0)) == 0.0);
    CHECK(ref.dual <= 1.0 + 1e-9);
  }
}

TEST_CASE("compensated summation agrees with plain summation") {
  Problem p = make_random_problem(200, 20, LossKind::Logistic, 0.02, 33);
  const std::vector<double> alpha = random_feasible_alpha(p, 2);
  CHECK(dual_value(p, alpha, SumMode::Compensated) ==
        doctest::Approx(dual_value(p, alpha)).epsilon(1e-12));
  const std::vector<double> w = primal_from_dual(p, alpha);
  CHECK(primal_value(p, w, SumMode::Compensated) ==
        doctest::Approx(primal_value(p, w)).epsilon(1e-12));
}

TEST_CASE("dual state consistency check") {
  Problem p = make_random_problem(20, 5, LossKind::Hinge, 0.1, 8);
  DualState state;
  state.alpha = random_feasible_alpha(p, 4);
  state.w = primal_from_dual(p, state.alpha);
  CHECK(dual_state_consistent(p, state));
  state.w[0] += 1.0;
  CHECK_FALSE(dual_state_consistent(p, state));
}

TEST_CASE("problem validation") {
  CHECK_THROWS_AS(unit_problem(LossModel::hinge(), 0.0), ConfigError);
  CHECK_THROWS_AS(unit_problem(LossModel::hinge(), -1.0), ConfigError);
  CHECK_THROWS_AS(unit_problem(LossModel::hinge(), kInf), ConfigError);
}
