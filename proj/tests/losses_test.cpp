#include <cmath>
#include <limits>
#include <vector>

#include <doctest.h>

#include "cocoa/losses.hpp"
#include "cocoa/rng.hpp"
#include "support/oracles.hpp"

using namespace cocoa;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

std::vector<LossModel> all_losses() {
  return {LossModel::hinge(), LossModel::smoothed_hinge(0.5), LossModel::smoothed_hinge(1.0),
          LossModel::smoothed_hinge(2.0), LossModel::logistic()};
}

}  // namespace

TEST_CASE("loss values at reference points") {
  const LossModel hinge = LossModel::hinge();
  CHECK(hinge.value(0.0, 1) == 1.0);
  CHECK(hinge.value(1.0, 1) == 0.0);
  CHECK(hinge.value(2.0, 1) == 0.0);
  CHECK(hinge.value(-1.0, -1) == 0.0);

  const LossModel logi = LossModel::logistic();
  CHECK(logi.value(0.0, -1) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(logi.value(0.0, 1) == doctest::Approx(std::log(2.0)).epsilon(1e-12));

  CHECK_THROWS_AS(hinge.value(std::nan(""), 1), std::domain_error);
  CHECK_THROWS_AS(logi.value(kInf, -1), std::domain_error);
}

TEST_CASE("losses are nonnegative and bounded by 1 at zero") {
  for (const LossModel& loss : all_losses()) {
    CHECK(loss.value(0.0, 1) <= 1.0);
    CHECK(loss.value(0.0, -1) <= 1.0);
    Rng rng(7);
    for (int t = 0; t < 200; ++t) {
      const double a = 20.0 * (rng.uniform() - 0.5);
      const int y = rng.uniform() < 0.5 ? 1 : -1;
      CHECK(loss.value(a, y) >= 0.0);
    }
  }
}

TEST_CASE("conjugates at reference points and outside the domain") {
  const LossModel hinge = LossModel::hinge();
  CHECK(hinge.conjugate(0.0, 1) == 0.0);
  CHECK(hinge.conjugate(0.0, -1) == 0.0);
  // alpha*y = 2 lies outside [0,1]: conjugate is infinite for |v| > L.
  CHECK(hinge.conjugate(-2.0, 1) == kInf);
  CHECK(hinge.conjugate(2.0, -1) == kInf);
  CHECK(hinge.conjugate(-1.0, 1) == -1.0);  // beta = 1

  const LossModel logi = LossModel::logistic();
  // beta = 1/2: binary entropy -log 2.
  CHECK(logi.conjugate(-0.5, 1) == doctest::Approx(-std::log(2.0)).epsilon(1e-12));
  CHECK(logi.conjugate(0.0, 1) == 0.0);   // beta = 0, 0 log 0 = 0
  CHECK(logi.conjugate(-1.0, 1) == 0.0);  // beta = 1
  CHECK(logi.conjugate(1.5, 1) == kInf);

  const LossModel smooth = LossModel::smoothed_hinge(0.8);
  CHECK(smooth.conjugate(-1.0, 1) == doctest::Approx(-1.0 + 0.4).epsilon(1e-12));
}

TEST_CASE("subgradients at reference points") {
  const LossModel hinge = LossModel::hinge();
  CHECK(hinge.subgradient(0.0, 1) == -1.0);
  CHECK(hinge.subgradient(2.0, 1) == 0.0);
  CHECK(hinge.subgradient(1.0, 1) == 0.0);  // kink: minimal-norm element

  const LossModel logi = LossModel::logistic();
  CHECK(logi.subgradient(0.0, 1) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(logi.subgradient(0.0, -1) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("regularity constants") {
  CHECK(LossModel::hinge().lipschitz() == 1.0);
  CHECK(LossModel::hinge().smoothness_inv_mu() == kInf);
  CHECK(LossModel::hinge().conjugate_mu() == 0.0);
  CHECK(LossModel::smoothed_hinge(0.5).smoothness_inv_mu() == 2.0);
  CHECK(LossModel::smoothed_hinge(0.5).conjugate_mu() == 0.5);
  CHECK(LossModel::logistic().smoothness_inv_mu() == 0.25);
  CHECK(LossModel::logistic().conjugate_mu() == 4.0);
  CHECK_THROWS(LossModel::smoothed_hinge(0.0));
  CHECK_THROWS(LossModel::smoothed_hinge(-1.0));
}

TEST_CASE("conjugate matches the brute-force sup over a dense grid") {
  for (const LossModel& loss : all_losses()) {
    for (int y : {1, -1}) {
      for (double beta : {0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99}) {
        const double v = -static_cast<double>(y) * beta;
        const double grid = cocoa::testing::conjugate_by_grid(loss, v, y);
        CHECK(loss.conjugate(v, y) == doctest::Approx(grid).epsilon(0).scale(1).margin(1e-6));
      }
    }
  }
}

TEST_CASE("Fenchel-Young inequality and equality at the gradient") {
  Rng rng(11);
  for (const LossModel& loss : all_losses()) {
    for (int t = 0; t < 300; ++t) {
      const int y = rng.uniform() < 0.5 ? 1 : -1;
      const double a = 12.0 * (rng.uniform() - 0.5);
      const double beta = rng.uniform();
      const double v = -static_cast<double>(y) * beta;
      const double conj = loss.conjugate(v, y);
      REQUIRE(std::isfinite(conj));
      CHECK(loss.value(a, y) + conj >= a * v - 1e-12);
      if (loss.smooth()) {
        const double g = loss.subgradient(a, y);
        const double cg = loss.conjugate(g, y);
        if (std::isfinite(cg)) {
          CHECK(loss.value(a, y) + cg == doctest::Approx(a * g).epsilon(0).margin(1e-9));
        }
      }
    }
  }
}

TEST_CASE("smooth derivatives match central finite differences") {
  const double h = 1e-6;
  for (const LossModel& loss :
       {LossModel::smoothed_hinge(0.5), LossModel::smoothed_hinge(1.0),
        LossModel::logistic()}) {
    for (int y : {1, -1}) {
      double worst = 0.0;
      for (int j = 0; j <= 400; ++j) {
        const double a = -10.0 + j * 0.05;
        const double fd = (loss.value(a + h, y) - loss.value(a - h, y)) / (2.0 * h);
        worst = std::max(worst, std::fabs(fd - loss.subgradient(a, y)));
      }
      CHECK(worst <= 1e-5);
    }
  }
}

TEST_CASE("1-Lipschitz continuity on random pairs") {
  Rng rng(23);
  for (const LossModel& loss : all_losses()) {
    for (int t = 0; t < 500; ++t) {
      const int y = rng.uniform() < 0.5 ? 1 : -1;
      const double a = 30.0 * (rng.uniform() - 0.5);
      const double b = 30.0 * (rng.uniform() - 0.5);
      CHECK(std::fabs(loss.value(a, y) - loss.value(b, y)) <=
            loss.lipschitz() * std::fabs(a - b) + 1e-12);
    }
  }
}
