#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "wident/optimizer.hpp"
#include "wident/wfamily.hpp"

using namespace wident;
using Catch::Approx;

namespace {

OptimizerConfig small_config(int restarts, std::uint64_t seed = 4242) {
  OptimizerConfig config;
  config.restarts = restarts;
  config.seed = seed;
  return config;
}

}  // namespace

TEST_CASE("configuration validation", "[optimizer]") {
  OptimizerConfig config;
  config.restarts = 0;
  REQUIRE_THROWS_AS(minimize_ratio(1.0, config), std::invalid_argument);
  config.restarts = 1;
  config.max_iters = 0;
  REQUIRE_THROWS_AS(minimize_ratio(1.0, config), std::invalid_argument);
  config.max_iters = 10;
  config.convergence_tol = 0.0;
  REQUIRE_THROWS_AS(minimize_ratio(1.0, config), std::invalid_argument);
  OptimizerConfig empty_grid;
  empty_grid.gamma_grid.clear();
  REQUIRE_THROWS_AS(gamma_scan(empty_grid), std::invalid_argument);
}

TEST_CASE("determinism and restart-prefix stability", "[optimizer]") {
  SECTION("identical seeds give identical trajectories") {
    OptimizerConfig config = small_config(6);
    config.max_iters = 600;
    const OptimizationResult a = minimize_ratio(1.0, config);
    const OptimizationResult b = minimize_ratio(1.0, config);
    REQUIRE(a.best_ratio == b.best_ratio);
    REQUIRE(a.restart_values == b.restart_values);
    REQUIRE((a.best_state.amps() - b.best_state.amps()).cwiseAbs().maxCoeff() ==
            0.0);
  }

  SECTION("raising the restart count keeps the earlier streams") {
    OptimizerConfig short_run = small_config(4);
    short_run.max_iters = 600;
    OptimizerConfig long_run = small_config(8);
    long_run.max_iters = 600;
    const OptimizationResult a = minimize_ratio(-2.0, short_run);
    const OptimizationResult b = minimize_ratio(-2.0, long_run);
    for (int r = 0; r < 4; ++r)
      REQUIRE(a.restart_values[r] == b.restart_values[r]);
    REQUIRE(b.best_ratio <= a.best_ratio);
  }

  SECTION("best_ratio is the smallest restart value") {
    OptimizerConfig config = small_config(5);
    config.max_iters = 400;
    const OptimizationResult res = minimize_ratio(0.5, config);
    REQUIRE(res.best_ratio ==
            *std::min_element(res.restart_values.begin(),
                              res.restart_values.end()));
    REQUIRE(res.restart_values.size() == 5);
    REQUIRE(res.restart_converged.size() == 5);
  }
}

TEST_CASE("saturation search", "[optimizer]") {
  SECTION("warm start on the family stays at the floor") {
    OptimizerConfig config = small_config(1);
    config.warm_starts = {critical_state(CriticalParams(Family::c1, 0.5, 0.0))};
    const OptimizationResult res = minimize_ratio(1.0, config);
    REQUIRE(res.best_ratio >= kSaturationRatio - 1e-9);
    REQUIRE(res.best_ratio == Approx(kSaturationRatio).margin(1e-6));
  }

  SECTION("random restarts reach the floor at both distinguished gammas") {
    for (double gamma : {1.0, -2.0}) {
      const OptimizationResult res = minimize_ratio(gamma, small_config(8));
      REQUIRE(res.best_ratio == Approx(kSaturationRatio).margin(1e-4));
      REQUIRE(res.claim_check == BoundCheck::matches);
    }
  }

  SECTION("the found extremum is reproducible from the stored state") {
    const OptimizationResult res = minimize_ratio(1.0, small_config(6));
    const UncertaintyReport rep = report(res.best_state, 1.0);
    REQUIRE(rep.additive_ratio.has_value());
    REQUIRE(*rep.additive_ratio == Approx(res.best_ratio).margin(1e-12));
  }

  SECTION("a strangled search reports above_bound, not a false match") {
    OptimizerConfig config = small_config(1, 99);
    config.max_iters = 1;
    const OptimizationResult res = minimize_ratio(1.0, config);
    REQUIRE(res.best_ratio > kSaturationRatio + 1e-4);
    REQUIRE(res.claim_check == BoundCheck::above);
    REQUIRE_FALSE(res.restart_converged[0]);
  }
}

TEST_CASE("gamma sweep", "[optimizer]") {
  SECTION("grid order is preserved and the distinguished points win") {
    OptimizerConfig config = small_config(6);
    config.gamma_grid = {-3.0, -2.0, 0.0, 1.0, 2.0};
    const std::vector<OptimizationResult> results = gamma_scan(config);
    REQUIRE(results.size() == 5);
    for (std::size_t i = 0; i < results.size(); ++i)
      REQUIRE(results[i].gamma == Approx(config.gamma_grid[i]));
    const double at_minus_two = results[1].best_ratio;
    const double at_one = results[3].best_ratio;
    REQUIRE(at_minus_two == Approx(kSaturationRatio).margin(1e-4));
    REQUIRE(at_one == Approx(kSaturationRatio).margin(1e-4));
    for (std::size_t i : {0u, 2u, 4u})
      REQUIRE(results[i].best_ratio > kSaturationRatio + 1e-3);
  }

  SECTION("single-point grid") {
    OptimizerConfig config = small_config(4);
    config.gamma_grid = {1.0};
    REQUIRE(gamma_scan(config).size() == 1);
  }
}
