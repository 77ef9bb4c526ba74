#include <doctest.h>

#include <cmath>
#include <sstream>

#include "bds/sweep.hpp"
#include "oracles.hpp"

using namespace bds;

TEST_CASE("w_grid") {
  const auto g = w_grid(11);
  REQUIRE(g.size() == 11);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 1.0);
  CHECK(g[3] == doctest::Approx(0.3));
  CHECK(w_grid(1) == std::vector<double>{1.0});
  CHECK_THROWS_AS(w_grid(0), Error);
}

TEST_CASE("sweep_target") {
  SweepConfig werner_cfg;
  const auto w = sweep_target(werner_cfg, 0.4);
  CHECK(w.p11 == doctest::Approx(0.55));

  SweepConfig custom;
  custom.family = StateFamily::kCustomSpec;
  custom.custom_spec = {0.7, 0.1, 0.1, 0.1};
  const auto s = sweep_target(custom, 0.5);
  CHECK(s.p00 == doctest::Approx(0.35 + 0.125));
  CHECK(s.p01 == doctest::Approx(0.05 + 0.125));
  CHECK(sweep_target(custom, 1.0).p00 == doctest::Approx(0.7));
  CHECK_THROWS_AS(sweep_target(custom, 1.5), Error);
}

TEST_CASE("SweepConfig validation") {
  SweepConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.noise_a = 1.2;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.w_points = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.family = StateFamily::kCustomSpec;
  cfg.custom_spec = {0.5, 0.5, 0.5, -0.5};
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("exact-mode sweep reproduces theory") {
  SweepConfig cfg;
  cfg.shots = 0;
  const auto rows = run_sweep(cfg);
  REQUIRE(rows.size() == 11);
  for (const auto& r : rows) {
    CHECK(r.fidelity == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(r.measured.nonlocal_coherence - r.theory.nonlocal_coherence) < 1e-9);
    CHECK(std::abs(r.measured.discord - r.theory.discord) < 1e-9);
    CHECK(std::abs(r.measured.negativity - r.theory.negativity) < 1e-9);
    CHECK(std::abs(r.measured.steering - r.theory.steering) < 1e-9);
    CHECK(std::abs(r.measured.nonlocality - r.theory.nonlocality) < 1e-9);
    CHECK(std::abs(r.theory.nonlocal_coherence - r.w) < 1e-9);
    CHECK_FALSE(r.projected);
  }

  cfg.noise_a = cfg.noise_p = 0.3;
  for (const auto& r : run_sweep(cfg)) CHECK(r.measured.nonlocality == 0.0);
}

TEST_CASE("custom family exact sweep") {
  SweepConfig cfg;
  cfg.shots = 0;
  cfg.family = StateFamily::kCustomSpec;
  cfg.custom_spec = {0.6, 0.1, 0.05, 0.25};
  cfg.w_points = 5;
  for (const auto& r : run_sweep(cfg)) {
    CHECK(r.fidelity == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(r.measured.negativity - r.theory.negativity) < 1e-9);
  }
}

TEST_CASE("shot sweep") {
  SweepConfig cfg;
  cfg.w_points = 3;
  cfg.seed = 5;
  const auto rows = run_sweep(cfg);
  CHECK(rows.back().fidelity >= 0.98);
  for (const auto& r : rows) CHECK(satisfies_hierarchy(r.measured));

  // The raw linear-inversion path still produces finite numbers.
  cfg.project_physical = false;
  cfg.shots = 64;
  for (const auto& r : run_sweep(cfg)) {
    CHECK(std::isfinite(r.fidelity));
    CHECK(std::isfinite(r.measured.discord));
    CHECK_FALSE(r.projected);
  }
}

TEST_CASE("sweep output is deterministic and independent of thread count") {
  SweepConfig cfg;
  cfg.w_points = 6;
  cfg.seed = 99;
  cfg.threads = 1;
  const std::string one = sweep_csv(run_sweep(cfg));
  CHECK(one == sweep_csv(run_sweep(cfg)));
  cfg.threads = 3;
  CHECK(one == sweep_csv(run_sweep(cfg)));
  cfg.seed = 100;
  CHECK(one != sweep_csv(run_sweep(cfg)));
}

TEST_CASE("CSV format") {
  SweepRow r;
  r.w = 0.5;
  r.fidelity = 1.0;
  r.measured.discord = -1e-12;
  r.theory.negativity = 0.25;
  const std::string csv = sweep_csv({r});
  CHECK(csv ==
        "w,F,C,D,E,S,N,C_th,D_th,E_th,S_th,N_th\n"
        "0.500000,1.000000,0.000000,0.000000,0.000000,0.000000,0.000000,0.000000,0.000000,"
        "0.250000,0.000000,0.000000\n");
}
