#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bds/noise.hpp"
#include "oracles.hpp"

using namespace bds;

namespace {

const double kSqrt2 = std::numbers::sqrt2;
const double kSqrt3 = std::numbers::sqrt3;

}  // namespace

TEST_CASE("composite_damping completeness") {
  for (double a = 0.0; a <= 1.0; a += 0.05) {
    for (double p = 0.0; p <= 1.0; p += 0.05) {
      const auto ch = composite_damping(std::min(a, 1.0), std::min(p, 1.0));
      CHECK(ch.operators().size() == 3);
      CHECK(ch.completeness_error() < 1e-10);
    }
  }
  for (auto [a, p] : {std::pair{-0.1, 0.2}, std::pair{0.2, 1.5}, std::pair{std::nan(""), 0.0}}) {
    try {
      composite_damping(a, p);
      FAIL("expected an exception");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kOutOfRange);
    }
  }
}

TEST_CASE("KrausChannel rejects incomplete or mismatched operators") {
  CHECK_THROWS_AS(KrausChannel({ComplexMatrix::diagonal({1.0, 0.5})}), Error);
  CHECK_THROWS_AS(KrausChannel({ComplexMatrix::identity(2), ComplexMatrix::identity(4)}), Error);
  CHECK_THROWS_AS(KrausChannel({}), Error);
  CHECK_NOTHROW(KrausChannel({ComplexMatrix::identity(2)}));
}

TEST_CASE("composite_damping examples") {
  oracle::Rng rng(31);
  const auto identity = composite_damping(0, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const auto rho = oracle::random_state(rng, 2);
    CHECK(max_abs_diff(apply_channel(identity, rho, 0).matrix(), rho.matrix()) < 1e-15);
  }

  for (double p : {0.0, 0.4, 1.0}) {
    const auto decay = composite_damping(1, p);
    for (int trial = 0; trial < 5; ++trial) {
      const auto q = oracle::random_state(rng, 1);
      CHECK(max_abs_diff(apply_channel(decay, q, 0).matrix(), ComplexMatrix::diagonal({1.0, 0.0})) <
            1e-15);
    }
  }

  const auto plus = DensityMatrix(ComplexMatrix{{0.5, 0.5}, {0.5, 0.5}});
  const auto out = apply_channel(composite_damping(0.3, 0.3), plus, 0);
  CHECK(std::abs(out(0, 1) - 0.5 * 0.7) < 1e-15);
}

TEST_CASE("damping scales Werner correlations") {
  const auto ch = composite_damping(0.3, 0.3);
  for (double w : {0.2, 0.5, 1.0}) {
    const auto bloch = bloch_decompose(apply_channel(ch, werner(w), 0));
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        CHECK(std::abs(bloch.corr[j][k] - (j == k ? -0.7 * w : 0.0)) < 1e-12);
      }
    }
  }
  const double n = nonlocality(apply_channel(composite_damping(0.25, 0.25), werner(1), 0));
  CHECK(n == doctest::Approx((0.75 * kSqrt2 - 1) / (kSqrt2 - 1)).epsilon(1e-12));
  CHECK(n == doctest::Approx(0.1464).epsilon(1e-3));
}

TEST_CASE("apply_channel preserves trace and positivity") {
  oracle::Rng rng(32);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto rho = oracle::random_state(rng, 2, 1 + trial % 4);
    const auto out = apply_channel(composite_damping(u(rng), u(rng)), rho, trial % 2);
    CHECK(std::abs(out.matrix().trace() - 1.0) < 1e-10);
    CHECK(out.matrix().is_hermitian(1e-12));
    CHECK(out.min_eigenvalue() >= -1e-10);
  }
  CHECK_THROWS_AS(apply_channel(composite_damping(0.1, 0.1), werner(0.5), 2), Error);
  const KrausChannel two_qubit({ComplexMatrix::identity(4)});
  CHECK_THROWS_AS(apply_channel(two_qubit, werner(0.5), 0), Error);
}

TEST_CASE("Kraus path equals the superoperator path") {
  oracle::Rng rng(33);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto ch = composite_damping(u(rng), u(rng));
    const auto rho = oracle::random_state(rng, 2);
    const auto via_superop = oracle::superop_on_first_qubit(ch.superoperator(), rho.matrix());
    CHECK(max_abs_diff(apply_channel(ch, rho, 0).matrix(), via_superop) < 1e-10);
  }
}

TEST_CASE("decohered_werner_sweep") {
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);

  const auto clean = decohered_werner_sweep(0, 0, grid);
  REQUIRE(clean.size() == grid.size());
  for (const auto& pt : clean) {
    const auto want = full_report(werner(pt.w));
    CHECK(pt.report.negativity == doctest::Approx(want.negativity));
    CHECK(pt.report.discord == doctest::Approx(want.discord));
  }

  const auto noisy = decohered_werner_sweep(0.3, 0.3, grid);
  for (const auto& pt : noisy) CHECK(pt.report.nonlocality == 0.0);
  CHECK(noisy.back().report.steering ==
        doctest::Approx((0.7 * kSqrt3 - 1) / (kSqrt3 - 1)).epsilon(1e-9));

  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& d = noisy[i].report;
    const auto& c = clean[i].report;
    CHECK(d.nonlocal_coherence <= c.nonlocal_coherence + 1e-9);
    CHECK(d.discord <= c.discord + 1e-6);
    CHECK(d.negativity <= c.negativity + 1e-9);
    CHECK(d.steering <= c.steering + 1e-9);
    CHECK(d.nonlocality <= c.nonlocality + 1e-9);
  }
  CHECK_THROWS_AS(decohered_werner_sweep(0.1, 0.1, {}), Error);
}
