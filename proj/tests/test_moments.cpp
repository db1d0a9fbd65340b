#include <cstdlib>

#include "doctest.h"
#include "qwtree/moments.hpp"

using namespace qwtree;

TEST_CASE("pi coin moments are supported on multiples of six") {
  const auto cfg = CoinConfig::uniform(coin_pi());
  const auto m = compute_moments(TreeKind::SubtreeAB, cfg, 13);
  for (int n = 0; n <= 13; ++n) {
    const double expect = (n % 6 == 0) ? 1.0 : 0.0;
    CHECK(std::abs(m.mu[n] - expect) < 1e-14);
  }
  // The orbit route gives the same sequence.
  const auto orb = orbit_moments(TreeKind::SubtreeAB, cfg, 13);
  REQUIRE(orb.has_value());
  for (int n = 0; n <= 13; ++n) CHECK(std::abs(m.mu[n] - orb->mu[n]) < 1e-14);
}

TEST_CASE("identity coin never returns") {
  const auto m = compute_moments(TreeKind::SubtreeAB,
                                 CoinConfig::uniform(coin_identity()), 12);
  CHECK(std::abs(m.mu[0] - 1.0) < 1e-15);
  for (int n = 1; n <= 12; ++n) CHECK(std::abs(m.mu[n]) < 1e-15);
}

TEST_CASE("orbit route declines non-permutation coins") {
  CHECK_FALSE(orbit_moments(TreeKind::SubtreeAB,
                            CoinConfig::uniform(co_plus(0.9)), 8)
                  .has_value());
}

TEST_CASE("moment sequence is a positive-definite-like sequence") {
  const auto m = compute_moments(TreeKind::SubtreeAB,
                                 CoinConfig::uniform(co_plus(0.9)), 12);
  CHECK(std::abs(m.mu[0] - 1.0) < 1e-14);
  for (int n = 1; n <= 12; ++n) CHECK(std::abs(m.mu[n]) < 1.0 + 1e-14);
}

TEST_CASE("memory budget error carries the feasible maximum") {
  try {
    compute_moments(TreeKind::SubtreeAB, CoinConfig::uniform(co_plus(0.9)), 40,
                    0.0, 1 << 16);
    FAIL("expected MemoryBudgetError");
  } catch (const MemoryBudgetError& e) {
    CHECK(e.max_feasible_n < 40);
    CHECK(e.max_feasible_n >= 0);
  }
}

TEST_CASE("series evaluation and tail bound") {
  const auto m = compute_moments(TreeKind::SubtreeAB,
                                 CoinConfig::uniform(coin_pi()), 20);
  double tail = 0.0;
  const cd z{0.5, 0.0};
  const cd g = g_series(m, z, &tail);
  // Exact g for the period-6 orbit: 1/(1-z^6).
  const cd exact = 1.0 / (1.0 - std::pow(z, 6));
  CHECK(std::abs(g - exact) <= tail + 1e-15);
  CHECK(tail == doctest::Approx(std::pow(0.5, 21) / 0.5));
}
