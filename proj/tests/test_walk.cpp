#include <random>

#include "doctest.h"
#include "qwtree/walk.hpp"

using namespace qwtree;

namespace {

StateVector random_state(const LevelLayout& lay, int support, unsigned seed) {
  StateVector psi = StateVector::zero(lay);
  std::mt19937 rng(seed);
  std::normal_distribution<double> dist;
  const std::size_t end = lay.level_offset(support + 1);
  for (std::size_t i = 0; i < end; ++i) psi.amp[i] = cd(dist(rng), dist(rng));
  psi.support_depth = support;
  const double n = psi.norm();
  for (auto& a : psi.amp) a /= n;
  return psi;
}

}  // namespace

TEST_CASE("unitarity inside the light cone") {
  for (TreeKind kind : {TreeKind::SubtreeAB, TreeKind::FullA}) {
    const CirculantCoin C = coin_from_eigenphases(0.5, 1.9, -0.8);
    const WalkOperator U(kind, CoinConfig::uniform(C), 8, 0.3);
    StateVector psi = random_state(U.layout(), 4, 7);
    const StateVector Upsi = U.apply(psi);
    CHECK(std::abs(Upsi.norm() - 1.0) < 1e-13);
    CHECK(Upsi.boundary_leak == 0.0);
    // U* U = 1 on states away from the truncation frontier.
    const StateVector back = U.apply_adjoint(Upsi);
    cd overlap = inner(back, psi);
    CHECK(std::abs(overlap - 1.0) < 1e-13);
  }
}

TEST_CASE("adjointness") {
  const CirculantCoin C = co_plus(1.1);
  const WalkOperator U(TreeKind::SubtreeAB, CoinConfig::uniform(C), 8);
  const StateVector x = random_state(U.layout(), 4, 11);
  const StateVector y = random_state(U.layout(), 4, 13);
  // <x, U y> == <U* x, y>
  const cd lhs = inner(x, U.apply(y));
  const cd rhs = inner(U.apply_adjoint(x), y);
  CHECK(std::abs(lhs - rhs) < 1e-13);
}

TEST_CASE("frontier guard") {
  const CirculantCoin C = co_plus(1.1);
  const WalkOperator U(TreeKind::SubtreeAB, CoinConfig::uniform(C), 3);
  StateVector psi = random_state(U.layout(), 3, 5);
  CHECK_THROWS_AS(U.apply(psi), FrontierError);
}

TEST_CASE("pi coin root orbit closes with period six") {
  const WalkOperator U(TreeKind::SubtreeAB, CoinConfig::uniform(coin_pi()), 8);
  const auto rep = orbit_trace(U, root_vertex(), stored_root_letter(TreeKind::SubtreeAB, 0));
  CHECK(rep.closed);
  CHECK(rep.period == 6);
  CHECK(std::abs(rep.phase - 1.0) < 1e-14);
  CHECK(rep.max_depth == 2);
}

TEST_CASE("global phase multiplies the orbit phase") {
  const WalkOperator U(TreeKind::SubtreeAB,
                       CoinConfig::with_phase(coin_pi(), 0.4), 8);
  const auto rep = orbit_trace(U, root_vertex(), stored_root_letter(TreeKind::SubtreeAB, 0));
  REQUIRE(rep.closed);
  // Five bulk coin applications carry the phase; the root coin is fixed.
  CHECK(std::abs(std::abs(rep.phase) - 1.0) < 1e-14);
  CHECK(rep.period == 6);
}

TEST_CASE("non-permutation coins are rejected by the orbit tracer") {
  const WalkOperator U(TreeKind::SubtreeAB, CoinConfig::uniform(co_plus(0.9)), 8);
  CHECK_THROWS_AS(
      orbit_trace(U, root_vertex(), stored_root_letter(TreeKind::SubtreeAB, 0)),
      NotPermutationError);
}
