#include <random>

#include "doctest.h"
#include "qwtree/moments.hpp"
#include "qwtree/phi.hpp"
#include "qwtree/residual.hpp"

using namespace qwtree;

TEST_CASE("coefficient table reproduces the determinant") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> ang(-3.0, 3.0);
  for (int trial = 0; trial < 5; ++trial) {
    const CirculantCoin C = coin_from_eigenphases(ang(rng), ang(rng), ang(rng));
    const CoinParams p(C);
    const PhiPolynomial phi = phi_canonical(p);
    for (cd g : {cd{0.2, 0.7}, cd{-1.1, 0.3}}) {
      for (cd z : {cd{0.4, -0.2}, cd{0.1, 0.8}}) {
        CHECK(std::abs(phi.eval(g, z) - phi_determinant(p, g, z)) < 1e-12);
      }
    }
  }
}

TEST_CASE("series solution satisfies the quintic") {
  const CirculantCoin C = co_plus(0.9);
  const PhiPolynomial phi = phi_canonical(CoinParams(C));
  const auto m = compute_moments(TreeKind::SubtreeAB, CoinConfig::uniform(C), 20);
  for (cd z : {cd{0.3, 0.1}, cd{0.0, 0.45}, cd{-0.5, 0.0}}) {
    double tail = 0.0;
    const cd g = g_series(m, z, &tail);
    CHECK(std::abs(phi.eval(g, z)) < 20.0 * tail + 1e-10);
  }
}

TEST_CASE("identity coin collapses the quintic at g = 1") {
  const PhiPolynomial phi = phi_canonical(CoinParams(coin_identity()));
  for (cd z : {cd{0.3, 0.2}, cd{0.7, -0.1}}) {
    CHECK(std::abs(phi.eval(cd{1.0, 0.0}, z)) < 1e-14);
  }
}

TEST_CASE("orthogonal table equals the canonical one up to a global sign") {
  for (double t : {0.4, 1.3, 2.9}) {
    const CirculantCoin C = co_plus(t);
    const PhiPolynomial can = phi_canonical(CoinParams(C));
    const PhiPolynomial orth = phi_orthogonal_for(C);
    for (int j = 0; j < 6; ++j)
      for (int k = 0; k < 4; ++k)
        CHECK(std::abs(can.c[j][k] + orth.c[j][k]) < 1e-12);
  }
}

TEST_CASE("published expanded coefficients match for j = 1, 2, 3") {
  const CoinParams p(co_plus(0.7));
  const PhiPolynomial can = phi_canonical(p);
  for (int j = 1; j <= 3; ++j) {
    for (cd x : {cd{0.2, 0.1}, cd{-0.4, 0.6}}) {
      CHECK(std::abs(can.coeff(j, x) + phi_printed_coeff(p, j, x)) < 1e-12);
    }
  }
}

TEST_CASE("residual oracle agrees with the series") {
  const CirculantCoin C = co_minus(2.1);
  const CoinParams p(C);
  const auto m = compute_moments(TreeKind::SubtreeAB, CoinConfig::uniform(C), 20);
  for (cd z : {cd{0.2, 0.3}, cd{-0.4, 0.1}}) {
    double tail = 0.0;
    const cd g = g_series(m, z, &tail);
    const auto sol = residual_solve(p, z, g);
    CHECK(sol.converged);
    CHECK(std::abs(sol.g - g) < tail + 1e-8);
  }
}

TEST_CASE("quintic roots contain the physical branch") {
  const CirculantCoin C = co_plus(1.7);
  const PhiPolynomial phi = phi_canonical(CoinParams(C));
  const auto m = compute_moments(TreeKind::SubtreeAB, CoinConfig::uniform(C), 20);
  const cd z{0.35, 0.1};
  double tail = 0.0;
  const cd g = g_series(m, z, &tail);
  const auto roots = quintic_roots(phi, z);
  double best = 1e9;
  for (cd r : roots.roots) best = std::min(best, std::abs(r - g));
  CHECK(best < 10.0 * tail + 1e-9);
}
