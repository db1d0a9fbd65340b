#include <numbers>

#include "doctest.h"
#include "qwtree/coin.hpp"

using namespace qwtree;
using namespace std::complex_literals;

TEST_CASE("eigenphase construction is unitary and round-trips") {
  const CirculantCoin C = coin_from_eigenphases(0.3, -1.1, 2.4);
  CHECK(C.is_unitary());
  const auto lam = C.eigenvalues();
  CHECK(std::abs(lam[0] - std::polar(1.0, 0.3)) < 1e-14);
  CHECK(std::abs(lam[1] - std::polar(1.0, -1.1)) < 1e-14);
  CHECK(std::abs(lam[2] - std::polar(1.0, 2.4)) < 1e-14);
}

TEST_CASE("orthogonal branches") {
  const double pi = std::numbers::pi;
  // CO+ passes through the identity and the cyclic flip.
  CHECK(std::abs(co_plus(pi / 6).c0 - 1.0) < 1e-15);
  CHECK(std::abs(co_plus(3 * pi / 2).c2 - 1.0) < 1e-15);
  for (double t : {0.4, 1.3, 2.9}) {
    const CirculantCoin P = co_plus(t);
    CHECK(P.is_unitary());
    for (double r : orthogonal_identity_residuals(P)) CHECK(r < 1e-12);
    // The -1 branch satisfies them after negating all three entries.
    const CirculantCoin M = co_minus(t);
    CHECK(M.is_unitary());
    const CirculantCoin partner = coin_from_entries(-M.c0, -M.c1, -M.c2);
    for (double r : orthogonal_identity_residuals(partner)) CHECK(r < 1e-12);
  }
}

TEST_CASE("degenerate classification") {
  CHECK(degenerate_kind(coin_identity()).kind == DegenerateVerdict::Kind::Identity);
  CHECK(degenerate_kind(coin_sigma()).kind == DegenerateVerdict::Kind::Sigma);
  CHECK(degenerate_kind(coin_pi()).kind == DegenerateVerdict::Kind::Pi);
  CHECK_FALSE(degenerate_kind(co_plus(0.9)).degenerate);
  const auto phased = parse_coin_spec("phase:0.7:pi");
  const auto v = degenerate_kind(phased);
  CHECK(v.kind == DegenerateVerdict::Kind::Pi);
  CHECK(std::abs(v.phase - std::polar(1.0, 0.7)) < 1e-14);
}

TEST_CASE("spec parsing") {
  CHECK(std::abs(parse_coin_spec("id").c0 - 1.0) < 1e-15);
  CHECK(std::abs(parse_coin_spec("sigma").c1 - 1.0) < 1e-15);
  CHECK(std::abs(parse_coin_spec("pi").c2 - 1.0) < 1e-15);
  const auto C = parse_coin_spec("circ:0+0i,0-0i,1+0i");
  CHECK(std::abs(C.c2 - 1.0) < 1e-15);
  const auto E = parse_coin_spec("eig:0.3,-1.1,2.4");
  CHECK(std::abs(E.eigenvalues()[2] - std::polar(1.0, 2.4)) < 1e-14);
  CHECK_THROWS(parse_coin_spec("bogus:1"));
  CHECK_THROWS_AS(parse_coin_spec("circ:1,1,0"), NonUnitaryCoinError);
}

TEST_CASE("root coin at theta zero is the cyclic flip") {
  CHECK((root_coin_matrix(0.0) - coin_pi().matrix()).norm() < 1e-15);
  // Unitary at every angle.
  const auto M = root_coin_matrix(0.37);
  CHECK((M * M.adjoint() - Eigen::Matrix3cd::Identity()).norm() < 1e-14);
}
