#include <numbers>

#include "doctest.h"
#include "qwtree/spectral.hpp"
#include "qwtree/verify.hpp"

using namespace qwtree;

TEST_CASE("point mass detects the pi coin atoms") {
  const double pi = std::numbers::pi;
  const auto at_zero = point_mass(coin_pi(), 0.0);
  CHECK(at_zero.converged);
  CHECK(at_zero.weight == doctest::Approx(1.0 / 6.0).epsilon(1e-5));
  const auto between = point_mass(coin_pi(), pi / 6.0);
  CHECK(std::abs(between.weight) < 1e-6);
}

TEST_CASE("orthogonal coins carry no atoms") {
  const auto scan = atom_scan(co_plus(std::numbers::pi / 2));
  CHECK(scan.atoms.empty());
  REQUIRE(!scan.candidates.empty());
  for (const auto& c : scan.candidates) CHECK(c.weight.real() < 0.0);
}

TEST_CASE("density profile normalizes on a coarse grid") {
  const auto prof = density_profile(co_plus(std::numbers::pi / 2), 256);
  CHECK(std::abs(prof.normalization - 1.0) < 5e-3);
  for (const auto& p : prof.points) CHECK(p.w > -1e-6);
}

TEST_CASE("special spectrum of the glued pi walk") {
  const auto sp = special_case_spectrum(TreeKind::FullA, coin_pi(), 0.0);
  CHECK_FALSE(sp.orbit_open);
  CHECK(sp.deep_period == 6);
  CHECK(sp.root_block_closed);
  REQUIRE(sp.essential_points.size() == 6);
  for (cd lam : sp.essential_points) CHECK(std::abs(std::pow(lam, 6) - 1.0) < 1e-10);
  for (cd lam : sp.root_block_eigenvalues) CHECK(std::abs(std::pow(lam, 6) - 1.0) < 1e-10);
}

TEST_CASE("identity coin walks away") {
  const auto sp = special_case_spectrum(TreeKind::SubtreeAB, coin_identity());
  CHECK(sp.orbit_open);
}

TEST_CASE("g evaluator routes agree at small radius") {
  const CirculantCoin C = co_plus(0.9);
  const GEvaluator ge(TreeKind::SubtreeAB, C);
  const cd z{0.25, 0.15};
  const cd g = ge.at(z);
  CHECK(std::abs(ge.phi().eval(g, z)) < 1e-8);
}

TEST_CASE("fast verification suite passes") {
  const auto reports = run_suite(true, 42);
  for (const auto& r : reports) {
    INFO(r.id, " residual ", r.residual, " tol ", r.tolerance);
    CHECK(r.status != CheckReport::Status::Fail);
  }
  CHECK(all_passed(reports));
}
