#pragma once

#include <string>
#include <vector>

#include "qwtree/spectral.hpp"

namespace qwtree {

struct CheckReport {
  std::string id;
  enum class Status { Pass, Fail, Skip } status = Status::Pass;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string ref;   // which closed-form identity is under test
  std::string note;  // free-form details (audit maps, skip reasons)
};

// The closed 6x6 restricted resolvent of the pi-collar walk: the span of the
// six root-collar slots is invariant for any unitary bulk coin, and
// (R - z)^{-1} has entries z^{(5+k-i) mod 6} / (1 - z^6).
CheckReport collar_resolvent_check(const Eigen::Matrix3cd& bulk, const std::vector<cd>& zs);

// Moment sequences of the two half-trees coincide (circulant coins commute
// with the relabeling conjugation).
CheckReport subtree_equivalence_check(const CirculantCoin& C, int N);

// Every interior basis slot of the depth-truncated half-tree receives
// amplitude from some power U^j phi, |j| <= 2 depth + 3 (cyclicity of the
// root vector for coins with no zero entry).
CheckReport cyclicity_probe(const CirculantCoin& C, int depth);

// Block-diagonality at theta = 0, the finite root-coupled block at general
// theta for the pi coin, and the 2-dim sigma block.
std::vector<CheckReport> invariant_subspace_checks();

// Closed-form identity battery: orthogonal-manifold identities, coefficient
// table comparisons (with per-coefficient audit of the published expanded
// forms), Phi(1,x) = 0 at the identity coin, evenness g(z) = g(-z),
// reality g(z) = conj(g(conj z)) for orthogonal coins, and three-route
// agreement on series sample points.
std::vector<CheckReport> identity_battery(unsigned seed, bool fast);

// Whole suite. Deterministic for a fixed seed.
std::vector<CheckReport> run_suite(bool fast, unsigned seed);

std::string report_table(const std::vector<CheckReport>& reports, unsigned seed);
std::string report_json(const std::vector<CheckReport>& reports, unsigned seed);
bool all_passed(const std::vector<CheckReport>& reports);

std::string version_string();

}  // namespace qwtree
