#pragma once

#include <vector>

#include "qwtree/phi.hpp"
#include "qwtree/residual.hpp"

namespace qwtree {

// One accepted point of the analytic branch g(r e^{i theta}).
struct BranchPoint {
  double r = 0.0;
  cd g{};
  enum class Method { Seed, Quintic, ResidualArbitrated } method = Method::Seed;
  double root_gap = 0.0;   // distance from chosen to next-nearest quintic root
  bool m_small = false;    // |M(g)| < 1e-8 flag (potential spurious factor)
};

struct BranchPath {
  double theta = 0.0;
  std::vector<BranchPoint> points;
  bool completed = false;
};

struct BranchBreakError : std::runtime_error {
  double r_fail;
  BranchBreakError(const std::string& m, double r) : std::runtime_error(m), r_fail(r) {}
};

// Continues the branch of Phi(., r e^{i theta}) = 0 with g(0) = 1 outward to
// r_max, selecting at each radius the quintic root nearest the linear
// prediction from the two previous points. Ambiguous selections (competing
// root within twice the prediction error) trigger step halving down to
// min_step, then arbitration by the residual oracle. record_radii, if
// non-empty, lists radii that must appear exactly among the points.
BranchPath continue_branch(const PhiPolynomial& phi, const CoinParams& p,
                           double theta, double r_max, int steps = 512,
                           double min_step = 1e-6,
                           const std::vector<double>& record_radii = {});

}  // namespace qwtree
