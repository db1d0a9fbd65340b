#include "qwtree/branch.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace qwtree {

namespace {

struct Selection {
  cd g{};
  double gap = 0.0;
  bool ambiguous = false;
  bool ok = false;
};

Selection select_root(const PhiPolynomial& phi, cd z, cd pred) {
  Selection sel;
  PolyRoots roots;
  try {
    roots = quintic_roots(phi, z);
  } catch (const ZeroPolynomialError&) {
    return sel;
  }
  if (roots.roots.empty()) return sel;
  double d1 = 1e300, d2 = 1e300;
  for (const cd& w : roots.roots) {
    const double d = std::abs(w - pred);
    if (d < d1) {
      d2 = d1;
      d1 = d;
      sel.g = w;
    } else if (d < d2) {
      d2 = d;
    }
  }
  sel.ok = true;
  sel.gap = d2 - d1;
  sel.ambiguous = (d2 < 2.0 * d1) || d1 > 0.3;
  return sel;
}

}  // namespace

BranchPath continue_branch(const PhiPolynomial& phi, const CoinParams& p,
                           double theta, double r_max, int steps, double min_step,
                           const std::vector<double>& record_radii) {
  if (r_max <= 0.0 || r_max >= 1.0)
    throw std::invalid_argument("r_max must lie in (0,1)");
  std::set<double> targets;
  for (int i = 1; i <= steps; ++i) targets.insert(r_max * i / steps);
  for (double r : record_radii)
    if (r > 0.0 && r <= r_max) targets.insert(r);

  BranchPath path;
  path.theta = theta;
  path.points.push_back({0.0, cd{1.0, 0.0}, BranchPoint::Method::Seed, 0.0, false});
  const AuxPolys aux(p);

  double r0 = 0.0, rm1 = 0.0;
  cd g0{1.0, 0.0}, gm1{1.0, 0.0};

  auto accept = [&](double r, cd g, BranchPoint::Method m, double gap) {
    rm1 = r0;
    gm1 = g0;
    r0 = r;
    g0 = g;
    path.points.push_back({r, g, m, gap, std::abs(aux.M(g)) < 1e-8});
  };

  // Iterative bisection: pending radii to reach, nearest first on top.
  std::vector<double> pending(targets.rbegin(), targets.rend());
  while (!pending.empty()) {
    const double rt = pending.back();
    const cd z = std::polar(rt, theta);
    const cd slope = (r0 > rm1) ? (g0 - gm1) / (r0 - rm1) : cd{0.0, 0.0};
    const cd pred = g0 + slope * (rt - r0);
    const Selection sel = select_root(phi, z, pred);
    if (sel.ok && !sel.ambiguous) {
      pending.pop_back();
      accept(rt, sel.g, BranchPoint::Method::Quintic, sel.gap);
      continue;
    }
    if (rt - r0 > min_step) {
      pending.push_back(0.5 * (r0 + rt));
      continue;
    }
    // At minimal step: let the independent residual system arbitrate.
    const ResidualSolve rs = residual_solve(p, z, pred);
    if (!rs.converged)
      throw BranchBreakError("branch continuation failed at r=" + std::to_string(rt) +
                                 " theta=" + std::to_string(theta),
                             rt);
    cd g = rs.g;
    if (sel.ok && std::abs(sel.g - rs.g) < 1e-6) g = sel.g;
    pending.pop_back();
    accept(rt, g, BranchPoint::Method::ResidualArbitrated, sel.ok ? sel.gap : 0.0);
  }
  path.completed = true;
  return path;
}

}  // namespace qwtree
