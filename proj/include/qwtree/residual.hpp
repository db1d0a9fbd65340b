#pragma once

#include "qwtree/phi.hpp"

namespace qwtree {

// Value of the analytic leftover rho(g): with g fixed, four of the five
// linear relations among the root resolvent entries (G13, G14, G15, G16)
// are solved in the least-squares sense (minimal-norm solution, so the
// degenerate-coin cases where the system loses rank stay well defined);
// rho is the residual of the remaining relation. rho(g(z)) = 0.
cd residual_rho(const CoinParams& p, cd g, cd z);

struct ResidualSolve {
  cd g{};
  double rho = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Damped Newton on rho(., z) from the given seed.
ResidualSolve residual_solve(const CoinParams& p, cd z, cd seed,
                             int max_iter = 60, double tol = 1e-13);

}  // namespace qwtree
