#include "qwtree/residual.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace qwtree {

cd residual_rho(const CoinParams& p, cd g, cd z) {
  const cd a = p.alpha, b = p.beta, c = p.gamma;
  const AuxPolys aux(p);
  const cd M = aux.M(g), P = aux.P(g);
  const cd G11 = (g - 1.0) / z;

  // Unknowns u = (G13, G14, G15, G16); rows: the even-entry reductions
  // P G14 = z M G13, P G16 = z M G15, and two of the three coupled odd rows.
  Eigen::Matrix4cd A;
  A << -z * M, P, cd{}, cd{},
       c, -z, b + 1.0, cd{},
       b + 1.0, cd{}, a, cd{},
       cd{}, cd{}, -z * M, P;
  Eigen::Vector4cd rhs;
  rhs << cd{}, -a * G11, z * g - c * G11, cd{};
  const Eigen::Vector4cd u = A.completeOrthogonalDecomposition().solve(rhs);
  // Remaining odd row: (b+1) G11 + c G15 + a G13 - z G16.
  return (b + 1.0) * G11 + c * u(2) + a * u(0) - z * u(3);
}

ResidualSolve residual_solve(const CoinParams& p, cd z, cd seed, int max_iter,
                             double tol) {
  ResidualSolve out;
  cd g = seed;
  for (int it = 1; it <= max_iter; ++it) {
    out.iterations = it;
    const cd r = residual_rho(p, g, z);
    const double h = 1e-7 * (1.0 + std::abs(g));
    const cd dr = (residual_rho(p, g + h, z) - r) / h;
    if (std::abs(dr) < 1e-300) break;
    cd step = -r / dr;
    const double cap = 0.5 * (1.0 + std::abs(g));
    if (std::abs(step) > cap) step *= cap / std::abs(step);
    g += step;
    if (std::abs(step) < tol * (1.0 + std::abs(g))) {
      out.converged = true;
      break;
    }
  }
  out.g = g;
  out.rho = std::abs(residual_rho(p, g, z));
  out.converged = out.converged || out.rho < 1e-10;
  return out;
}

}  // namespace qwtree
