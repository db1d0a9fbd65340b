#include "qwtree/polyroots.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace qwtree {

void poly_eval(const std::vector<cd>& coeffs, cd w, cd* p, cd* dp) {
  cd v{0.0, 0.0}, d{0.0, 0.0};
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    d = d * w + v;
    v = v * w + coeffs[i];
  }
  if (p) *p = v;
  if (dp) *dp = d;
}

PolyRoots poly_roots(const std::vector<cd>& coeffs, double eps_lead) {
  double scale = 0.0;
  for (const cd& c : coeffs) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) throw ZeroPolynomialError("all coefficients vanish");

  std::vector<cd> c = coeffs;
  PolyRoots out;
  while (c.size() > 1 && std::abs(c.back()) < eps_lead * scale) {
    c.pop_back();
    ++out.degree_drop;
  }
  const int deg = static_cast<int>(c.size()) - 1;
  if (deg <= 0) return out;
  if (deg == 1) {
    out.roots = {-c[0] / c[1]};
    return out;
  }

  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -c[i] / c[deg];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, /*computeEigenvectors=*/false);

  out.roots.resize(deg);
  for (int i = 0; i < deg; ++i) {
    cd w = es.eigenvalues()(i);
    for (int it = 0; it < 6; ++it) {
      cd p, dp;
      poly_eval(c, w, &p, &dp);
      if (std::abs(p) < 1e-15 * scale) break;
      if (std::abs(dp) < 1e-300) break;
      cd step = p / dp;
      // Damp steps so a near-multiple root does not throw the iterate away.
      const double cap = 0.5 * (1.0 + std::abs(w));
      if (std::abs(step) > cap) step *= cap / std::abs(step);
      w -= step;
    }
    out.roots[i] = w;
  }
  std::sort(out.roots.begin(), out.roots.end(), [](cd a, cd b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

}  // namespace qwtree
