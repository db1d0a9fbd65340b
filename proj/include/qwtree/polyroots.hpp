#pragma once

#include <complex>
#include <vector>

namespace qwtree {

using cd = std::complex<double>;

struct PolyRoots {
  std::vector<cd> roots;
  int degree_drop = 0;  // leading coefficients removed as numerically zero
};

struct ZeroPolynomialError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Roots of sum_k coeffs[k] w^k. Leading coefficients below
// eps_lead * max|coeff| are deflated (counted in degree_drop); the remaining
// polynomial is rescaled monic, solved through the eigenvalues of its
// companion matrix and polished by damped Newton steps.
PolyRoots poly_roots(const std::vector<cd>& coeffs, double eps_lead = 1e-11);

// Evaluates p and p' at w (Horner).
void poly_eval(const std::vector<cd>& coeffs, cd w, cd* p, cd* dp);

}  // namespace qwtree
