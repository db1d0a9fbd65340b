#pragma once

#include <array>
#include <vector>

#include "qwtree/coin.hpp"
#include "qwtree/polyroots.hpp"

namespace qwtree {

// Coin parameters entering the implicit equation: alpha = c0, gamma = c1,
// beta = c2 - 1.
struct CoinParams {
  cd alpha{}, beta{}, gamma{};
  CoinParams() = default;
  CoinParams(cd a, cd b, cd g) : alpha(a), beta(b), gamma(g) {}
  explicit CoinParams(const CirculantCoin& C)
      : alpha(C.alpha()), beta(C.beta()), gamma(C.gamma()) {}
};

// Auxiliary polynomials in g:
//   M(g) = (beta^2 - alpha gamma) g^2 + 2 beta g + 1
//   K(g) = 2 alpha gamma g + (2 alpha beta gamma - gamma^3 - alpha^3) g^2
//   P(g) = (e3 + d) g^2 + 2 (beta(beta+1) - alpha gamma) g + (beta+1),
// with e3 = alpha^3+beta^3+gamma^3-3 alpha beta gamma, d = beta^2-alpha gamma;
// they satisfy P = M (D + 1) with D = beta - K/M.
struct AuxPolys {
  CoinParams p;
  explicit AuxPolys(const CoinParams& cp) : p(cp) {}
  cd M(cd g) const;
  cd K(cd g) const;
  cd P(cd g) const;
  cd D(cd g) const { return P(g) / M(g) - 1.0; }
};

// The implicit equation Phi(g, z) = sum_{j=0}^{5} c_j(z^2) g^j = 0 satisfied
// by the Caratheodory transform g on the half-tree, stored as the 6x4
// coefficient table of the c_j (polynomials of degree <= 3 in x = z^2).
struct PhiPolynomial {
  enum class Source { Canonical, Orthogonal };
  // c[j][k]: coefficient of g^j x^k.
  std::array<std::array<cd, 4>, 6> c{};
  Source source = Source::Canonical;

  cd coeff(int j, cd x) const;                 // c_j(x)
  std::vector<cd> coeff_poly(int j) const;     // x-coefficients of c_j
  std::vector<cd> poly_in_g(cd z) const;       // {c_0(z^2), ..., c_5(z^2)}
  cd eval(cd g, cd z) const;
};

// Ground-truth quintic: the determinant of the 3x3 linear system relating
// the root resolvent entries, expanded into the coefficient table by
// interpolation on a 6x4 grid of (g, x) nodes. Exact for the true degrees
// (<= 5 in g, <= 3 in x), accurate to ~1e-12 relative.
PhiPolynomial phi_canonical(const CoinParams& p);

// Determinant evaluation itself (before interpolation): det/(z^2) at (g, z).
cd phi_determinant(const CoinParams& p, cd g, cd z);

// Published closed forms, kept verbatim for the transcription audit.
// General expanded coefficient c_j(x) as printed (note: deg in x exceeds 3
// for some printed c_j, hence evaluator form instead of a table).
cd phi_printed_coeff(const CoinParams& p, int j, cd x);
cd phi_printed_eval(const CoinParams& p, cd g, cd z);
// Factored product form of Phi as printed.
cd phi_factored_eval(const CoinParams& p, cd g, cd z);

// Orthogonal-family coefficient table (real beta, gamma of a CO+ coin).
PhiPolynomial phi_orthogonal(cd beta, cd gamma);
// Same, resolving the CO- branch through the substitution
// (alpha,beta,gamma) -> (-alpha,-beta-2,-gamma); note that for a CO- coin
// this is the table of its CO+ partner -C, not of C itself.
PhiPolynomial phi_orthogonal_for(const CirculantCoin& C);

// All roots g of Phi(., z) = 0.
PolyRoots quintic_roots(const PhiPolynomial& phi, cd z);

// Candidate spectrum atoms: unit-circle roots x0 = e^{2 i theta0} of c_5,
// with the closed-form weight
//   simple root:  w = c_4(x0) / (x0 c_5'(x0))
//   double root:  w = c_4'(x0) / (x0 c_5''(x0)).
// An actual atom requires w real and positive.
struct AtomCandidate {
  cd x0{};
  double theta0 = 0.0;  // atoms come in pairs theta0, theta0 + pi
  int multiplicity = 1;
  cd weight{};
};
std::vector<AtomCandidate> c5_circle_roots(const PhiPolynomial& phi,
                                           double circle_tol = 1e-8,
                                           double cluster_tol = 1e-6);

}  // namespace qwtree
