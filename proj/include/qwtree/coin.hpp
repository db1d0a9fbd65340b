#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <string>

#include "qwtree/letters.hpp"

namespace qwtree {

using cd = std::complex<double>;

// Circulant 3x3 coin circ(c0,c1,c2), column j of the matrix being the
// cyclic shift of (c0,c1,c2) by j. Unitary iff all three eigenvalues
// lambda_k = c0 + eps^k c1 + eps^{2k} c2 (eps = e^{2 pi i/3}) lie on the
// unit circle.
struct CirculantCoin {
  cd c0{}, c1{}, c2{};

  // Parameters used throughout the implicit-equation machinery.
  cd alpha() const { return c0; }
  cd gamma() const { return c1; }
  cd beta() const { return c2 - 1.0; }

  Eigen::Matrix3cd matrix() const;
  std::array<cd, 3> eigenvalues() const;
  bool is_unitary(double tol = 1e-10) const;
};

struct NonUnitaryCoinError : std::runtime_error {
  std::array<double, 3> eigenvalue_moduli;
  explicit NonUnitaryCoinError(const std::array<double, 3>& m);
};

// Validates unitarity; throws NonUnitaryCoinError carrying the moduli.
CirculantCoin coin_from_entries(cd c0, cd c1, cd c2, double tol = 1e-10);

// Unitary circulant with eigenvalues e^{i theta_k} on the eps^k eigenvectors.
CirculantCoin coin_from_eigenphases(double th0, double th1, double th2);

// Real orthogonal one-parameter families CO+-(t), the two branches of
// Circ(3) n O(3):
//   c(t) = (s + sin t + sqrt3 cos t, s + sin t - sqrt3 cos t, s - 2 sin t)/3
// with s = +1 (det +1 branch, contains the identity at t = pi/6 and C_pi at
// t = 3pi/2) resp. s = -1.
CirculantCoin co_plus(double t);
CirculantCoin co_minus(double t);

// Whether C is a phase times a permutation matrix (identity, C_sigma or
// C_pi); exactly one entry modulus ~1, per the zero-entry rigidity of
// unitary circulants.
struct DegenerateVerdict {
  bool degenerate = false;
  enum class Kind { None, Identity, Sigma, Pi } kind = Kind::None;
  cd phase{1.0, 0.0};
};
DegenerateVerdict degenerate_kind(const CirculantCoin& C, double tol = 1e-12);

// Whether C lies on the real orthogonal manifold Circ(3) n O(3) (one of the
// two CO branches).
bool is_real_orthogonal(const CirculantCoin& C, double tol = 1e-12);

// Moduli of the five polynomial identities in (alpha,beta,gamma) that hold
// on CO+(3):
//   alpha + beta + gamma
//   alpha gamma - beta (beta + 1)
//   alpha^2 + beta^2 + gamma^2 + 2 beta
//   gamma^2 - alpha (beta + 1) - gamma
//   alpha^3 + beta^3 + gamma^3 - 3 alpha beta gamma
// All vanish on CO+; on CO- they vanish after the substitution
// (alpha, beta, gamma) -> (-alpha, -beta-2, -gamma).
std::array<double, 5> orthogonal_identity_residuals(const CirculantCoin& C);

// Named degenerate coins.
CirculantCoin coin_identity();
CirculantCoin coin_sigma();  // C_sigma = circ(0,1,0)
CirculantCoin coin_pi();     // C_pi    = circ(0,0,1)

// Root coin of the glued tree at angle theta (theta = 0 gives C_pi).
Eigen::Matrix3cd root_coin_matrix(double theta);

// Parses a coin spec string:
//   id | sigma | pi | phase:<delta>:<base> | circ:<c0>,<c1>,<c2>
//   | eig:<th0>,<th1>,<th2> | co+:<t> | co-:<t>
// Complex literals use the form <re>, <re>+<im>i or <re>-<im>i.
CirculantCoin parse_coin_spec(const std::string& spec);

std::string coin_spec_string(const CirculantCoin& C);

}  // namespace qwtree
