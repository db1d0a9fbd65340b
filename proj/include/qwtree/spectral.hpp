#pragma once

#include <optional>
#include <vector>

#include "qwtree/branch.hpp"
#include "qwtree/moments.hpp"
#include "qwtree/phi.hpp"

namespace qwtree {

// Radial limit schedule r_k = 1 - 2^{-k}.
std::vector<double> radial_schedule(int k_min = 4, int k_max = 14);

// Density of the absolutely continuous part at angle theta:
// w(theta) = Re F(r e^{i theta}) as r -> 1, F = 2g - 1, accelerated by
// one-step Richardson extrapolation E_k = 2 w_k - w_{k-1}.
struct DensityPoint {
  double theta = 0.0;
  double w = 0.0;
  double err_estimate = 0.0;       // |E_K - E_{K-1}|
  bool singular_candidate = false;  // continuation needed arbitration / broke
};

struct DensityProfile {
  std::vector<DensityPoint> points;
  double normalization = 0.0;  // integral of w dtheta / (2 pi), should be ~1
};

// Requires a non-degenerate coin (use special_case_spectrum otherwise).
// Angles are independent; `threads` caps the worker count.
DensityProfile density_profile(const CirculantCoin& C, int n_angles = 1024,
                               int k_min = 4, int k_max = 14, int threads = 1);

// Atoms of the spectral measure: candidates are the unit-circle roots of
// c_5 of the canonical quintic; each candidate weight comes from the
// closed-form residue and is cross-checked by the radial point mass when
// requested. Only candidates with real positive weight are atoms.
struct AtomScanResult {
  std::vector<AtomCandidate> candidates;
  std::vector<AtomCandidate> atoms;  // accepted subset
};
AtomScanResult atom_scan(const CirculantCoin& C);

// Radial point mass at angle theta0: lim (1-r)/2 * F(r e^{i theta0}),
// extrapolated over the schedule. status reflects whether the sequence
// settled.
struct PointMass {
  double weight = 0.0;
  double err_estimate = 0.0;
  bool converged = false;
  std::vector<cd> sequence;  // (1-r_k)/2 * F at each schedule radius
};
PointMass point_mass(const CirculantCoin& C, double theta0, int k_min = 4,
                     int k_max = 14);

// Spectrum of the walk for phase-times-permutation coins, where the quintic
// route degenerates: the essential spectrum comes from deep closed orbits,
// the discrete part from the finite root-coupled block.
struct SpecialSpectrum {
  DegenerateVerdict verdict;
  bool orbit_open = false;            // identity-like: no return, w == 1
  int deep_period = 0;                // period of a deep orbit (6 expected)
  cd deep_phase{};                    // accumulated phase over that orbit
  std::vector<cd> essential_points;   // deep_phase^{1/p} roots: p-th roots of phase
  std::vector<cd> root_block_eigenvalues;  // discrete shadow from the root block
  bool root_block_closed = true;
};
SpecialSpectrum special_case_spectrum(TreeKind kind, const CirculantCoin& C,
                                      double theta = 0.0);

// g(z) evaluator combining the three routes: exact series inside |z| <= 0.6,
// branch continuation (non-degenerate) or residual Newton chain outward.
class GEvaluator {
 public:
  GEvaluator(TreeKind kind, const CirculantCoin& C, int series_moments = 20);

  cd at(cd z) const;  // |z| < 1
  const PhiPolynomial& phi() const { return phi_; }
  const CoinParams& params() const { return params_; }
  bool degenerate() const { return degenerate_; }

 private:
  CoinParams params_;
  PhiPolynomial phi_;
  MomentSequence mu_;
  bool degenerate_ = false;
};

}  // namespace qwtree
