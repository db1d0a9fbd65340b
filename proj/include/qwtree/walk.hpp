#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <optional>
#include <vector>

#include "qwtree/coin.hpp"
#include "qwtree/tree_index.hpp"

namespace qwtree {

// Truncated state in the flat level-major layout. support_depth tracks the
// deepest level that may hold nonzero amplitudes, so one application of the
// walk touches only the light cone.
struct StateVector {
  LevelLayout layout;
  std::vector<cd> amp;
  int support_depth = 0;
  double boundary_leak = 0.0;  // |amplitude|^2 dropped at tree boundary

  static StateVector zero(const LevelLayout& lay);
  // The cyclic vector: the stored root component on coin letter 'a'
  // (half-trees store one root amplitude, FullA stores two; the cyclic
  // vector sits in the first).
  static StateVector root_state(const LevelLayout& lay);

  double norm() const;
};

cd inner(const StateVector& x, const StateVector& y);  // conj-linear in x

struct FrontierError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Coin assignment away from the root. pi_collar_depth = 2 puts C_pi on all
// vertices with word length <= 3; global_phase multiplies the bulk coin only.
struct CoinConfig {
  Eigen::Matrix3cd bulk = Eigen::Matrix3cd::Identity();
  int pi_collar_depth = 0;
  double global_phase = 0.0;

  static CoinConfig uniform(const CirculantCoin& C) {
    return {C.matrix(), 0, 0.0};
  }
  static CoinConfig uniform(const Eigen::Matrix3cd& C) { return {C, 0, 0.0}; }
  static CoinConfig pi_collar(const Eigen::Matrix3cd& C) { return {C, 2, 0.0}; }
  static CoinConfig with_phase(const CirculantCoin& C, double delta) {
    return {C.matrix(), 0, delta};
  }
};

// U = S (I (x) C) on the selected tree. The root coin is C_pi for the
// half-trees and the theta-dependent gluing coin for FullA (theta = 0
// reproduces the block-diagonal case).
class WalkOperator {
 public:
  WalkOperator(TreeKind kind, CoinConfig cfg, int depth_cap, double theta = 0.0);

  const LevelLayout& layout() const { return layout_; }
  TreeKind kind() const { return layout_.kind(); }
  double theta() const { return theta_; }
  const CoinConfig& config() const { return cfg_; }

  // Coin matrix at a vertex of the given depth (depth >= 1).
  const Eigen::Matrix3cd& coin_at(int depth) const {
    return depth <= cfg_.pi_collar_depth ? collar_ : bulk_phased_;
  }
  const Eigen::Matrix3cd& root_coin() const { return root_; }

  // Both throw FrontierError if the support would step past depth_cap.
  StateVector apply(const StateVector& psi) const;
  StateVector apply_adjoint(const StateVector& psi) const;

 private:
  LevelLayout layout_;
  CoinConfig cfg_;
  double theta_;
  Eigen::Matrix3cd bulk_phased_, collar_, root_;
};

// Orbit of a single basis state under a phase-times-permutation walk.
struct OrbitReport {
  bool closed = false;
  int period = 0;   // steps to first return to the start position
  cd phase{1.0, 0.0};  // accumulated phase over one period
  int max_depth = 0;
  std::vector<std::pair<Vertex, Letter>> path;  // start, U start, ...
};

struct NotPermutationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Follows |v (x) tau> under U for at most max_steps. Requires every coin in
// the configuration (root, collar, bulk) to be a phase times a permutation.
OrbitReport orbit_trace(const WalkOperator& U, Vertex start, Letter tau,
                        int max_steps = 4096);

// Sparse dictionary states for closure / restriction analyses that must not
// be bounded by a preallocated depth cap. Root amplitudes are keyed by their
// stored component index, deeper ones by (vertex, coin letter).
struct SparseSlot {
  Vertex v;
  Letter tau = Letter::a;
  std::size_t root_comp = 0;  // meaningful when v.depth == 0

  friend bool operator<(const SparseSlot& a, const SparseSlot& b) {
    if (a.v.depth != b.v.depth) return a.v.depth < b.v.depth;
    if (a.v.index != b.v.index) return a.v.index < b.v.index;
    if (a.root_comp != b.root_comp) return a.root_comp < b.root_comp;
    return a.tau < b.tau;
  }
};
using SparseState = std::map<SparseSlot, cd>;

// Coin letter carried by a stored root component.
Letter stored_root_letter(TreeKind kind, std::size_t comp);

// One application of U = S (I (x) C) to a sparse state; amplitudes leaving
// the tree (root exit / missing half) or landing on a non-stored root
// component accumulate into *leak.
SparseState sparse_step(const SparseState& psi, TreeKind kind,
                        const Eigen::Matrix3cd& root_coin,
                        const Eigen::Matrix3cd& bulk, int collar_depth = 0,
                        const Eigen::Matrix3cd& collar = Eigen::Matrix3cd::Identity(),
                        double* leak = nullptr);

// Operator-norm style bound check: max over probe states of
// ||(U(C) - U(C')) psi|| vs ||C - C'||_2 (the second return is the bound).
struct PerturbationCheck {
  double max_deviation = 0.0;
  double coin_distance = 0.0;
};
PerturbationCheck coin_perturbation_bound(TreeKind kind, const CirculantCoin& C,
                                          const CirculantCoin& Cp, double theta,
                                          int depth = 8, int random_probes = 16,
                                          unsigned seed = 1234);

}  // namespace qwtree
