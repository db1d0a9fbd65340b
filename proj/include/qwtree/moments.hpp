#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qwtree/walk.hpp"

namespace qwtree {

// Return moments mu_n = <phi | U^n phi> of the root cyclic vector.
struct MomentSequence {
  std::vector<cd> mu;  // mu[0..N], exact
  int exact_to = 0;
};

struct MemoryBudgetError : std::runtime_error {
  int max_feasible_n;
  MemoryBudgetError(const std::string& msg, int max_n)
      : std::runtime_error(msg), max_feasible_n(max_n) {}
};

// Exact first N+1 moments. Splits the power between forward and adjoint
// evolution, mu_{2k} = <U*^k phi, U^k phi>, mu_{2k+1} = <U*^k phi, U^{k+1} phi>,
// so the truncation depth is ceil(N/2)+2 and truncation never touches the
// light cone. mem_budget_bytes = 0 reads QWTREE_MEM_BUDGET (bytes; default 6 GiB).
MomentSequence compute_moments(TreeKind kind, const CoinConfig& cfg, int N,
                               double theta = 0.0, std::size_t mem_budget_bytes = 0);

// Estimated peak bytes held by compute_moments for this size.
std::size_t moments_memory_estimate(TreeKind kind, int N);

// Exact moments of a phase-times-permutation configuration via the orbit of
// the cyclic vector: mu_n = phase^{n/p} when the period p divides n, else 0
// (and mu_n = 0 for n >= 1 on an open orbit). Nullopt if the configuration
// is not a permutation walk or the orbit neither closes nor provably leaves.
std::optional<MomentSequence> orbit_moments(TreeKind kind, const CoinConfig& cfg,
                                            int N, double theta = 0.0);

// g(z) = sum_n z^n conj(mu_n) truncated at the available moments; requires
// |z| < 1. tail_bound receives |z|^{N+1}/(1-|z|).
cd g_series(const MomentSequence& m, cd z, double* tail_bound = nullptr);

}  // namespace qwtree
