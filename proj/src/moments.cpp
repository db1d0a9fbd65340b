#include "qwtree/moments.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace qwtree {

namespace {

std::size_t env_mem_budget() {
  if (const char* s = std::getenv("QWTREE_MEM_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::size_t{6} << 30;  // 6 GiB
}

std::size_t state_bytes(TreeKind kind, int depth_cap) {
  const LevelLayout lay = LevelLayout::make(kind, depth_cap);
  return lay.total_dim() * sizeof(cd);
}

}  // namespace

std::size_t moments_memory_estimate(TreeKind kind, int N) {
  const int depth_cap = (N + 1) / 2 + 2;
  // Two persistent states plus the in-flight result of one application,
  // with one spare for copies made during the swap.
  return 4 * state_bytes(kind, depth_cap);
}

MomentSequence compute_moments(TreeKind kind, const CoinConfig& cfg, int N,
                               double theta, std::size_t mem_budget_bytes) {
  if (N < 0) throw std::invalid_argument("moment order must be >= 0");
  const std::size_t budget = mem_budget_bytes ? mem_budget_bytes : env_mem_budget();
  if (moments_memory_estimate(kind, N) > budget) {
    int max_n = 0;
    while (max_n < N && moments_memory_estimate(kind, max_n + 1) <= budget) ++max_n;
    throw MemoryBudgetError(
        "moments up to n=" + std::to_string(N) + " need " +
            std::to_string(moments_memory_estimate(kind, N)) +
            " bytes, over the budget of " + std::to_string(budget) +
            "; max feasible N is " + std::to_string(max_n),
        max_n);
  }

  const int K = (N + 1) / 2;
  const LevelLayout lay = LevelLayout::make(kind, K + 2);
  const WalkOperator U(kind, cfg, lay.depth_cap(), theta);

  MomentSequence out;
  out.mu.assign(N + 1, cd{0.0, 0.0});
  out.exact_to = N;
  out.mu[0] = 1.0;

  StateVector fwd = StateVector::root_state(lay);
  StateVector bwd = fwd;
  for (int k = 1; k <= K; ++k) {
    fwd = U.apply(fwd);
    if (2 * k - 1 <= N) out.mu[2 * k - 1] = inner(bwd, fwd);
    if (2 * k <= N) {
      bwd = U.apply_adjoint(bwd);
      out.mu[2 * k] = inner(bwd, fwd);
    }
  }
  return out;
}

std::optional<MomentSequence> orbit_moments(TreeKind kind, const CoinConfig& cfg,
                                            int N, double theta) {
  OrbitReport rep;
  try {
    const WalkOperator U(kind, cfg, /*depth_cap=*/2, theta);
    rep = orbit_trace(U, root_vertex(),
                      kind == TreeKind::SubtreeAC ? Letter::b : Letter::a,
                      std::max(N, 16));
  } catch (const NotPermutationError&) {
    return std::nullopt;
  } catch (const FrontierError&) {
    return std::nullopt;
  }
  MomentSequence out;
  out.mu.assign(N + 1, cd{0.0, 0.0});
  out.exact_to = N;
  out.mu[0] = 1.0;
  if (rep.closed) {
    cd ph{1.0, 0.0};
    for (int n = rep.period; n <= N; n += rep.period) {
      ph *= rep.phase;
      out.mu[n] = ph;
    }
    return out;
  }
  // Open orbit: a permutation walk never revisits the start, so all higher
  // moments vanish -- provided we actually traced N steps.
  if (static_cast<int>(rep.path.size()) - 1 >= N) return out;
  return std::nullopt;
}

cd g_series(const MomentSequence& m, cd z, double* tail_bound) {
  const double r = std::abs(z);
  if (r >= 1.0) throw std::domain_error("g series requires |z| < 1");
  cd acc{0.0, 0.0};
  cd zp{1.0, 0.0};
  for (std::size_t n = 0; n < m.mu.size(); ++n) {
    acc += zp * std::conj(m.mu[n]);
    zp *= z;
  }
  if (tail_bound) *tail_bound = std::pow(r, static_cast<double>(m.mu.size())) / (1.0 - r);
  return acc;
}

}  // namespace qwtree
