#include "qwtree/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <thread>

namespace qwtree {

std::vector<double> radial_schedule(int k_min, int k_max) {
  std::vector<double> r;
  for (int k = k_min; k <= k_max; ++k) r.push_back(1.0 - std::ldexp(1.0, -k));
  return r;
}

GEvaluator::GEvaluator(TreeKind kind, const CirculantCoin& C, int series_moments)
    : params_(C) {
  const auto verdict = degenerate_kind(C);
  degenerate_ = verdict.degenerate;
  // On the real orthogonal manifold, use the branch-resolved table: the
  // det -1 branch shares its Caratheodory function with the negated coin
  // (U(-C) = -U(C) and g is even), and that partner's polynomial is free of
  // the spurious unit-circle roots of c5 the coin's own table carries.
  phi_ = is_real_orthogonal(C) && !degenerate_ ? phi_orthogonal_for(C)
                                               : phi_canonical(params_);
  if (degenerate_) {
    // Permutation walks resum in closed form from the cyclic-vector orbit.
    auto om = orbit_moments(kind, CoinConfig::uniform(C), 64);
    if (om) {
      mu_ = *om;
      return;
    }
    degenerate_ = false;  // fall through to the generic machinery
  }
  mu_ = compute_moments(kind, CoinConfig::uniform(C), series_moments);
}

cd GEvaluator::at(cd z) const {
  if (std::abs(z) >= 1.0) throw std::domain_error("g requires |z| < 1");
  if (degenerate_) {
    // mu_n = phase^{n/p} on multiples of the orbit period p (or 0 always):
    // g(z) = 1 / (1 - z^p conj(phase)).
    int p = 0;
    for (std::size_t n = 1; n < mu_.mu.size(); ++n)
      if (std::abs(mu_.mu[n]) > 0.5) {
        p = static_cast<int>(n);
        break;
      }
    if (p == 0) return cd{1.0, 0.0};
    return 1.0 / (1.0 - std::pow(z, p) * std::conj(mu_.mu[p]));
  }
  if (std::abs(z) <= 0.6) return g_series(mu_, z);
  // Walk outward from |z| = 0.6 along the ray, halving the gap to the unit
  // circle with a few substeps per halving, each solved by the residual oracle.
  const double theta = std::arg(z);
  const double r_end = std::abs(z);
  double r = 0.6;
  cd g = g_series(mu_, std::polar(r, theta));
  cd g_prev = g;
  double r_prev = r;
  while (r < r_end - 1e-16) {
    const double gap = 1.0 - r;
    const double stride = std::min(gap / 8.0, r_end - r);
    const double rt = std::min(r + stride, r_end);
    const cd slope = (r > r_prev) ? (g - g_prev) / (r - r_prev) : cd{0.0, 0.0};
    const cd seed = g + slope * (rt - r);
    const ResidualSolve rs = residual_solve(params_, std::polar(rt, theta), seed);
    if (!rs.converged)
      throw std::runtime_error("residual chain failed at r=" + std::to_string(rt));
    g_prev = g;
    r_prev = r;
    g = rs.g;
    r = rt;
  }
  return g;
}

namespace {

// g values at the schedule radii along one ray; prefers quintic branch
// continuation, falls back to the residual chain.
std::vector<cd> g_on_schedule(const GEvaluator& ge, double theta,
                              const std::vector<double>& sched, bool* singular) {
  *singular = false;
  if (!ge.degenerate()) {
    try {
      const BranchPath path =
          continue_branch(ge.phi(), ge.params(), theta, sched.back(), 256, 1e-6, sched);
      std::vector<cd> out;
      for (double r : sched) {
        bool found = false;
        for (const auto& pt : path.points) {
          if (std::abs(pt.r - r) < 1e-14) {
            out.push_back(pt.g);
            if (pt.method == BranchPoint::Method::ResidualArbitrated) *singular = true;
            found = true;
            break;
          }
        }
        if (!found) throw BranchBreakError("schedule radius missing", r);
      }
      return out;
    } catch (const BranchBreakError&) {
      *singular = true;
    }
  }
  std::vector<cd> out;
  for (double r : sched) out.push_back(ge.at(std::polar(r, theta)));
  return out;
}

}  // namespace

DensityProfile density_profile(const CirculantCoin& C, int n_angles, int k_min,
                               int k_max, int threads) {
  if (degenerate_kind(C).degenerate)
    throw std::invalid_argument(
        "density_profile requires a non-degenerate coin; use special_case_spectrum");
  const GEvaluator ge(TreeKind::SubtreeAB, C);
  const auto sched = radial_schedule(k_min, k_max);

  DensityProfile prof;
  prof.points.resize(n_angles);
  auto work = [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      const double theta = 2.0 * std::numbers::pi * i / n_angles;
      bool singular = false;
      const auto gs = g_on_schedule(ge, theta, sched, &singular);
      std::vector<double> w(gs.size());
      for (std::size_t k = 0; k < gs.size(); ++k) w[k] = 2.0 * gs[k].real() - 1.0;
      const std::size_t K = w.size() - 1;
      const double eK = 2.0 * w[K] - w[K - 1];
      const double eKm1 = 2.0 * w[K - 1] - w[K - 2];
      prof.points[i] = {theta, eK, std::abs(eK - eKm1), singular};
    }
  };
  threads = std::max(1, std::min(threads, n_angles));
  if (threads == 1) {
    work(0, n_angles);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (n_angles + threads - 1) / threads;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back(work, t * chunk, std::min(n_angles, (t + 1) * chunk));
    for (auto& th : pool) th.join();
  }
  double sum = 0.0;
  for (const auto& pt : prof.points) sum += pt.w;
  prof.normalization = sum / n_angles;
  return prof;
}

AtomScanResult atom_scan(const CirculantCoin& C) {
  AtomScanResult res;
  const PhiPolynomial phi =
      is_real_orthogonal(C) ? phi_orthogonal_for(C) : phi_canonical(CoinParams(C));
  res.candidates = c5_circle_roots(phi);
  for (const auto& cand : res.candidates) {
    if (std::abs(cand.weight.imag()) < 1e-7 && cand.weight.real() > 1e-7)
      res.atoms.push_back(cand);
  }
  return res;
}

PointMass point_mass(const CirculantCoin& C, double theta0, int k_min, int k_max) {
  const GEvaluator ge(TreeKind::SubtreeAB, C);
  const auto sched = radial_schedule(k_min, k_max);
  PointMass pm;
  std::vector<cd> gs;
  bool singular = false;
  try {
    gs = g_on_schedule(ge, theta0, sched, &singular);
  } catch (const std::runtime_error&) {
    // Both routes stall before the last radius: keep what the chain reaches.
    for (double r : sched) {
      try {
        gs.push_back(ge.at(std::polar(r, theta0)));
      } catch (const std::runtime_error&) {
        break;
      }
    }
  }
  for (std::size_t k = 0; k < gs.size(); ++k)
    pm.sequence.push_back((1.0 - sched[k]) * (gs[k] - 0.5));
  if (pm.sequence.size() < 3) return pm;  // converged stays false
  const std::size_t K = pm.sequence.size() - 1;
  const cd eK = 2.0 * pm.sequence[K] - pm.sequence[K - 1];
  const cd eKm1 = 2.0 * pm.sequence[K - 1] - pm.sequence[K - 2];
  pm.weight = eK.real();
  pm.err_estimate = std::abs(eK - eKm1);
  pm.converged = pm.err_estimate < 1e-4;
  return pm;
}

SpecialSpectrum special_case_spectrum(TreeKind kind, const CirculantCoin& C,
                                      double theta) {
  SpecialSpectrum res;
  res.verdict = degenerate_kind(C);
  if (!res.verdict.degenerate)
    throw std::invalid_argument("special_case_spectrum requires a degenerate coin");

  const WalkOperator U(kind, CoinConfig::uniform(C), 2, theta);

  // Deep orbit, started well below the root so only bulk coins act.
  {
    Vertex v = root_vertex();
    for (Letter l : {kind == TreeKind::SubtreeAC ? Letter::c : Letter::b, Letter::a,
                     kind == TreeKind::SubtreeAC ? Letter::c : Letter::b})
      v = move_by_letter(kind, v, l).target;
    const OrbitReport deep = orbit_trace(U, v, Letter::a, 2048);
    if (deep.closed) {
      res.deep_period = deep.period;
      res.deep_phase = deep.phase;
      for (int j = 0; j < deep.period; ++j)
        res.essential_points.push_back(
            std::pow(deep.phase, 1.0 / deep.period) *
            std::polar(1.0, 2.0 * std::numbers::pi * j / deep.period));
    }
  }

  // Root-coupled block: close the reachable set of basis slots under U.
  {
    const Eigen::Matrix3cd root = U.root_coin();
    const Eigen::Matrix3cd bulk = U.coin_at(3);
    std::vector<SparseSlot> basis;
    const std::size_t ncomp = (kind == TreeKind::FullA) ? 2 : 1;
    for (std::size_t c = 0; c < ncomp; ++c)
      basis.push_back({root_vertex(), stored_root_letter(kind, c), c});
    std::map<SparseSlot, int> idx;
    for (std::size_t i = 0; i < basis.size(); ++i) idx[basis[i]] = static_cast<int>(i);

    constexpr std::size_t kCap = 64;
    std::vector<std::map<int, cd>> columns;
    for (std::size_t j = 0; j < basis.size() && basis.size() <= kCap; ++j) {
      SparseState s{{basis[j], cd{1.0, 0.0}}};
      double leak = 0.0;
      const SparseState img = sparse_step(s, kind, root, bulk, 0, bulk, &leak);
      std::map<int, cd> col;
      for (const auto& [key, amp] : img) {
        if (std::abs(amp) < 1e-13) continue;
        auto it = idx.find(key);
        if (it == idx.end()) {
          idx[key] = static_cast<int>(basis.size());
          basis.push_back(key);
          it = idx.find(key);
        }
        col[it->second] = amp;
      }
      columns.push_back(std::move(col));
    }
    if (basis.size() > kCap || columns.size() < basis.size()) {
      res.root_block_closed = false;
      res.orbit_open = true;
    } else {
      Eigen::MatrixXcd R = Eigen::MatrixXcd::Zero(basis.size(), basis.size());
      for (std::size_t j = 0; j < columns.size(); ++j)
        for (const auto& [i, v] : columns[j]) R(i, j) = v;
      Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(R, false);
      for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        res.root_block_eigenvalues.push_back(es.eigenvalues()(i));
    }
  }
  return res;
}

}  // namespace qwtree
