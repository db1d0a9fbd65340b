// Acceptance gate: one line per criterion, nonzero exit iff any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "qwtree/moments.hpp"
#include "qwtree/residual.hpp"
#include "qwtree/spectral.hpp"
#include "qwtree/verify.hpp"

using namespace qwtree;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kPi = std::numbers::pi;
int failures = 0;

void report(int idx, const char* title, bool ok, const std::string& detail) {
  std::printf("%s  criterion %2d: %s  (%s)\n", ok ? "PASS" : "FAIL", idx, title,
              detail.c_str());
  if (!ok) ++failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<CirculantCoin> orthogonal_set(bool plus) {
  // t-values staying clear of the degenerate points of either branch
  // (pi/6, 3pi/2 on the +1 branch; pi/2, 11pi/6 on the -1 branch).
  std::vector<CirculantCoin> out;
  for (double t : {0.3, 0.7, 1.1, 1.9, 2.3, 2.7, 3.4, 4.0})
    out.push_back(plus ? co_plus(t) : co_minus(t));
  return out;
}

// 1. The six root-collar slots of the pi-collar walk close under U, and the
//    restricted resolvent matches the closed form entrywise.
void criterion1() {
  const auto t0 = Clock::now();
  const std::vector<cd> zs = {cd{0, 0}, cd{0.3, 0.2}, cd{0, 0.7}, cd{-0.5, 0}};
  const auto rep = collar_resolvent_check(coin_from_eigenphases(0.5, 1.9, -0.8).matrix(), zs);
  const double dt = seconds_since(t0);
  const bool ok = rep.status == CheckReport::Status::Pass &&
                  rep.residual <= 1e-12 && dt < 1.0;
  char buf[128];
  std::snprintf(buf, sizeof buf, "max entry error %.2e, %.3fs", rep.residual, dt);
  report(1, "restricted resolvent closed form", ok, buf);
}

// 2. Root orbit of the pi coin closes with period 6; the spectral measure
//    puts mass 1/6 on each sixth root of unity and none in between.
void criterion2() {
  const WalkOperator U(TreeKind::SubtreeAB, CoinConfig::uniform(coin_pi()), 8);
  const auto orb = orbit_trace(U, root_vertex(), stored_root_letter(TreeKind::SubtreeAB, 0));
  bool ok = orb.closed && orb.period == 6;
  double worst = 0.0;
  for (int k = 0; k < 6; ++k) {
    const auto pm = point_mass(coin_pi(), 2.0 * kPi * k / 6.0);
    worst = std::max(worst, std::abs(pm.weight - 1.0 / 6.0));
  }
  const auto off = point_mass(coin_pi(), kPi / 6.0);
  worst = std::max(worst, std::abs(off.weight));
  ok = ok && worst <= 1e-6;
  char buf[128];
  std::snprintf(buf, sizeof buf, "period %d, worst mass error %.2e", orb.period, worst);
  report(2, "permutation-coin point spectrum", ok, buf);
}

// 3. Series, quintic and residual-system routes agree on |z| <= 0.6 for a
//    sweep of random eigenphase coins and orthogonal coins.
void criterion3() {
  const auto t0 = Clock::now();
  std::vector<CirculantCoin> coins;
  std::mt19937 rng(2026);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  while (coins.size() < 20) {
    const CirculantCoin C = coin_from_eigenphases(ang(rng), ang(rng), ang(rng));
    if (!degenerate_kind(C).degenerate) coins.push_back(C);
  }
  for (double t : {0.3, 1.1, 2.3, 3.4}) {
    coins.push_back(co_plus(t));
    coins.push_back(co_minus(t));
  }

  std::vector<cd> zs;
  for (double r : {0.15, 0.3, 0.45, 0.6})
    for (double th : {0.3, 1.9, 3.6, 5.1}) zs.push_back(std::polar(r, th));

  double worst_phi = 0.0, worst_res = 0.0;
  bool ok = true;
  for (const auto& C : coins) {
    const CoinParams p(C);
    const PhiPolynomial phi = phi_canonical(p);
    const auto m = compute_moments(TreeKind::SubtreeAB, CoinConfig::uniform(C), 20);
    for (cd z : zs) {
      double tail = 0.0;
      const cd g = g_series(m, z, &tail);
      // Condition the quintic residual by its sensitivity to g.
      const auto cj = phi.poly_in_g(z);
      cd dphi{0, 0};
      for (int j = 5; j >= 1; --j) dphi = dphi * g + cj[j] * static_cast<double>(j);
      const double kappa = 2.0 * (1.0 + std::abs(dphi));
      const double r1 = std::abs(phi.eval(g, z)) / (kappa * tail + 1e-8);
      const auto sol = residual_solve(p, z, g);
      const double r2 = std::abs(sol.g - g) / (tail + 1e-8);
      worst_phi = std::max(worst_phi, r1);
      worst_res = std::max(worst_res, r2);
      ok = ok && r1 <= 1.0 && sol.converged && r2 <= 1.0;
    }
  }
  const double dt = seconds_since(t0);
  ok = ok && dt < 600.0;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "28 coins x 16 points: quintic ratio %.2f, oracle ratio %.2f, %.1fs",
                worst_phi, worst_res, dt);
  report(3, "three-route agreement", ok, buf);
}

// 4 and 5 reuse the full identity battery (360-point parameter grid).
void criteria45() {
  const auto battery = identity_battery(2026, /*fast=*/false);
  auto find = [&](const std::string& id) -> const CheckReport* {
    for (const auto& r : battery)
      if (r.id == id) return &r;
    return nullptr;
  };
  const auto* table = find("orthogonal_table_vs_canonical");
  const auto* printed = find("printed_expanded_audit");
  const auto* factored = find("factored_form_audit");
  bool ok4 = table && table->status == CheckReport::Status::Pass &&
             table->residual <= 1e-12 && printed &&
             printed->status == CheckReport::Status::Pass && factored &&
             factored->status == CheckReport::Status::Pass;
  std::string detail4 = table ? "grid max error " + std::to_string(table->residual)
                              : "missing check";
  report(4, "coefficient transcription audit", ok4, detail4);
  if (printed) std::printf("      audit: %s\n", printed->note.c_str());
  if (factored) std::printf("      audit: %s\n", factored->note.c_str());

  const auto* even = find("g_evenness");
  const auto* wsym = find("orthogonal_density_symmetry");
  const bool ok5 = even && even->status == CheckReport::Status::Pass &&
                   even->residual <= 1e-12 && wsym &&
                   wsym->status == CheckReport::Status::Pass &&
                   wsym->residual <= 1e-6;
  char buf[128];
  std::snprintf(buf, sizeof buf, "g(z)=g(-z) error %.2e, w(th)=w(-th) error %.2e",
                even ? even->residual : 1.0, wsym ? wsym->residual : 1.0);
  report(5, "evenness and density symmetry", ok5, buf);
}

// 6. No point spectrum on the orthogonal manifold: every candidate weight is
//    strictly negative and every radial point mass is negligible.
void criterion6() {
  bool ok = true;
  double worst_weight = -1.0, worst_mass = 0.0;
  int candidates = 0;
  for (bool plus : {true, false}) {
    for (const auto& C : orthogonal_set(plus)) {
      if (degenerate_kind(C).degenerate) {
        ok = false;
        continue;
      }
      const auto scan = atom_scan(C);
      ok = ok && scan.atoms.empty();
      for (const auto& cand : scan.candidates) {
        ++candidates;
        worst_weight = std::max(worst_weight, cand.weight.real());
        ok = ok && cand.weight.real() < 0.0;
        const auto pm = point_mass(C, cand.theta0);
        worst_mass = std::max(worst_mass, std::abs(pm.weight));
        ok = ok && std::abs(pm.weight) <= 1e-5;
      }
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "%d candidates, largest weight %.2e, largest radial mass %.2e",
                candidates, worst_weight, worst_mass);
  report(6, "atom exclusion for orthogonal coins", ok, buf);
}

// 7. The density integrates to one and is nonnegative on a 1024-angle grid.
void criterion7() {
  const auto t0 = Clock::now();
  const auto prof = density_profile(co_plus(kPi / 2), 1024);
  const double dt = seconds_since(t0);
  double wmin = 0.0;
  for (const auto& p : prof.points) wmin = std::min(wmin, p.w);
  const bool ok = std::abs(prof.normalization - 1.0) <= 3e-3 && wmin >= -1e-6 &&
                  dt < 30.0;
  char buf[128];
  std::snprintf(buf, sizeof buf, "normalization %.5f, min w %.2e, %.1fs",
                prof.normalization, wmin, dt);
  report(7, "density normalization", ok, buf);
}

// 8. Degenerate coins: identity walk never returns (flat density); the sigma
//    and pi finite blocks have sixth-root-of-unity eigenvalues.
void criterion8() {
  bool ok = true;
  const auto m = compute_moments(TreeKind::SubtreeAB,
                                 CoinConfig::uniform(coin_identity()), 20);
  for (int n = 0; n <= 20; ++n) {
    const double expect = n == 0 ? 1.0 : 0.0;
    ok = ok && std::abs(m.mu[n] - expect) < 1e-15;
  }
  // w = 2 Re g - 1 with g == 1 for an open orbit.
  const GEvaluator ge(TreeKind::SubtreeAB, coin_identity());
  double werr = 0.0;
  for (double th : {0.0, 1.0, 2.5, 4.0})
    werr = std::max(werr,
                    std::abs(2.0 * ge.at(std::polar(0.999, th)).real() - 1.0 - 1.0));
  ok = ok && werr <= 1e-9;

  double eig_err = 0.0;
  for (const auto& C : {coin_sigma(), coin_pi()}) {
    const auto sp = special_case_spectrum(TreeKind::FullA, C, 0.0);
    ok = ok && sp.root_block_closed;
    for (cd lam : sp.root_block_eigenvalues)
      eig_err = std::max(eig_err, std::abs(std::pow(lam, 6) - 1.0));
  }
  ok = ok && eig_err <= 6e-10;  // |lam^6 - 1| ~ 6 |lam - root|
  char buf[128];
  std::snprintf(buf, sizeof buf, "flat-density error %.2e, block eigenvalue error %.2e",
                werr, eig_err);
  report(8, "degenerate-coin special cases", ok, buf);
}

// 9. The two half-trees carry the same root moment sequence.
void criterion9() {
  bool ok = true;
  double worst = 0.0;
  for (const auto& C : {co_plus(0.9), co_minus(2.1),
                        coin_from_eigenphases(0.5, 1.9, -0.8)}) {
    const auto rep = subtree_equivalence_check(C, 16);
    worst = std::max(worst, rep.residual);
    ok = ok && rep.status == CheckReport::Status::Pass && rep.residual <= 1e-13;
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "3 coins, worst moment difference %.2e", worst);
  report(9, "half-tree equivalence", ok, buf);
}

// 10. Stretch sizes fit the memory budget and the time budget.
void criterion10() {
  bool ok = true;
  std::string detail;
  try {
    const auto m = compute_moments(TreeKind::SubtreeAB,
                                   CoinConfig::uniform(co_plus(0.9)), 24);
    ok = ok && static_cast<int>(m.mu.size()) == 25;
    detail = "N=24 moments ok";
  } catch (const MemoryBudgetError& e) {
    ok = false;
    detail = std::string("budget exceeded: ") + e.what();
  }
  const auto t0 = Clock::now();
  const unsigned hw = std::thread::hardware_concurrency();
  const int workers = static_cast<int>(std::min(8u, hw ? hw : 1u));
  const auto prof = density_profile(co_plus(kPi / 2), 4096, 4, 14, workers);
  const double dt = seconds_since(t0);
  ok = ok && dt < 60.0 && std::abs(prof.normalization - 1.0) <= 3e-3;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s; 4096-angle density %.1fs on %d worker(s)",
                detail.c_str(), dt, workers);
  report(10, "stretch-size performance", ok, buf);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criteria45();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  std::printf("%s\n", failures == 0 ? "all criteria passed"
                                    : "some criteria FAILED");
  return failures == 0 ? 0 : 1;
}
