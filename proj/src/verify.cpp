#include "qwtree/verify.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include "json.hpp"
#include <numbers>
#include <random>
#include <sstream>

namespace qwtree {

std::string version_string() { return "qwtree 1.0.0"; }

namespace {

using std::numbers::pi;

CheckReport make_report(std::string id, double residual, double tol,
                        std::string ref, std::string note = "") {
  CheckReport r;
  r.id = std::move(id);
  r.residual = residual;
  r.tolerance = tol;
  r.ref = std::move(ref);
  r.note = std::move(note);
  r.status = residual <= tol ? CheckReport::Status::Pass : CheckReport::Status::Fail;
  return r;
}

CirculantCoin random_coin(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * pi);
  return coin_from_eigenphases(u(rng), u(rng), u(rng));
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

}  // namespace

CheckReport collar_resolvent_check(const Eigen::Matrix3cd& bulk, const std::vector<cd>& zs) {
  const TreeKind kind = TreeKind::SubtreeAB;
  const Eigen::Matrix3cd Cpi = coin_pi().matrix();
  const std::vector<std::pair<std::string, Letter>> words = {
      {"a", Letter::a},   {"ab", Letter::c},  {"abc", Letter::b},
      {"ab", Letter::a},  {"aba", Letter::c}, {"ab", Letter::b}};
  std::vector<SparseSlot> basis;
  for (const auto& [w, tau] : words) {
    SparseSlot s{vertex_from_word(kind, w), tau, 0};
    basis.push_back(s);
  }

  Eigen::MatrixXcd R = Eigen::MatrixXcd::Zero(6, 6);
  double invariance = 0.0;
  for (int j = 0; j < 6; ++j) {
    SparseState in{{basis[j], cd{1.0, 0.0}}};
    double leak = 0.0;
    const SparseState img = sparse_step(in, kind, Cpi, bulk, 2, Cpi, &leak);
    invariance += leak;
    for (const auto& [key, amp] : img) {
      bool found = false;
      for (int i = 0; i < 6; ++i) {
        if (!(basis[i] < key) && !(key < basis[i])) {
          R(i, j) = amp;
          found = true;
          break;
        }
      }
      if (!found) invariance += std::norm(amp);
    }
  }
  if (invariance > 1e-13)
    return make_report("collar_resolvent", invariance, 1e-13,
                       "closed 6x6 restricted resolvent",
                       "collar block is not invariant (construction bug)");

  double max_err = 0.0;
  for (const cd& z : zs) {
    const Eigen::MatrixXcd G =
        (R - z * Eigen::MatrixXcd::Identity(6, 6)).inverse();
    const cd z6 = std::pow(z, 6);
    for (int i = 0; i < 6; ++i)
      for (int k = 0; k < 6; ++k) {
        const cd expect = std::pow(z, (5 + k - i) % 6) / (1.0 - z6);
        max_err = std::max(max_err, std::abs(G(i, k) - expect));
      }
  }
  return make_report("collar_resolvent", max_err, 1e-12,
                     "closed 6x6 restricted resolvent",
                     "checked " + std::to_string(zs.size()) + " z samples");
}

CheckReport subtree_equivalence_check(const CirculantCoin& C, int N) {
  const auto m1 = compute_moments(TreeKind::SubtreeAB, CoinConfig::uniform(C), N);
  const auto m2 = compute_moments(TreeKind::SubtreeAC, CoinConfig::uniform(C), N);
  double max_err = 0.0;
  for (int n = 0; n <= N; ++n) max_err = std::max(max_err, std::abs(m1.mu[n] - m2.mu[n]));
  return make_report("subtree_equivalence", max_err, 1e-13,
                     "half-tree moment equality");
}

CheckReport cyclicity_probe(const CirculantCoin& C, int depth) {
  const Eigen::Matrix3cd M = C.matrix();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (std::abs(M(i, j)) < 1e-12) {
        CheckReport r = make_report("cyclicity_probe", 0.0, 0.0,
                                    "root vector cyclicity");
        r.status = CheckReport::Status::Skip;
        r.note = "hypothesis unmet: coin has a zero entry";
        return r;
      }
  const int powers = 2 * depth + 3;
  const LevelLayout lay = LevelLayout::make(TreeKind::SubtreeAB, powers + 2);
  const WalkOperator U(TreeKind::SubtreeAB, CoinConfig::uniform(C), lay.depth_cap());
  const std::size_t interior = lay.level_offset(depth + 1);
  std::vector<double> max_amp(interior, 0.0);
  auto record = [&](const StateVector& s) {
    for (std::size_t i = 0; i < interior; ++i)
      max_amp[i] = std::max(max_amp[i], std::abs(s.amp[i]));
  };
  StateVector fwd = StateVector::root_state(lay), bwd = fwd;
  record(fwd);
  for (int j = 0; j < powers; ++j) {
    fwd = U.apply(fwd);
    bwd = U.apply_adjoint(bwd);
    record(fwd);
    record(bwd);
  }
  const double min_amp = *std::min_element(max_amp.begin(), max_amp.end());
  return make_report("cyclicity_probe", -min_amp, -1e-12, "root vector cyclicity",
                     "min reached amplitude " + fmt(min_amp));
}

std::vector<CheckReport> invariant_subspace_checks() {
  std::vector<CheckReport> out;
  const TreeKind full = TreeKind::FullA;

  // 1. theta = 0: the two half-trees decouple. A state supported on the
  // "ab" half (plus root component a (x) a) stays there.
  {
    const CirculantCoin C = coin_from_eigenphases(0.7, 1.9, 4.1);
    const int depth = 7;
    const WalkOperator U(full, CoinConfig::uniform(C), depth, 0.0);
    const LevelLayout& lay = U.layout();
    auto in_ab_block = [&](std::size_t flat) {
      if (flat < 2) return flat == 0;
      int d = 1;
      while (lay.level_offset(d + 1) <= flat) ++d;
      const std::uint64_t v = (flat - lay.level_offset(d)) / 3;
      return (v >> (d - 1)) == 0;
    };
    std::mt19937 rng(99);
    std::normal_distribution<double> gauss;
    StateVector s = StateVector::zero(lay);
    s.support_depth = depth - 1;
    for (std::size_t i = 0; i < lay.level_offset(depth - 1); ++i)
      if (in_ab_block(i)) s.amp[i] = cd{gauss(rng), gauss(rng)};
    const double n = s.norm();
    for (auto& a : s.amp) a /= n;
    const StateVector img = U.apply(s);
    double leak = img.boundary_leak;
    for (std::size_t i = 0; i < img.amp.size(); ++i)
      if (!in_ab_block(i)) leak += std::norm(img.amp[i]);
    out.push_back(make_report("block_diagonal_theta0", std::sqrt(leak), 1e-13,
                              "glued walk splits at theta = 0"));
  }

  // 2. span{a (x) a, ab (x) c} invariant under the sigma-coin glued walk.
  {
    const Eigen::Matrix3cd Cs = coin_sigma().matrix();
    const Eigen::Matrix3cd root = root_coin_matrix(0.0);
    const SparseSlot s0{root_vertex(), Letter::a, 0};
    const SparseSlot s1{vertex_from_word(full, "ab"), Letter::c, 0};
    double leak_total = 0.0;
    for (const SparseSlot& s : {s0, s1}) {
      double leak = 0.0;
      const SparseState img =
          sparse_step({{s, cd{1.0, 0.0}}}, full, root, Cs, 0, Cs, &leak);
      leak_total += leak;
      for (const auto& [key, amp] : img) {
        const bool in_span = (!(key < s0) && !(s0 < key)) || (!(key < s1) && !(s1 < key));
        if (!in_span) leak_total += std::norm(amp);
      }
    }
    out.push_back(make_report("sigma_two_dim_block", std::sqrt(leak_total), 1e-13,
                              "two-dim invariant block of the sigma coin"));
  }

  // 3. Root-coupled block of the pi coin at general theta closes within 12
  // basis slots.
  {
    const double theta = 0.4;
    const Eigen::Matrix3cd root = root_coin_matrix(theta);
    const Eigen::Matrix3cd Cp = coin_pi().matrix();
    std::vector<SparseSlot> basis = {{root_vertex(), Letter::a, 0}};
    std::size_t frontier = 0;
    double leak_total = 0.0;
    while (frontier < basis.size() && basis.size() <= 16) {
      double leak = 0.0;
      const SparseState img = sparse_step({{basis[frontier], cd{1.0, 0.0}}}, full,
                                          root, Cp, 0, Cp, &leak);
      leak_total += leak;
      for (const auto& [key, amp] : img) {
        if (std::abs(amp) < 1e-13) continue;
        bool known = false;
        for (const auto& b : basis)
          if (!(b < key) && !(key < b)) known = true;
        if (!known) basis.push_back(key);
      }
      ++frontier;
    }
    const bool closed = basis.size() <= 12 && frontier == basis.size();
    out.push_back(make_report(
        "theta_root_block", closed ? std::sqrt(leak_total) : 1.0, 1e-13,
        "finite root-coupled block at general theta",
        "closure dimension " + std::to_string(basis.size())));
  }
  return out;
}

namespace {

double table_scale(const PhiPolynomial& t) {
  double s = 0.0;
  for (const auto& row : t.c)
    for (const cd& v : row) s = std::max(s, std::abs(v));
  return s;
}

// Max relative entrywise deviation of (lhs + rhs) -- the published tables
// carry a global factor -1 against the determinant normalization.
double table_opposite_residual(const PhiPolynomial& lhs, const PhiPolynomial& rhs) {
  const double s = std::max(table_scale(lhs), table_scale(rhs));
  if (s == 0.0) return 0.0;
  double m = 0.0;
  for (int j = 0; j < 6; ++j)
    for (int k = 0; k < 4; ++k) m = std::max(m, std::abs(lhs.c[j][k] + rhs.c[j][k]));
  return m / s;
}

}  // namespace

std::vector<CheckReport> identity_battery(unsigned seed, bool fast) {
  std::vector<CheckReport> out;
  std::mt19937 rng(seed);
  const int tgrid = fast ? 90 : 360;

  // Orthogonal-manifold identities on both branches.
  {
    double max_res = 0.0;
    for (int i = 0; i < tgrid; ++i) {
      const double t = 2.0 * pi * i / tgrid;
      for (const double r : orthogonal_identity_residuals(co_plus(t)))
        max_res = std::max(max_res, r);
      const CirculantCoin cm = co_minus(t);
      const CirculantCoin partner{-cm.c0, -cm.c1, -cm.c2};
      for (const double r : orthogonal_identity_residuals(partner))
        max_res = std::max(max_res, r);
    }
    out.push_back(make_report("orthogonal_identities", max_res, 1e-12,
                              "five polynomial identities on the orthogonal manifold",
                              std::to_string(tgrid) + "-point t-grid, both branches"));
  }

  // Orthogonal coefficient table vs the determinant-derived table.
  {
    double max_res = 0.0;
    for (int i = 0; i < tgrid; ++i) {
      const double t = 2.0 * pi * i / tgrid;
      const CirculantCoin cp = co_plus(t);
      max_res = std::max(max_res, table_opposite_residual(
                                      phi_orthogonal(cp.beta(), cp.gamma()),
                                      phi_canonical(CoinParams(cp))));
      // The CO- branch, through its partner coin -C.
      const CirculantCoin cm = co_minus(t);
      const CirculantCoin partner{-cm.c0, -cm.c1, -cm.c2};
      max_res = std::max(max_res, table_opposite_residual(
                                      phi_orthogonal_for(cm),
                                      phi_canonical(CoinParams(partner))));
    }
    out.push_back(make_report(
        "orthogonal_table_vs_canonical", max_res, 1e-12,
        "orthogonal-family quintic coefficients",
        std::to_string(tgrid) +
            "-point t-grid; tables agree up to the overall factor -1"));
  }

  // Audit of the published expanded coefficients against the determinant.
  {
    std::array<double, 6> max_dev{};
    std::vector<CirculantCoin> coins;
    for (int i = 0; i < (fast ? 4 : 12); ++i) coins.push_back(random_coin(rng));
    for (int i = 0; i < 8; ++i) coins.push_back(co_plus(0.2 + i * 0.7));
    const std::array<cd, 3> xs = {cd{0.3, 0.0}, cd{-0.2, 0.45}, cd{0.7, -0.1}};
    for (const auto& C : coins) {
      const CoinParams p(C);
      const PhiPolynomial canon = phi_canonical(p);
      double scale = table_scale(canon);
      for (int j = 0; j < 6; ++j)
        for (const cd& x : xs) {
          const cd printed = phi_printed_coeff(p, j, x);
          const cd dev = printed + canon.coeff(j, x);
          max_dev[j] = std::max(max_dev[j], std::abs(dev) / std::max(scale, 1.0));
        }
    }
    std::ostringstream note;
    note << "per-coefficient |printed + canonical| (rel): ";
    for (int j = 0; j < 6; ++j) note << "c" << j << "=" << fmt(max_dev[j]) << " ";
    const bool c123_ok = max_dev[1] < 1e-10 && max_dev[2] < 1e-10 && max_dev[3] < 1e-10;
    note << (c123_ok ? "| c1..c3 match (factor -1); c0,c4,c5 deviate as published"
                     : "| unexpected: c1..c3 deviate");
    // Audit: pass iff the discrepancy is exactly the characterized one.
    out.push_back(make_report("printed_expanded_audit", c123_ok ? 0.0 : 1.0, 0.5,
                              "published expanded quintic coefficients",
                              note.str()));
  }

  // Audit of the factored form, including the degenerate pi-coin anomaly.
  {
    const CoinParams pi_params(coin_pi());
    double anomaly = 0.0;
    for (const cd z : {cd{0.3, 0.1}, cd{-0.2, 0.4}}) {
      for (const cd g : {cd{0.7, 0.2}, cd{1.4, -0.3}}) {
        const cd fac = phi_factored_eval(pi_params, g, z);
        anomaly = std::max(anomaly,
                           std::abs(fac - std::pow(z, 4) * (1.0 - g)));
      }
    }
    double generic_dev = 0.0;
    for (int i = 0; i < 3; ++i) {
      const CoinParams p(random_coin(rng));
      const PhiPolynomial canon = phi_canonical(p);
      for (const cd z : {cd{0.3, 0.1}, cd{0.45, -0.2}}) {
        const cd g = quintic_roots(canon, z).roots.front();
        generic_dev = std::max(generic_dev, std::abs(phi_factored_eval(p, g, z)));
      }
    }
    std::ostringstream note;
    note << "pi coin: factored form reduces to z^4 (1-g) (residual "
         << fmt(anomaly) << "), which the true g = 1/(1-z^6) does not satisfy; "
         << "generic coins: |factored| at canonical roots = " << fmt(generic_dev);
    out.push_back(make_report("factored_form_audit", anomaly, 1e-12,
                              "factored product form of the quintic", note.str()));
  }

  // Identity coin: g == 1, so Phi(1, x) must vanish identically.
  {
    const PhiPolynomial t = phi_canonical(CoinParams(coin_identity()));
    double max_res = 0.0;
    for (const cd x : {cd{0.3, 0.0}, cd{-0.5, 0.2}, cd{0.1, 0.8}}) {
      cd s{};
      for (int j = 0; j < 6; ++j) s += t.coeff(j, x);
      max_res = std::max(max_res, std::abs(s));
    }
    out.push_back(make_report("identity_coin_g1", max_res, 1e-12,
                              "identity coin solves the quintic at g = 1"));
  }

  // Evenness g(z) = g(-z) along continued branches.
  {
    std::vector<CirculantCoin> coins = {co_plus(pi / 2), random_coin(rng)};
    if (!fast) {
      coins.push_back(co_minus(0.9));
      coins.push_back(random_coin(rng));
    }
    const auto sched = radial_schedule(4, 8);
    double max_res = 0.0;
    for (const auto& C : coins) {
      const CoinParams p(C);
      const PhiPolynomial phi = phi_canonical(p);
      const double th = 0.7;
      const auto b1 = continue_branch(phi, p, th, sched.back(), 256, 1e-6, sched);
      const auto b2 = continue_branch(phi, p, th + pi, sched.back(), 256, 1e-6, sched);
      for (double r : sched) {
        cd g1{}, g2{};
        for (const auto& pt : b1.points)
          if (std::abs(pt.r - r) < 1e-14) g1 = pt.g;
        for (const auto& pt : b2.points)
          if (std::abs(pt.r - r) < 1e-14) g2 = pt.g;
        max_res = std::max(max_res, std::abs(g1 - g2));
      }
    }
    out.push_back(make_report("g_evenness", max_res, 1e-12,
                              "g depends on z only through z^2"));
  }

  // Reality for orthogonal coins: g(z) = conj(g(conj z)), w(theta) = w(-theta).
  {
    double max_res = 0.0;
    for (const double t : {0.9, 2.7}) {
      const GEvaluator ge(TreeKind::SubtreeAB, co_plus(t));
      for (const cd z : {cd{0.3, 0.25}, cd{-0.1, 0.4}})
        max_res = std::max(max_res, std::abs(ge.at(z) - std::conj(ge.at(std::conj(z)))));
    }
    out.push_back(make_report("orthogonal_reality_g", max_res, 1e-12,
                              "reality of moments for real coins"));

    double max_w = 0.0;
    const GEvaluator ge(TreeKind::SubtreeAB, co_plus(pi / 2));
    const auto sched = radial_schedule(4, fast ? 10 : 12);
    for (const double th : {0.4, 1.3, 2.6}) {
      double w[2];
      int c = 0;
      for (const double sgn : {1.0, -1.0}) {
        std::vector<double> ws;
        for (double r : sched) ws.push_back(2.0 * ge.at(std::polar(r, sgn * th)).real() - 1.0);
        const std::size_t K = ws.size() - 1;
        w[c++] = 2.0 * ws[K] - ws[K - 1];
      }
      max_w = std::max(max_w, std::abs(w[0] - w[1]));
    }
    out.push_back(make_report("orthogonal_density_symmetry", max_w, 1e-6,
                              "density symmetry w(theta) = w(-theta)"));
  }

  // Three-route agreement: series vs canonical quintic vs residual oracle.
  {
    std::vector<CirculantCoin> coins;
    const int n_random = fast ? 4 : 20;
    for (int i = 0; i < n_random; ++i) coins.push_back(random_coin(rng));
    for (int i = 0; i < (fast ? 2 : 4); ++i) {
      coins.push_back(co_plus(0.35 + 0.6 * i));
      coins.push_back(co_minus(0.55 + 0.6 * i));
    }
    std::vector<cd> zs;
    for (int ir = 0; ir < 4; ++ir)
      for (int ia = 0; ia < 4; ++ia)
        zs.push_back(std::polar(0.15 * (ir + 1), 0.3 + pi * ia / 2.0));
    double worst = 0.0;
    std::string worst_note;
    for (const auto& C : coins) {
      const CoinParams p(C);
      const PhiPolynomial phi = phi_canonical(p);
      const auto mu = compute_moments(TreeKind::SubtreeAB, CoinConfig::uniform(C), 20);
      for (const cd z : zs) {
        double tail = 0.0;
        const cd gs = g_series(mu, z, &tail);
        // Quintic route: residual of Phi at the series value, scaled by a
        // local Lipschitz estimate of Phi in g.
        const auto cj = phi.poly_in_g(z);
        cd val, dval;
        poly_eval(cj, gs, &val, &dval);
        const double kappa = 2.0 * (1.0 + std::abs(dval));
        const double ratio1 = std::abs(val) / (kappa * tail + 1e-8);
        // Residual-system route.
        const ResidualSolve rs = residual_solve(p, z, gs);
        const double ratio2 = std::abs(rs.g - gs) / (tail + 1e-8);
        if (std::max(ratio1, ratio2) > worst) {
          worst = std::max(ratio1, ratio2);
          worst_note = "worst at z=(" + fmt(z.real()) + "," + fmt(z.imag()) + ")";
        }
      }
    }
    out.push_back(make_report("route_agreement", worst, 1.0,
                              "series, quintic and residual routes agree",
                              std::to_string(coins.size()) + " coins x " +
                                  std::to_string(zs.size()) + " points; " + worst_note));
  }
  return out;
}

std::vector<CheckReport> run_suite(bool fast, unsigned seed) {
  std::vector<CheckReport> out;
  std::mt19937 rng(seed);

  const std::vector<cd> zs = {cd{0.0, 0.0}, cd{0.3, 0.2}, cd{0.0, 0.7}, cd{-0.5, 0.0}};
  out.push_back(collar_resolvent_check(random_coin(rng).matrix(), zs));
  out.back().id += "_random";
  out.push_back(collar_resolvent_check(co_plus(1.0).matrix(), zs));
  out.back().id += "_orthogonal";

  const CirculantCoin phase_sigma = parse_coin_spec("phase:" + std::to_string(pi / 7) + ":sigma");
  for (const auto& [tag, coin] : std::vector<std::pair<std::string, CirculantCoin>>{
           {"_co", co_plus(pi / 2)}, {"_random", random_coin(rng)}, {"_phase_sigma", phase_sigma}}) {
    out.push_back(subtree_equivalence_check(coin, 16));
    out.back().id += tag;
  }

  out.push_back(cyclicity_probe(co_plus(pi / 2), 4));
  out.back().id += "_co";
  out.push_back(cyclicity_probe(random_coin(rng), 4));
  out.back().id += "_random";
  out.push_back(cyclicity_probe(coin_sigma(), 4));
  out.back().id += "_sigma";

  for (auto& r : invariant_subspace_checks()) out.push_back(std::move(r));
  for (auto& r : identity_battery(seed + 1, fast)) out.push_back(std::move(r));

  std::sort(out.begin(), out.end(),
            [](const CheckReport& a, const CheckReport& b) { return a.id < b.id; });
  return out;
}

bool all_passed(const std::vector<CheckReport>& reports) {
  for (const auto& r : reports)
    if (r.status == CheckReport::Status::Fail) return false;
  return true;
}

std::string report_table(const std::vector<CheckReport>& reports, unsigned seed) {
  std::ostringstream os;
  os << version_string() << " verification suite (seed " << seed << ")\n";
  os << std::string(100, '-') << "\n";
  for (const auto& r : reports) {
    const char* st = r.status == CheckReport::Status::Pass
                         ? "PASS"
                         : (r.status == CheckReport::Status::Fail ? "FAIL" : "SKIP");
    os << st << "  ";
    os.width(36);
    os << std::left << r.id;
    os << " residual " << fmt(r.residual) << "  tol " << fmt(r.tolerance) << "  ["
       << r.ref << "]";
    if (!r.note.empty()) os << "\n      " << r.note;
    os << "\n";
  }
  os << std::string(100, '-') << "\n";
  int pass = 0, fail = 0, skip = 0;
  for (const auto& r : reports) {
    if (r.status == CheckReport::Status::Pass) ++pass;
    else if (r.status == CheckReport::Status::Fail) ++fail;
    else ++skip;
  }
  os << pass << " passed, " << fail << " failed, " << skip << " skipped\n";
  return os.str();
}

std::string report_json(const std::vector<CheckReport>& reports, unsigned seed) {
  nlohmann::json j;
  j["version"] = version_string();
  j["seed"] = seed;
  j["checks"] = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json c;
    c["id"] = r.id;
    c["status"] = r.status == CheckReport::Status::Pass
                      ? "pass"
                      : (r.status == CheckReport::Status::Fail ? "fail" : "skip");
    c["residual"] = r.residual;
    c["tolerance"] = r.tolerance;
    c["ref"] = r.ref;
    c["note"] = r.note;
    j["checks"].push_back(c);
  }
  return j.dump(2);
}

}  // namespace qwtree
