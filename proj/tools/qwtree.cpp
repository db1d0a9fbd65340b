// qwtree: coined quantum walks on rooted binary trees and the spectral
// measure of the root cyclic vector.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 resource limit (memory budget), 4 numeric failure (branch break,
// non-permutation orbit).

#include <complex>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qwtree/branch.hpp"
#include "qwtree/coin.hpp"
#include "qwtree/moments.hpp"
#include "qwtree/spectral.hpp"
#include "qwtree/verify.hpp"
#include "qwtree/walk.hpp"

namespace {

using nlohmann::json;
using namespace qwtree;

enum ExitCode {
  kOk = 0,
  kCheckFailed = 1,
  kUsage = 2,
  kResources = 3,
  kNumeric = 4,
};

std::string fmt_complex(cd z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

// Header comment shared by every output file: coin parameters and version.
std::string header_comment(const CirculantCoin& C, const std::string& prefix) {
  std::ostringstream os;
  os << prefix << " " << version_string() << "\n"
     << prefix << " coin " << coin_spec_string(C) << "\n"
     << prefix << " alpha=" << fmt_complex(C.alpha()) << " beta="
     << fmt_complex(C.beta()) << " gamma=" << fmt_complex(C.gamma()) << "\n";
  return os.str();
}

json coin_json_params(const CirculantCoin& C) {
  auto pair = [](cd z) { return json::array({z.real(), z.imag()}); };
  return json{{"spec", coin_spec_string(C)},
              {"alpha", pair(C.alpha())},
              {"beta", pair(C.beta())},
              {"gamma", pair(C.gamma())}};
}

enum class Format { Csv, Json, Stdout };

Format format_for(const std::string& path) {
  if (path.empty()) return Format::Stdout;
  auto dot = path.find_last_of('.');
  const std::string ext = dot == std::string::npos ? "" : path.substr(dot);
  if (ext == ".csv") return Format::Csv;
  if (ext == ".json") return Format::Json;
  throw CLI::ValidationError("--out", "unknown extension (use .csv or .json)");
}

void write_output(const std::string& path, const CirculantCoin& C,
                  const std::string& csv_header, const std::string& csv_body,
                  const json& j) {
  const Format fmt = format_for(path);
  if (fmt == Format::Stdout) {
    std::cout << header_comment(C, "#") << csv_header << csv_body;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  if (fmt == Format::Csv) {
    out << header_comment(C, "#") << csv_header << csv_body;
  } else {
    json wrapped = j;
    wrapped["version"] = version_string();
    wrapped["coin"] = coin_json_params(C);
    out << wrapped.dump(2) << "\n";
  }
  std::cout << "wrote " << path << "\n";
}

TreeKind parse_tree(const std::string& s) {
  if (s == "ab") return TreeKind::SubtreeAB;
  if (s == "ac") return TreeKind::SubtreeAC;
  if (s == "full") return TreeKind::FullA;
  throw CLI::ValidationError("--tree", "expected ab, ac or full");
}

// ---------------------------------------------------------------------------

int cmd_coin(const std::string& spec) {
  const CirculantCoin C = parse_coin_spec(spec);
  std::cout << header_comment(C, "#");
  const auto M = C.matrix();
  std::cout.precision(15);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j)
      std::cout << (j ? "  " : "") << fmt_complex(M(i, j));
    std::cout << "\n";
  }
  std::cout << "eigenvalues (phase in units of pi):\n";
  for (cd lam : C.eigenvalues())
    std::cout << "  " << fmt_complex(lam) << "  phase "
              << std::arg(lam) / std::numbers::pi << "\n";
  const auto verdict = degenerate_kind(C);
  if (verdict.degenerate) std::cout << "degenerate: phase-times-permutation\n";
  return kOk;
}

int cmd_moments(const std::string& spec, int N, const std::string& tree,
                double theta, double delta, const std::string& out) {
  const CirculantCoin C = parse_coin_spec(spec);
  const TreeKind kind = parse_tree(tree);
  const CoinConfig cfg = CoinConfig::with_phase(C, delta);

  std::cerr << "estimated peak memory: "
            << moments_memory_estimate(kind, N) / (1024.0 * 1024.0)
            << " MiB for N=" << N << "\n";
  MomentSequence m;
  if (auto orbital = orbit_moments(kind, cfg, N, theta))
    m = *orbital;
  else
    m = compute_moments(kind, cfg, N, theta);

  std::ostringstream body;
  body.precision(17);
  json rows = json::array();
  for (std::size_t n = 0; n < m.mu.size(); ++n) {
    body << n << "," << m.mu[n].real() << "," << m.mu[n].imag() << "\n";
    rows.push_back({{"n", n}, {"re", m.mu[n].real()}, {"im", m.mu[n].imag()}});
  }
  write_output(out, C, "n,mu_re,mu_im\n", body.str(),
               json{{"moments", rows}, {"exact_to", m.exact_to}});
  return kOk;
}

int flat_density_table(const CirculantCoin& C, int grid, const std::string& out) {
  // Open orbit: the root vector never returns, the measure is Lebesgue.
  std::ostringstream body;
  body.precision(17);
  json rows = json::array();
  for (int i = 0; i < grid; ++i) {
    const double theta = 2.0 * std::numbers::pi * i / grid;
    body << theta << ",1,0,0\n";
    rows.push_back({{"theta", theta},
                    {"w", 1.0},
                    {"err_estimate", 0.0},
                    {"singular_candidate", false}});
  }
  write_output(out, C, "theta,w,err_estimate,singular_candidate\n", body.str(),
               json{{"density", rows}, {"normalization", 1.0}});
  return kOk;
}

int degenerate_atom_table(const CirculantCoin& C, const std::string& out) {
  const auto spec = special_case_spectrum(TreeKind::SubtreeAB, C);
  if (spec.orbit_open)
    std::cerr << "open orbit: spectral measure is Lebesgue, no atoms\n";
  std::ostringstream body;
  body.precision(17);
  json rows = json::array();
  const double w = spec.essential_points.empty()
                       ? 0.0
                       : 1.0 / static_cast<double>(spec.essential_points.size());
  for (cd lam : spec.essential_points) {
    body << std::arg(lam) << "," << w << "\n";
    rows.push_back({{"theta0", std::arg(lam)}, {"weight", w}});
  }
  write_output(out, C, "theta0,weight\n", body.str(),
               json{{"atoms", rows}, {"orbit_open", spec.orbit_open},
                    {"deep_period", spec.deep_period}});
  return kOk;
}

int cmd_density(const std::string& spec, int grid, int k_min, int k_max,
                int threads, const std::string& out) {
  const CirculantCoin C = parse_coin_spec(spec);
  if (degenerate_kind(C).degenerate) {
    std::cerr << "notice: degenerate (phase-times-permutation) coin; the "
                 "absolutely continuous density route does not apply.\n";
    if (special_case_spectrum(TreeKind::SubtreeAB, C).orbit_open) {
      std::cerr << "open orbit: w == 1 everywhere\n";
      return flat_density_table(C, grid, out);
    }
    std::cerr << "emitting the atom table instead\n";
    return degenerate_atom_table(C, out);
  }

  const auto prof = density_profile(C, grid, k_min, k_max, threads);
  std::ostringstream body;
  body.precision(17);
  json rows = json::array();
  for (const auto& p : prof.points) {
    body << p.theta << "," << p.w << "," << p.err_estimate << ","
         << (p.singular_candidate ? 1 : 0) << "\n";
    rows.push_back({{"theta", p.theta},
                    {"w", p.w},
                    {"err_estimate", p.err_estimate},
                    {"singular_candidate", p.singular_candidate}});
  }
  std::cerr << "normalization (mean w): " << prof.normalization << "\n";
  write_output(out, C, "theta,w,err_estimate,singular_candidate\n", body.str(),
               json{{"density", rows}, {"normalization", prof.normalization}});
  return kOk;
}

int cmd_atoms(const std::string& spec, const std::string& out) {
  const CirculantCoin C = parse_coin_spec(spec);
  if (degenerate_kind(C).degenerate) {
    std::cerr << "notice: degenerate coin; atoms read off the orbit spectrum\n";
    return degenerate_atom_table(C, out);
  }

  const auto scan = atom_scan(C);
  std::ostringstream body;
  body.precision(17);
  json rows = json::array();
  for (const auto& c : scan.candidates) {
    const bool accepted =
        c.weight.imag() < 1e-7 && c.weight.real() > 1e-7;  // mirrors atom_scan
    body << c.theta0 << "," << c.x0.real() << "," << c.x0.imag() << ","
         << c.multiplicity << "," << c.weight.real() << "," << c.weight.imag()
         << "," << (accepted ? 1 : 0) << "\n";
    rows.push_back({{"theta0", c.theta0},
                    {"x0_re", c.x0.real()},
                    {"x0_im", c.x0.imag()},
                    {"multiplicity", c.multiplicity},
                    {"weight_re", c.weight.real()},
                    {"weight_im", c.weight.imag()},
                    {"atom", accepted}});
  }
  std::cerr << scan.candidates.size() << " candidate(s), " << scan.atoms.size()
            << " atom(s)\n";
  write_output(out, C,
               "theta0,x0_re,x0_im,multiplicity,weight_re,weight_im,atom\n",
               body.str(), json{{"candidates", rows}});
  return kOk;
}

int cmd_orbit(const std::string& spec, const std::string& tree, int max_steps,
              const std::string& out) {
  const CirculantCoin C = parse_coin_spec(spec);
  const TreeKind kind = parse_tree(tree);
  const WalkOperator U(kind, CoinConfig::uniform(C), 8);
  const Letter tau = stored_root_letter(kind, 0);
  // Vertex indices pack one branch bit per level; an open orbit descends one
  // level per step, so cap the trace where the index space ends.
  if (max_steps > 60) {
    std::cerr << "notice: capping --max at 60 (vertex index space)\n";
    max_steps = 60;
  }
  const auto rep = orbit_trace(U, Vertex{0, 0}, tau, max_steps);

  std::ostringstream body;
  json rows = json::array();
  for (std::size_t n = 0; n < rep.path.size(); ++n) {
    const auto& [v, l] = rep.path[n];
    const std::string word = vertex_word(kind, v);
    body << n << "," << word << "," << letter_char(l) << "\n";
    rows.push_back({{"step", n}, {"vertex", word}, {"coin", letter_char(l)}});
  }
  std::cerr << (rep.closed ? "closed" : "open") << " orbit";
  if (rep.closed)
    std::cerr << ", period " << rep.period << ", phase "
              << fmt_complex(rep.phase);
  std::cerr << ", max depth " << rep.max_depth << "\n";
  write_output(out, C, "step,vertex,coin\n", body.str(),
               json{{"path", rows},
                    {"closed", rep.closed},
                    {"period", rep.period},
                    {"phase", json::array({rep.phase.real(), rep.phase.imag()})},
                    {"max_depth", rep.max_depth}});
  return kOk;
}

int cmd_branch(const std::string& spec, double ray, double rmax, int steps,
               const std::string& out) {
  const CirculantCoin C = parse_coin_spec(spec);
  if (degenerate_kind(C).degenerate)
    throw CLI::ValidationError(
        "--coin", "branch continuation needs a non-degenerate coin");
  const CoinParams p(C);
  const PhiPolynomial phi =
      is_real_orthogonal(C) ? phi_orthogonal_for(C) : phi_canonical(p);

  BranchPath path;
  try {
    path = continue_branch(phi, p, ray, rmax, steps);
  } catch (const BranchBreakError& e) {
    // Diagnostics file for the broken continuation, then exit 4.
    const std::string diag =
        out.empty() ? "branch_break.json" : out + ".break.json";
    std::ofstream d(diag);
    d << json{{"error", e.what()},
              {"r_fail", e.r_fail},
              {"theta", ray},
              {"coin", coin_json_params(C)}}
             .dump(2)
      << "\n";
    std::cerr << "branch continuation broke at r=" << e.r_fail
              << "; diagnostics in " << diag << "\n";
    return kNumeric;
  }

  std::ostringstream body;
  body.precision(17);
  json rows = json::array();
  for (const auto& pt : path.points) {
    const char* method = pt.method == BranchPoint::Method::Seed       ? "seed"
                         : pt.method == BranchPoint::Method::Quintic ? "quintic"
                                                                     : "residual";
    body << pt.r << "," << pt.g.real() << "," << pt.g.imag() << "," << method
         << "," << pt.root_gap << "," << (pt.m_small ? 1 : 0) << "\n";
    rows.push_back({{"r", pt.r},
                    {"g_re", pt.g.real()},
                    {"g_im", pt.g.imag()},
                    {"method", method},
                    {"root_gap", pt.root_gap},
                    {"m_small", pt.m_small}});
  }
  write_output(out, C, "r,g_re,g_im,method,root_gap,m_small\n", body.str(),
               json{{"theta", ray}, {"points", rows},
                    {"completed", path.completed}});
  return kOk;
}

int cmd_verify(const std::string& suite, unsigned seed, const std::string& out) {
  if (suite != "all" && suite != "fast")
    throw CLI::ValidationError("--suite", "expected all or fast");
  const auto reports = run_suite(suite == "fast", seed);
  std::cout << report_table(reports, seed);
  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot open output file: " + out);
    f << report_json(reports, seed);
    std::cout << "wrote " << out << "\n";
  }
  return all_passed(reports) ? kOk : kCheckFailed;
}

int cmd_special(const std::string& spec, const std::string& tree, double theta,
                double delta, const std::string& out) {
  const CirculantCoin C = parse_coin_spec(spec);
  const TreeKind kind = parse_tree(tree);
  if (delta != 0.0)
    std::cerr << "notice: global phase delta rotates the whole spectrum by "
                 "e^{i delta}; reported values include it\n";
  const CirculantCoin phased =
      delta == 0.0
          ? C
          : coin_from_entries(C.c0 * std::polar(1.0, delta),
                              C.c1 * std::polar(1.0, delta),
                              C.c2 * std::polar(1.0, delta));
  const auto sp = special_case_spectrum(kind, phased, theta);

  std::ostringstream body;
  body.precision(17);
  json rows = json::array();
  for (cd lam : sp.essential_points) {
    body << "essential," << lam.real() << "," << lam.imag() << ","
         << std::arg(lam) << "\n";
    rows.push_back({{"type", "essential"}, {"re", lam.real()},
                    {"im", lam.imag()}, {"arg", std::arg(lam)}});
  }
  for (cd lam : sp.root_block_eigenvalues) {
    body << "root_block," << lam.real() << "," << lam.imag() << ","
         << std::arg(lam) << "\n";
    rows.push_back({{"type", "root_block"}, {"re", lam.real()},
                    {"im", lam.imag()}, {"arg", std::arg(lam)}});
  }
  std::cerr << "deep orbit " << (sp.orbit_open ? "open" : "closed")
            << ", period " << sp.deep_period << ", root block "
            << (sp.root_block_closed ? "closed" : "not closed") << "\n";
  write_output(out, C, "type,re,im,arg\n", body.str(),
               json{{"points", rows},
                    {"orbit_open", sp.orbit_open},
                    {"deep_period", sp.deep_period},
                    {"root_block_closed", sp.root_block_closed}});
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coined quantum walks on rooted binary trees: spectral "
               "measure of the root cyclic vector"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  std::string coin_spec, tree = "ab", out, suite = "all";
  int n = 20, grid = 1024, k_min = 4, k_max = 14, threads = 1;
  int max_steps = 4096, steps = 512;
  double theta = 0.0, delta = 0.0, ray = 0.0, rmax = 0.999;
  unsigned seed = 1;

  auto add_coin = [&](CLI::App* c) {
    c->add_option("--coin", coin_spec,
                  "coin spec: id | sigma | pi | phase:<d>:<base> | "
                  "circ:<c0>,<c1>,<c2> | eig:<t0>,<t1>,<t2> | co+:<t> | co-:<t>")
        ->required();
  };
  auto add_out = [&](CLI::App* c) {
    c->add_option("--out", out, "output file (.csv or .json); default stdout");
  };
  auto add_tree = [&](CLI::App* c) {
    c->add_option("--tree", tree, "tree: ab, ac or full (default ab)");
  };

  auto* c_coin = app.add_subcommand("coin", "print coin matrix + eigenphases");
  add_coin(c_coin);

  auto* c_mom = app.add_subcommand("moments", "moments mu_n = <phi|U^n phi>");
  add_coin(c_mom);
  c_mom->add_option("--n", n, "highest moment index (default 20)");
  add_tree(c_mom);
  c_mom->add_option("--theta", theta, "root coin angle (full tree only)");
  c_mom->add_option("--delta", delta, "global coin phase e^{i delta}");
  add_out(c_mom);

  auto* c_den = app.add_subcommand(
      "density", "a.c. density w(theta) via radial limits of the quintic branch");
  add_coin(c_den);
  c_den->add_option("--grid", grid, "number of angles (default 1024)");
  c_den->add_option("--kmin", k_min, "first radius 1-2^-k (default 4)");
  c_den->add_option("--kmax", k_max, "last radius 1-2^-k (default 14)");
  c_den->add_option("--threads", threads, "worker cap (default 1)");
  add_out(c_den);

  auto* c_atoms = app.add_subcommand(
      "atoms", "candidate atoms from the unit-circle roots of c5");
  add_coin(c_atoms);
  add_out(c_atoms);

  auto* c_orb = app.add_subcommand(
      "orbit", "orbit of the root basis state under a permutation walk");
  add_coin(c_orb);
  add_tree(c_orb);
  c_orb->add_option("--start", tree, "start vertex (root only)")
      ->check(CLI::IsMember({"root"}));
  c_orb->add_option("--max", max_steps, "step cap (default 4096)");
  add_out(c_orb);

  auto* c_br = app.add_subcommand(
      "branch", "continue the branch g(r e^{i theta}) of the implicit quintic");
  add_coin(c_br);
  c_br->add_option("--ray", ray, "angle theta of the ray")->required();
  c_br->add_option("--rmax", rmax, "outer radius (default 0.999)");
  c_br->add_option("--steps", steps, "radial grid size (default 512)");
  add_out(c_br);

  auto* c_ver = app.add_subcommand("verify", "closed-form identity suite");
  c_ver->add_option("--suite", suite, "all or fast (default all)");
  c_ver->add_option("--seed", seed, "RNG seed (default 1)");
  c_ver->add_option("--out", out, "also write a JSON report here");

  auto* c_sp = app.add_subcommand(
      "special", "point spectrum for phase-times-permutation coins");
  add_coin(c_sp);
  c_sp->add_option("--kind", tree, "tree: ab, ac or full (default ab)");
  c_sp->add_option("--theta", theta, "root coin angle (full tree only)");
  c_sp->add_option("--delta", delta, "global coin phase e^{i delta}");
  add_out(c_sp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (c_coin->parsed()) return cmd_coin(coin_spec);
    if (c_mom->parsed()) return cmd_moments(coin_spec, n, tree, theta, delta, out);
    if (c_den->parsed()) return cmd_density(coin_spec, grid, k_min, k_max, threads, out);
    if (c_atoms->parsed()) return cmd_atoms(coin_spec, out);
    if (c_orb->parsed()) return cmd_orbit(coin_spec, tree, max_steps, out);
    if (c_br->parsed()) return cmd_branch(coin_spec, ray, rmax, steps, out);
    if (c_ver->parsed()) return cmd_verify(suite, seed, out);
    if (c_sp->parsed()) return cmd_special(coin_spec, tree, theta, delta, out);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NonUnitaryCoinError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const MemoryBudgetError& e) {
    std::cerr << "error: " << e.what()
              << "\nfeasible maximum under the current budget: N="
              << e.max_feasible_n
              << " (raise QWTREE_MEM_BUDGET to go further)\n";
    return kResources;
  } catch (const NotPermutationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumeric;
  }
  return kUsage;
}
