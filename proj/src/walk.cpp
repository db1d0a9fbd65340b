#include "qwtree/walk.hpp"

#include <cmath>
#include <random>

namespace qwtree {

StateVector StateVector::zero(const LevelLayout& lay) {
  StateVector s;
  s.layout = lay;
  s.amp.assign(lay.total_dim(), cd{0.0, 0.0});
  s.support_depth = 0;
  return s;
}

StateVector StateVector::root_state(const LevelLayout& lay) {
  StateVector s = zero(lay);
  s.amp[lay.root_slot(0)] = 1.0;
  return s;
}

double StateVector::norm() const {
  double n2 = 0.0;
  for (const cd& a : amp) n2 += std::norm(a);
  return std::sqrt(n2);
}

cd inner(const StateVector& x, const StateVector& y) {
  cd s{0.0, 0.0};
  const std::size_t n = std::min(x.amp.size(), y.amp.size());
  for (std::size_t i = 0; i < n; ++i) s += std::conj(x.amp[i]) * y.amp[i];
  return s;
}

WalkOperator::WalkOperator(TreeKind kind, CoinConfig cfg, int depth_cap, double theta)
    : layout_(LevelLayout::make(kind, depth_cap)), cfg_(cfg), theta_(theta) {
  bulk_phased_ = std::polar(1.0, cfg_.global_phase) * cfg_.bulk;
  collar_ = coin_pi().matrix();
  root_ = (kind == TreeKind::FullA) ? root_coin_matrix(theta) : coin_pi().matrix();
}

namespace {

constexpr std::uint8_t u8(Letter l) { return static_cast<std::uint8_t>(l); }

// Letters of the vertices at level 1 (index order).
std::vector<std::uint8_t> first_level_letters(TreeKind kind) {
  switch (kind) {
    case TreeKind::SubtreeAB: return {u8(Letter::b)};
    case TreeKind::SubtreeAC: return {u8(Letter::c)};
    case TreeKind::FullA: return {u8(Letter::b), u8(Letter::c)};
  }
  return {};
}

std::vector<std::uint8_t> next_level_letters(const std::vector<std::uint8_t>& cur) {
  std::vector<std::uint8_t> nxt(cur.size() * 2);
  for (std::size_t v = 0; v < cur.size(); ++v) {
    const Letter l = static_cast<Letter>(cur[v]);
    nxt[2 * v] = u8(sigma(l));
    nxt[2 * v + 1] = u8(sigma2(l));
  }
  return nxt;
}

// Letter the shift moves by, for coin component tau at word length d+1:
// sigma(tau) at even length, sigma^2(tau) at odd length.
inline Letter move_letter(int depth, Letter tau) {
  return (depth % 2 == 1) ? sigma(tau) : sigma2(tau);
}

// Stored root components and their coin letters.
inline Letter root_comp_letter(TreeKind kind, std::size_t comp) {
  if (kind == TreeKind::SubtreeAC) return Letter::b;
  return comp == 0 ? Letter::a : Letter::b;
}

}  // namespace

StateVector WalkOperator::apply(const StateVector& psi) const {
  const int out_support = psi.support_depth + 1;
  if (out_support > layout_.depth_cap())
    throw FrontierError("state support would pass depth_cap " +
                        std::to_string(layout_.depth_cap()));
  StateVector out = StateVector::zero(layout_);
  out.support_depth = out_support;
  const TreeKind kind = layout_.kind();

  // Root: embed stored components, apply the root coin, scatter. From the
  // root (odd word length) component tau moves by sigma^2(tau):
  // a -> child "ac", b -> exit, c -> child "ab".
  {
    Eigen::Vector3cd v3 = Eigen::Vector3cd::Zero();
    for (std::size_t comp = 0; comp < layout_.root_dim(); ++comp)
      v3(u8(root_comp_letter(kind, comp))) = psi.amp[layout_.root_slot(comp)];
    const Eigen::Vector3cd phi = root_ * v3;
    if (kind == TreeKind::SubtreeAB || kind == TreeKind::FullA)
      out.amp[layout_.slot(1, 0, Letter::c)] = phi(u8(Letter::c));
    else
      out.boundary_leak += std::norm(phi(u8(Letter::c)));
    if (kind == TreeKind::SubtreeAC)
      out.amp[layout_.slot(1, 0, Letter::a)] = phi(u8(Letter::a));
    else if (kind == TreeKind::FullA)
      out.amp[layout_.slot(1, 1, Letter::a)] = phi(u8(Letter::a));
    else
      out.boundary_leak += std::norm(phi(u8(Letter::a)));
    out.boundary_leak += std::norm(phi(u8(Letter::b)));  // exit component
  }

  std::vector<std::uint8_t> letters = first_level_letters(kind);
  for (int d = 1; d <= psi.support_depth; ++d) {
    const Eigen::Matrix3cd& C = coin_at(d);
    const std::size_t width = letters.size();
    for (std::size_t v = 0; v < width; ++v) {
      const Letter lv = static_cast<Letter>(letters[v]);
      Eigen::Vector3cd in;
      in << psi.amp[layout_.slot(d, v, Letter::a)],
          psi.amp[layout_.slot(d, v, Letter::b)],
          psi.amp[layout_.slot(d, v, Letter::c)];
      if (in.isZero(0.0)) continue;
      const Eigen::Vector3cd phi = C * in;
      for (int t = 0; t < 3; ++t) {
        const Letter tau = static_cast<Letter>(t);
        const Letter m = move_letter(d, tau);
        if (m == lv) {
          if (d == 1) {
            const std::size_t comp = (kind == TreeKind::FullA) ? v : 0;
            out.amp[layout_.root_slot(comp)] = phi(t);
          } else {
            out.amp[layout_.slot(d - 1, v >> 1, tau)] = phi(t);
          }
        } else {
          const std::uint64_t bit = (m == sigma2(lv)) ? 1 : 0;
          out.amp[layout_.slot(d + 1, (v << 1) | bit, tau)] = phi(t);
        }
      }
    }
    if (d < psi.support_depth) letters = next_level_letters(letters);
  }
  return out;
}

StateVector WalkOperator::apply_adjoint(const StateVector& psi) const {
  const int out_support = psi.support_depth + 1;
  if (out_support > layout_.depth_cap())
    throw FrontierError("state support would pass depth_cap " +
                        std::to_string(layout_.depth_cap()));
  StateVector out = StateVector::zero(layout_);
  out.support_depth = out_support;
  const TreeKind kind = layout_.kind();

  // Reads psi at the stored root component with coin letter tau, 0 if not stored.
  auto read_root = [&](Letter tau) -> cd {
    for (std::size_t comp = 0; comp < layout_.root_dim(); ++comp)
      if (root_comp_letter(kind, comp) == tau) return psi.amp[layout_.root_slot(comp)];
    return cd{0.0, 0.0};
  };
  auto read_slot = [&](int d, std::uint64_t v, Letter tau) -> cd {
    if (d > psi.support_depth) return cd{0.0, 0.0};
    return psi.amp[layout_.slot(d, v, tau)];
  };

  // xi = S* psi, then out = (I (x) C*) xi. The gather uses the forward shift
  // target: <x,tau| S* psi> = psi[S(x (x) tau)].
  {
    Eigen::Vector3cd xi = Eigen::Vector3cd::Zero();
    if (psi.support_depth >= 1) {
      if (kind == TreeKind::SubtreeAC) xi(u8(Letter::a)) = read_slot(1, 0, Letter::a);
      if (kind == TreeKind::FullA) xi(u8(Letter::a)) = read_slot(1, 1, Letter::a);
      if (kind != TreeKind::SubtreeAC) xi(u8(Letter::c)) = read_slot(1, 0, Letter::c);
    }
    const Eigen::Vector3cd r = root_.adjoint() * xi;
    Eigen::Vector3d mask = Eigen::Vector3d::Ones();
    for (std::size_t comp = 0; comp < layout_.root_dim(); ++comp) {
      const Letter lt = root_comp_letter(kind, comp);
      out.amp[layout_.root_slot(comp)] = r(u8(lt));
      mask(u8(lt)) = 0.0;
    }
    for (int t = 0; t < 3; ++t) out.boundary_leak += mask(t) * std::norm(r(t));
  }

  std::vector<std::uint8_t> letters = first_level_letters(kind);
  for (int d = 1; d <= out_support; ++d) {
    const Eigen::Matrix3cd Cast = coin_at(d).adjoint();
    const std::size_t width = letters.size();
    for (std::size_t v = 0; v < width; ++v) {
      const Letter lv = static_cast<Letter>(letters[v]);
      Eigen::Vector3cd xi;
      for (int t = 0; t < 3; ++t) {
        const Letter tau = static_cast<Letter>(t);
        const Letter m = move_letter(d, tau);
        if (m == lv) {
          xi(t) = (d == 1) ? read_root(tau) : read_slot(d - 1, v >> 1, tau);
        } else {
          const std::uint64_t bit = (m == sigma2(lv)) ? 1 : 0;
          xi(t) = read_slot(d + 1, (v << 1) | bit, tau);
        }
      }
      if (xi.isZero(0.0)) continue;
      const Eigen::Vector3cd o = Cast * xi;
      out.amp[layout_.slot(d, v, Letter::a)] = o(0);
      out.amp[layout_.slot(d, v, Letter::b)] = o(1);
      out.amp[layout_.slot(d, v, Letter::c)] = o(2);
    }
    if (d < out_support) letters = next_level_letters(letters);
  }
  return out;
}

Letter stored_root_letter(TreeKind kind, std::size_t comp) {
  return root_comp_letter(kind, comp);
}

SparseState sparse_step(const SparseState& psi, TreeKind kind,
                        const Eigen::Matrix3cd& root_coin,
                        const Eigen::Matrix3cd& bulk, int collar_depth,
                        const Eigen::Matrix3cd& collar, double* leak) {
  SparseState out;
  for (const auto& [key, amp] : psi) {
    const Eigen::Matrix3cd& C = key.v.depth == 0
                                    ? root_coin
                                    : (key.v.depth <= collar_depth ? collar : bulk);
    const int tau = static_cast<int>(key.tau);
    for (int r = 0; r < 3; ++r) {
      const cd val = amp * C(r, tau);
      if (val == cd{0.0, 0.0}) continue;
      const Letter m = move_letter(key.v.depth, static_cast<Letter>(r));
      const MoveResult mv = move_by_letter(kind, key.v, m);
      if (mv.kind != MoveResult::Kind::Moved) {
        if (leak) *leak += std::norm(val);
        continue;
      }
      SparseSlot nk{mv.target, static_cast<Letter>(r), 0};
      if (mv.target.depth == 0) {
        bool stored = false;
        const std::size_t ncomp = (kind == TreeKind::FullA) ? 2 : 1;
        for (std::size_t c = 0; c < ncomp; ++c) {
          if (root_comp_letter(kind, c) == static_cast<Letter>(r)) {
            nk.root_comp = c;
            stored = true;
          }
        }
        if (!stored) {
          if (leak) *leak += std::norm(val);
          continue;
        }
      }
      out[nk] += val;
    }
  }
  return out;
}

namespace {

// Permutation-column lookup: returns the single row with unit modulus in
// column tau, or throws.
std::pair<int, cd> permutation_column(const Eigen::Matrix3cd& C, int tau, double tol) {
  int row = -1;
  for (int r = 0; r < 3; ++r) {
    const double m = std::abs(C(r, tau));
    if (std::abs(m - 1.0) < tol) {
      if (row >= 0) throw NotPermutationError("coin column has two unit entries");
      row = r;
    } else if (m > tol) {
      throw NotPermutationError("coin is not a phase times a permutation");
    }
  }
  if (row < 0) throw NotPermutationError("coin column has no unit entry");
  return {row, C(row, tau)};
}

}  // namespace

OrbitReport orbit_trace(const WalkOperator& U, Vertex start, Letter tau, int max_steps) {
  OrbitReport rep;
  const TreeKind kind = U.kind();
  Vertex v = start;
  Letter t = tau;
  cd amp{1.0, 0.0};
  rep.path.push_back({v, t});
  for (int step = 1; step <= max_steps; ++step) {
    const Eigen::Matrix3cd& C = (v.depth == 0) ? U.root_coin() : U.coin_at(v.depth);
    auto [row, entry] = permutation_column(C, static_cast<int>(t), 1e-12);
    const Letter tp = static_cast<Letter>(row);
    amp *= entry;
    const Letter m = move_letter(v.depth, tp);
    const MoveResult mv = move_by_letter(kind, v, m);
    if (mv.kind != MoveResult::Kind::Moved) {
      rep.closed = false;
      return rep;  // orbit leaves the tree (exit / outside half-tree)
    }
    v = mv.target;
    t = tp;
    rep.max_depth = std::max(rep.max_depth, v.depth);
    rep.path.push_back({v, t});
    if (v == start && t == tau) {
      rep.closed = true;
      rep.period = step;
      rep.phase = amp;
      return rep;
    }
  }
  return rep;
}

PerturbationCheck coin_perturbation_bound(TreeKind kind, const CirculantCoin& C,
                                          const CirculantCoin& Cp, double theta,
                                          int depth, int random_probes, unsigned seed) {
  const WalkOperator U1(kind, CoinConfig::uniform(C), depth, theta);
  const WalkOperator U2(kind, CoinConfig::uniform(Cp), depth, theta);
  const LevelLayout& lay = U1.layout();

  PerturbationCheck res;
  const Eigen::Matrix3cd D = C.matrix() - Cp.matrix();
  res.coin_distance = D.jacobiSvd().singularValues()(0);

  auto probe = [&](const StateVector& s) {
    StateVector d1 = U1.apply(s), d2 = U2.apply(s);
    double n2 = 0.0;
    for (std::size_t i = 0; i < d1.amp.size(); ++i) n2 += std::norm(d1.amp[i] - d2.amp[i]);
    res.max_deviation = std::max(res.max_deviation, std::sqrt(n2));
  };

  const int basis_depth = std::min(depth - 2, 4);
  StateVector s = StateVector::zero(lay);
  s.support_depth = depth - 2;
  for (std::size_t i = 0; i < lay.level_offset(basis_depth + 1); ++i) {
    s.amp[i] = 1.0;
    probe(s);
    s.amp[i] = 0.0;
  }
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss;
  for (int k = 0; k < random_probes; ++k) {
    for (std::size_t i = 0; i < lay.level_offset(depth - 1); ++i)
      s.amp[i] = cd{gauss(rng), gauss(rng)};
    const double n = s.norm();
    for (auto& a : s.amp) a /= n;
    probe(s);
  }
  return res;
}

}  // namespace qwtree
