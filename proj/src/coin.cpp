#include "qwtree/coin.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qwtree {

namespace {
const cd kEps = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);  // e^{2 pi i/3}
}

Eigen::Matrix3cd CirculantCoin::matrix() const {
  Eigen::Matrix3cd m;
  m << c0, c2, c1,
       c1, c0, c2,
       c2, c1, c0;
  return m;
}

std::array<cd, 3> CirculantCoin::eigenvalues() const {
  return {c0 + c1 + c2, c0 + kEps * c1 + kEps * kEps * c2,
          c0 + kEps * kEps * c1 + kEps * c2};
}

bool CirculantCoin::is_unitary(double tol) const {
  for (const cd& l : eigenvalues())
    if (std::abs(std::abs(l) - 1.0) > tol) return false;
  return true;
}

NonUnitaryCoinError::NonUnitaryCoinError(const std::array<double, 3>& m)
    : std::runtime_error("coin is not unitary; eigenvalue moduli " +
                         std::to_string(m[0]) + ", " + std::to_string(m[1]) +
                         ", " + std::to_string(m[2])),
      eigenvalue_moduli(m) {}

CirculantCoin coin_from_entries(cd c0, cd c1, cd c2, double tol) {
  CirculantCoin C{c0, c1, c2};
  if (!C.is_unitary(tol)) {
    auto ev = C.eigenvalues();
    throw NonUnitaryCoinError({std::abs(ev[0]), std::abs(ev[1]), std::abs(ev[2])});
  }
  return C;
}

CirculantCoin coin_from_eigenphases(double th0, double th1, double th2) {
  const cd l0 = std::polar(1.0, th0), l1 = std::polar(1.0, th1), l2 = std::polar(1.0, th2);
  const cd e = kEps, e2 = kEps * kEps;
  return {(l0 + l1 + l2) / 3.0, (l0 + e2 * l1 + e * l2) / 3.0,
          (l0 + e * l1 + e2 * l2) / 3.0};
}

static CirculantCoin co_branch(double t, double s) {
  const double r3 = std::sqrt(3.0);
  return {cd{(s + std::sin(t) + r3 * std::cos(t)) / 3.0, 0.0},
          cd{(s + std::sin(t) - r3 * std::cos(t)) / 3.0, 0.0},
          cd{(s - 2.0 * std::sin(t)) / 3.0, 0.0}};
}

CirculantCoin co_plus(double t) { return co_branch(t, +1.0); }
CirculantCoin co_minus(double t) { return co_branch(t, -1.0); }

bool is_real_orthogonal(const CirculantCoin& C, double tol) {
  return std::abs(C.c0.imag()) < tol && std::abs(C.c1.imag()) < tol &&
         std::abs(C.c2.imag()) < tol && C.is_unitary(tol);
}

DegenerateVerdict degenerate_kind(const CirculantCoin& C, double tol) {
  const std::array<cd, 3> e = {C.c0, C.c1, C.c2};
  using K = DegenerateVerdict::Kind;
  const std::array<K, 3> kinds = {K::Identity, K::Sigma, K::Pi};
  for (int k = 0; k < 3; ++k) {
    if (std::abs(std::abs(e[k]) - 1.0) < tol &&
        std::abs(e[(k + 1) % 3]) < tol && std::abs(e[(k + 2) % 3]) < tol)
      return {true, kinds[k], e[k] / std::abs(e[k])};
  }
  return {};
}

std::array<double, 5> orthogonal_identity_residuals(const CirculantCoin& C) {
  const cd a = C.alpha(), b = C.beta(), g = C.gamma();
  return {std::abs(a + b + g),
          std::abs(a * g - b * (b + 1.0)),
          std::abs(a * a + b * b + g * g + 2.0 * b),
          std::abs(g * g - a * (b + 1.0) - g),
          std::abs(a * a * a + b * b * b + g * g * g - 3.0 * a * b * g)};
}

CirculantCoin coin_identity() { return {1.0, 0.0, 0.0}; }
CirculantCoin coin_sigma() { return {0.0, 1.0, 0.0}; }
CirculantCoin coin_pi() { return {0.0, 0.0, 1.0}; }

Eigen::Matrix3cd root_coin_matrix(double theta) {
  Eigen::Matrix3cd m;
  m << std::sin(theta), std::cos(theta), 0.0,
       0.0, 0.0, 1.0,
       std::cos(theta), -std::sin(theta), 0.0;
  return m;
}

namespace {

// Parses "<re>", "<re>+<im>i", "<re>-<im>i", "<im>i".
cd parse_complex(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty complex literal");
  std::string t = s;
  double im = 0.0;
  // Find the sign splitting re and im parts (not leading, not exponent sign).
  std::size_t split = std::string::npos;
  for (std::size_t i = t.size(); i-- > 1;) {
    if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  auto parse_num = [](const std::string& u) {
    std::size_t pos = 0;
    double v = std::stod(u, &pos);
    if (pos != u.size()) throw std::invalid_argument("bad numeric literal: " + u);
    return v;
  };
  if (t.back() == 'i') {
    t.pop_back();
    if (split == std::string::npos) {
      im = t.empty() || t == "+" ? 1.0 : (t == "-" ? -1.0 : parse_num(t));
      return {0.0, im};
    }
    std::string imparts = t.substr(split);
    if (imparts == "+") im = 1.0;
    else if (imparts == "-") im = -1.0;
    else im = parse_num(imparts);
    return {parse_num(t.substr(0, split)), im};
  }
  return {parse_num(t), 0.0};
}

std::vector<std::string> split_csv(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

}  // namespace

CirculantCoin parse_coin_spec(const std::string& spec) {
  if (spec == "id") return coin_identity();
  if (spec == "sigma") return coin_sigma();
  if (spec == "pi") return coin_pi();
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("unrecognized coin spec: " + spec);
  const std::string head = spec.substr(0, colon);
  const std::string rest = spec.substr(colon + 1);
  if (head == "phase") {
    const auto c2 = rest.find(':');
    if (c2 == std::string::npos)
      throw std::invalid_argument("phase spec needs phase:<delta>:<base>");
    const double delta = std::stod(rest.substr(0, c2));
    CirculantCoin base = parse_coin_spec(rest.substr(c2 + 1));
    const cd ph = std::polar(1.0, delta);
    return {ph * base.c0, ph * base.c1, ph * base.c2};
  }
  if (head == "circ") {
    auto parts = split_csv(rest);
    if (parts.size() != 3)
      throw std::invalid_argument("circ spec needs three entries");
    return coin_from_entries(parse_complex(parts[0]), parse_complex(parts[1]),
                             parse_complex(parts[2]));
  }
  if (head == "eig") {
    auto parts = split_csv(rest);
    if (parts.size() != 3)
      throw std::invalid_argument("eig spec needs three phases");
    return coin_from_eigenphases(std::stod(parts[0]), std::stod(parts[1]),
                                 std::stod(parts[2]));
  }
  if (head == "co+") return co_plus(std::stod(rest));
  if (head == "co-") return co_minus(std::stod(rest));
  throw std::invalid_argument("unrecognized coin spec: " + spec);
}

std::string coin_spec_string(const CirculantCoin& C) {
  auto fmt = [](cd v) {
    std::ostringstream os;
    os.precision(17);
    os << v.real();
    if (v.imag() >= 0) os << "+";
    os << v.imag() << "i";
    return os.str();
  };
  return "circ:" + fmt(C.c0) + "," + fmt(C.c1) + "," + fmt(C.c2);
}

}  // namespace qwtree
