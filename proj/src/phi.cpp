#include "qwtree/phi.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

namespace qwtree {

cd AuxPolys::M(cd g) const {
  const cd a = p.alpha, b = p.beta, c = p.gamma;
  return (b * b - a * c) * g * g + 2.0 * b * g + 1.0;
}

cd AuxPolys::K(cd g) const {
  const cd a = p.alpha, b = p.beta, c = p.gamma;
  return 2.0 * a * c * g + (2.0 * a * b * c - c * c * c - a * a * a) * g * g;
}

cd AuxPolys::P(cd g) const {
  const cd a = p.alpha, b = p.beta, c = p.gamma;
  const cd e3 = a * a * a + b * b * b + c * c * c - 3.0 * a * b * c;
  const cd d = b * b - a * c;
  return (e3 + d) * g * g + 2.0 * (b * (b + 1.0) - a * c) * g + (b + 1.0);
}

cd PhiPolynomial::coeff(int j, cd x) const {
  return ((c[j][3] * x + c[j][2]) * x + c[j][1]) * x + c[j][0];
}

std::vector<cd> PhiPolynomial::coeff_poly(int j) const {
  return {c[j][0], c[j][1], c[j][2], c[j][3]};
}

std::vector<cd> PhiPolynomial::poly_in_g(cd z) const {
  const cd x = z * z;
  std::vector<cd> out(6);
  for (int j = 0; j < 6; ++j) out[j] = coeff(j, x);
  return out;
}

cd PhiPolynomial::eval(cd g, cd z) const {
  const auto cj = poly_in_g(z);
  cd v{0.0, 0.0};
  for (int j = 5; j >= 0; --j) v = v * g + cj[j];
  return v;
}

cd phi_determinant(const CoinParams& p, cd g, cd z) {
  const cd a = p.alpha, b = p.beta, c = p.gamma;
  const AuxPolys aux(p);
  const cd M = aux.M(g), P = aux.P(g);
  const cd z2 = z * z;
  // Rows of the linear system in (G_{1,1}, G_{1,5}, G_{1,3}) after
  // eliminating the even resolvent entries; det = z^2 * Phi.
  const Eigen::Matrix3cd A{
      {z * (c * P - z2 * M), z * (b + 1.0) * P, a * (g - 1.0) * P},
      {z * (b + 1.0), z * a, c * (g - 1.0) - z2 * g},
      {z * a * P, z * (c * P - z2 * M), (b + 1.0) * (g - 1.0) * P}};
  return A.determinant() / z2;
}

namespace {

// Dense bivariate polynomials in (g, z), small fixed bounds; enough for the
// 3x3 determinant expansion (degrees <= 9 each).
struct Poly2 {
  static constexpr int NG = 10, NZ = 12;
  std::array<std::array<cd, NZ>, NG> a{};

  static Poly2 term(cd coef, int jg, int jz) {
    Poly2 p;
    p.a[jg][jz] = coef;
    return p;
  }
  Poly2 operator+(const Poly2& o) const {
    Poly2 r;
    for (int i = 0; i < NG; ++i)
      for (int j = 0; j < NZ; ++j) r.a[i][j] = a[i][j] + o.a[i][j];
    return r;
  }
  Poly2 operator-(const Poly2& o) const {
    Poly2 r;
    for (int i = 0; i < NG; ++i)
      for (int j = 0; j < NZ; ++j) r.a[i][j] = a[i][j] - o.a[i][j];
    return r;
  }
  Poly2 operator*(const Poly2& o) const {
    Poly2 r;
    for (int i = 0; i < NG; ++i)
      for (int j = 0; j < NZ; ++j) {
        if (a[i][j] == cd{}) continue;
        for (int k = 0; i + k < NG; ++k)
          for (int l = 0; j + l < NZ; ++l) {
            if (o.a[k][l] == cd{}) continue;
            r.a[i + k][j + l] += a[i][j] * o.a[k][l];
          }
      }
    return r;
  }
};

}  // namespace

PhiPolynomial phi_canonical(const CoinParams& p) {
  const cd a = p.alpha, b = p.beta, c = p.gamma;
  const cd e3 = a * a * a + b * b * b + c * c * c - 3.0 * a * b * c;
  const cd d = b * b - a * c;

  auto quad = [](cd q2, cd q1, cd q0) {
    return Poly2::term(q2, 2, 0) + Poly2::term(q1, 1, 0) + Poly2::term(q0, 0, 0);
  };
  const Poly2 M = quad(d, 2.0 * b, 1.0);
  const Poly2 P = quad(e3 + d, 2.0 * (b * (b + 1.0) - a * c), b + 1.0);
  const Poly2 z = Poly2::term(1.0, 0, 1);
  const Poly2 z2 = Poly2::term(1.0, 0, 2);
  const Poly2 gm1 = Poly2::term(1.0, 1, 0) - Poly2::term(1.0, 0, 0);
  const Poly2 g = Poly2::term(1.0, 1, 0);
  auto k = [](cd v) { return Poly2::term(v, 0, 0); };

  // Same 3x3 system as phi_determinant, expanded exactly; det = z^2 Phi.
  const Poly2 r00 = z * (k(c) * P - z2 * M);
  const Poly2 r01 = z * k(b + 1.0) * P;
  const Poly2 r02 = k(a) * gm1 * P;
  const Poly2 r10 = z * k(b + 1.0);
  const Poly2 r11 = z * k(a);
  const Poly2 r12 = k(c) * gm1 - z2 * g;
  const Poly2 r20 = z * k(a) * P;
  const Poly2 r21 = z * (k(c) * P - z2 * M);
  const Poly2 r22 = k(b + 1.0) * gm1 * P;

  const Poly2 det = r00 * (r11 * r22 - r12 * r21) - r01 * (r10 * r22 - r12 * r20) +
                    r02 * (r10 * r21 - r11 * r20);

  PhiPolynomial out;
  out.source = PhiPolynomial::Source::Canonical;
  for (int j = 0; j < 6; ++j)
    for (int kx = 0; kx < 4; ++kx) out.c[j][kx] = det.a[j][2 * kx + 2];
  return out;
}

cd phi_printed_coeff(const CoinParams& p, int j, cd x) {
  const cd a = p.alpha, b = p.beta, g = p.gamma;
  const cd e3 = a * a * a + b * b * b + g * g * g - 3.0 * a * b * g;
  const cd d = b * b - a * g;
  const cd s1 = a + b + g + 1.0;
  const cd q = a * a + b * b + g * g - b * g - a * g - a * b - a - g + 2.0 * b + 1.0;
  const cd x2 = x * x, x3 = x * x * x;
  switch (j) {
    case 0:
      return -x2 * g + x * 2.0 * (b + 1.0) * (g * g - a * (b + 1.0)) +
             (1.0 + b) * (1.0 + b) * s1 * q;
    case 1:
      return -x3 + x2 * g * (3.0 - 2.0 * b) -
             x * (g * g - a * (b + 1.0)) * (3.0 + 4.0 * a * g - 4.0 * b - 7.0 * b * b) +
             (1.0 + b) * s1 * (1.0 + 4.0 * a * g - 3.0 * b - 4.0 * b * b) * q;
    case 2:
      return -x3 * 4.0 * b + x2 * 2.0 * g * (6.0 * b + b * b - a * g) +
             x * 2.0 * (g * g - a * (b + 1.0)) *
                 (a * a * a + 4.0 * b * b * b + g * g * g + 2.0 * a * g - 6.0 * a * b * g -
                  2.0 * b * b - 6.0 * b) -
             2.0 * s1 * q *
                 (a * a * a + 4.0 * b * b * b + g * g * g + a * g - b * b - 2.0 * b -
                  6.0 * a * b * g - 7.0 * a * b * b * g + 3.0 * b * b * b * b +
                  a * a * a * b + b * g * g * g + 2.0 * a * a * g * g);
    case 3:
      return x3 * 2.0 * (a * g - 3.0 * b * b) +
             x2 * 2.0 * g *
                 (a * a * a + 4.0 * b * b * b + g * g * g - 6.0 * a * b * g + 9.0 * b * b -
                  3.0 * a * g) +
             x * 2.0 * (g * g - a * (b + 1.0)) *
                 (-2.0 * g * g * g + g * g * g * b + 3.0 * a * g * (1.0 - b * b) +
                  12.0 * a * b * g - 9.0 * b * b + a * a * a * b + b * b * b * b -
                  8.0 * b * b * b - 2.0 * a * a * a) +
             2.0 * s1 * q *
                 (a * a * a + 4.0 * b * b * b + g * g * g - a * g + 3.0 * b * b -
                  6.0 * a * b * g - b * b * b * b - a * a * a * b + 3.0 * a * b * b * g -
                  b * g * g * g - 2.0 * std::pow(b, 5) - 2.0 * a * a * a * b * b +
                  8.0 * a * b * b * b * g + 2.0 * a * a * a * a * g -
                  6.0 * a * a * b * g * g - 2.0 * g * g * g * b * b + 2.0 * a * std::pow(g, 4));
    case 4:
      return x3 * 4.0 * b * (a * g - b * b) +
             x2 * g *
                 (4.0 * g * g * g * b + 7.0 * std::pow(b, 4) + 4.0 * a * a * a * b -
                  18.0 * a * b * b * b * g - 12.0 * a * b * g + 3.0 * g * g * a * a +
                  12.0 * b * b * b) +
             x * 2.0 * (g * g - a * (b + 1.0)) *
                 (a * std::pow(g, 4) - g * g * g * b * b - 4.0 * g * g * g * b -
                  3.0 * a * a * g * g * (b + 1.0) + std::pow(a, 4) * g + 6.0 * a * b * g +
                  4.0 * a * b * b * b * g + 18.0 * a * b * b * g - std::pow(b, 5) -
                  a * a * a * b * b - 7.0 * std::pow(b, 4) - 6.0 * b * b * b -
                  4.0 * a * a * a * b) -
             s1 * q * (e3 - 3.0 * b * b + 3.0 * a * g - 4.0 * b) * (e3 + d);
    case 5:
      return -x3 * (d * d + x2 * g * d * (2.0 * e3 + 3.0 * d) +
                    x * (a * b + a - g * g) * (e3 + d) * (e3 + 3.0 * d) +
                    s1 * q * (e3 + d) * (e3 + d));
    default:
      throw std::out_of_range("coefficient index");
  }
}

cd phi_printed_eval(const CoinParams& p, cd g, cd z) {
  const cd x = z * z;
  cd v{0.0, 0.0};
  for (int j = 5; j >= 0; --j) v = v * g + phi_printed_coeff(p, j, x);
  return v;
}

cd phi_factored_eval(const CoinParams& p, cd g, cd z) {
  const cd a = p.alpha, b = p.beta, c = p.gamma;
  const AuxPolys aux(p);
  const cd M = aux.M(g), P = aux.P(g);
  const cd z2 = z * z;
  const cd A2 = (b + 1.0) * (b + 1.0) - a * c;
  const cd B2 = a * a - (b + 1.0) * c;
  const cd t1 = a * (a * z2 + (g - 1.0) * A2) * (A2 * P + z2 * a * M);
  const cd t2 =
      (b + 1.0) * ((b + 1.0) * z2 + (g - 1.0) * B2) * (B2 * P + z2 * (b + 1.0) * M);
  const cd t3 = ((z2 - c) * g + c) * (B2 * P + z2 * (b + 1.0) * M) * (A2 * P + z2 * a * M);
  return P * (t1 + t2) - t3;
}

PhiPolynomial phi_orthogonal(cd b, cd g) {
  PhiPolynomial out;
  out.source = PhiPolynomial::Source::Orthogonal;
  const cd b2 = b * b;
  // c5(x) = -b^2 (x-1)(x^2 + x(1-3g) + 1)
  out.c[5] = {b2, -3.0 * g * b2, 3.0 * g * b2, -b2};
  out.c[4] = {-b2, 6.0 * g * b2, -9.0 * g * b2, 4.0 * b2};
  out.c[3] = {-2.0 * b * (b + 1.0), 6.0 * b * g, 6.0 * b * g * (b - 1.0),
              2.0 * b * (1.0 - 2.0 * b)};
  out.c[2] = {2.0 * b * (b + 1.0), -2.0 * b * g * (3.0 * b + 4.0), 10.0 * b * g, -4.0 * b};
  out.c[1] = {(b + 1.0) * (b + 1.0), -3.0 * g * (1.0 - b * b), g * (3.0 - 2.0 * b), -1.0};
  out.c[0] = {-(b + 1.0) * (b + 1.0), 2.0 * g * (b + 1.0), -g, cd{}};
  return out;
}

PhiPolynomial phi_orthogonal_for(const CirculantCoin& C) {
  const CoinParams p(C);
  const double s1 = (p.alpha + p.beta + p.gamma + 1.0).real();
  if (s1 > 0.0) return phi_orthogonal(p.beta, p.gamma);
  return phi_orthogonal(-p.beta - 2.0, -p.gamma);
}

PolyRoots quintic_roots(const PhiPolynomial& phi, cd z) {
  return poly_roots(phi.poly_in_g(z));
}

std::vector<AtomCandidate> c5_circle_roots(const PhiPolynomial& phi,
                                           double circle_tol, double cluster_tol) {
  std::vector<AtomCandidate> out;
  std::vector<cd> c5 = phi.coeff_poly(5);
  double scale = 0.0;
  for (const cd& v : c5) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return out;  // degenerate: no quintic term at all

  PolyRoots roots = poly_roots(c5);
  const std::vector<cd> c4 = phi.coeff_poly(4);
  auto dpoly = [](std::vector<cd> c) {
    for (std::size_t k = 1; k < c.size(); ++k) c[k - 1] = static_cast<double>(k) * c[k];
    c.pop_back();
    return c;
  };
  const std::vector<cd> dc5 = dpoly(c5), ddc5 = dpoly(dc5), dc4 = dpoly(c4);

  std::vector<bool> used(roots.roots.size(), false);
  for (std::size_t i = 0; i < roots.roots.size(); ++i) {
    if (used[i]) continue;
    const cd x0 = roots.roots[i];
    if (std::abs(std::abs(x0) - 1.0) > circle_tol) continue;
    int mult = 1;
    for (std::size_t k = i + 1; k < roots.roots.size(); ++k) {
      if (!used[k] && std::abs(roots.roots[k] - x0) < cluster_tol) {
        used[k] = true;
        ++mult;
      }
    }
    AtomCandidate cand;
    cand.x0 = x0 / std::abs(x0);
    cand.theta0 = 0.5 * std::arg(cand.x0);
    cand.multiplicity = mult;
    cd num, den;
    if (mult == 1) {
      poly_eval(c4, cand.x0, &num, nullptr);
      poly_eval(dc5, cand.x0, &den, nullptr);
    } else {
      poly_eval(dc4, cand.x0, &num, nullptr);
      poly_eval(ddc5, cand.x0, &den, nullptr);
    }
    cand.weight = num / (cand.x0 * den);
    out.push_back(cand);
  }
  return out;
}

}  // namespace qwtree
