#include "sl2mag/lie_core.hpp"

#include <algorithm>
#include <cmath>

namespace sl2mag {

double Mat2::max_abs() const {
  return std::max({std::fabs(p11), std::fabs(p12), std::fabs(p21), std::fabs(p22)});
}

Mat2 n_factor(double x) { return {1.0, x, 0.0, 1.0}; }

Mat2 a_factor(double y) {
  const double r = std::sqrt(y);
  return {r, 0.0, 0.0, 1.0 / r};
}

Mat2 k_factor(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return {c, s, -s, c};
}

Mat2 algebra_matrix(const AlgebraVec& X) {
  return {X.c, kSqrt2 * X.a, kSqrt2 * X.b, -X.c};
}

AlgebraVec algebra_from_matrix(const Mat2& m) {
  return {m.p12 / kSqrt2, m.p21 / kSqrt2, 0.5 * (m.p11 - m.p22)};
}

AlgebraVec bracket(const AlgebraVec& X, const AlgebraVec& Y) {
  // [E1,E2] = 2E3, [E2,E3] = 2E2, [E3,E1] = 2E1
  return {2.0 * (X.c * Y.a - X.a * Y.c),
          2.0 * (X.b * Y.c - X.c * Y.b),
          2.0 * (X.a * Y.b - X.b * Y.a)};
}

IwasawaCoord iwasawa_decompose(const Mat2& p, double tol) {
  if (std::fabs(p.det() - 1.0) > tol) {
    throw NonUnitDeterminant("iwasawa_decompose: matrix determinant differs from 1");
  }
  const double w = p.p21 * p.p21 + p.p22 * p.p22;
  IwasawaCoord coord;
  coord.y = 1.0 / w;
  coord.x = (p.p11 * p.p21 + p.p12 * p.p22) / w;
  // e^{i theta} = (p22 - i p21)/sqrt(w); principal value in (-pi, pi].
  coord.theta = std::atan2(-p.p21, p.p22);
  if (coord.theta == -M_PI) coord.theta = M_PI;
  return coord;
}

Mat2 iwasawa_compose(const IwasawaCoord& coord) {
  if (!(coord.y > 0.0)) {
    throw NonpositiveY("iwasawa_compose: y must be positive");
  }
  return n_factor(coord.x) * a_factor(coord.y) * k_factor(coord.theta);
}

Mat2 exp_algebra(const AlgebraVec& X, double t) {
  const Mat2 m = algebra_matrix(X);
  const double det = algebra_det(X);
  const double eps_det = 1e-12 * inner(X, X);
  const Mat2 tm = m * t;
  if (std::fabs(det) <= eps_det) {
    return Mat2::identity() + tm;
  }
  if (det > 0.0) {
    const double d = std::sqrt(det);
    return std::cos(d * t) * Mat2::identity() + (std::sin(d * t) / d) * m;
  }
  const double d = std::sqrt(-det);
  return std::cosh(d * t) * Mat2::identity() + (std::sinh(d * t) / d) * m;
}

Mat2 exp_oracle(const AlgebraVec& X, double t) {
  Mat2 m = algebra_matrix(X) * t;
  // Scale until |m| < 1/2, sum the Taylor series, then square back.
  int squarings = 0;
  double scale = m.max_abs();
  while (scale > 0.5) {
    m = m * 0.5;
    scale *= 0.5;
    ++squarings;
  }
  Mat2 sum = Mat2::identity();
  Mat2 term = Mat2::identity();
  for (int k = 1; k <= 24; ++k) {
    term = term * m * (1.0 / k);
    sum = sum + term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

MobiusClass classify_mobius(const Mat2& p, double eps_tr) {
  const Mat2 id = Mat2::identity();
  if ((p - id).max_abs() < eps_tr || (p + id).max_abs() < eps_tr) {
    return MobiusClass::Identity;
  }
  const double abs_tr = std::fabs(p.trace());
  if (std::fabs(abs_tr - 2.0) <= eps_tr) return MobiusClass::Parabolic;
  return abs_tr < 2.0 ? MobiusClass::Elliptic : MobiusClass::Hyperbolic;
}

const char* to_string(MobiusClass c) {
  switch (c) {
    case MobiusClass::Identity: return "Identity";
    case MobiusClass::Elliptic: return "Elliptic";
    case MobiusClass::Parabolic: return "Parabolic";
    case MobiusClass::Hyperbolic: return "Hyperbolic";
  }
  return "?";
}

}  // namespace sl2mag
