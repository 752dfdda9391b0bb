#include "sl2mag/geometry.hpp"

#include <cmath>
#include <random>

namespace sl2mag {

double norm(const FrameVec& v) { return std::sqrt(g_frame(v, v)); }

FrameVec coord_to_frame(const IwasawaCoord& base, double dx, double dy, double dtheta) {
  if (!(base.y > 0.0)) throw NonpositiveY("coord_to_frame: base.y must be positive");
  const double half_y = 2.0 * base.y;
  return {dx / half_y, dy / half_y, dtheta + dx / half_y};
}

void frame_to_coord(const IwasawaCoord& base, const FrameVec& v,
                    double& dx, double& dy, double& dtheta) {
  if (!(base.y > 0.0)) throw NonpositiveY("frame_to_coord: base.y must be positive");
  dx = 2.0 * base.y * v.v1;
  dy = 2.0 * base.y * v.v2;
  dtheta = v.v3 - v.v1;
}

namespace {

void check_index(int i) {
  if (i < 1 || i > 3) throw IndexOutOfRange("frame index must be 1, 2 or 3");
}

// nabla_{eps_i} eps_j, rows i, columns j.
constexpr double kNabla[3][3][3] = {
    // i = 1:    eps1            eps2              eps3
    {{0.0, 2.0, 0.0}, {-2.0, 0.0, -1.0}, {0.0, 1.0, 0.0}},
    // i = 2:
    {{0.0, 0.0, 1.0}, {0.0, 0.0, 0.0}, {-1.0, 0.0, 0.0}},
    // i = 3:
    {{0.0, 1.0, 0.0}, {-1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}},
};

// Nonzero curvature components for i < j: R(eps_i, eps_j) eps_k.
constexpr double kCurv12[3][3] = {{0.0, 7.0, 0.0}, {-7.0, 0.0, 0.0}, {0.0, 0.0, 0.0}};
constexpr double kCurv13[3][3] = {{0.0, 0.0, -1.0}, {0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}};
constexpr double kCurv23[3][3] = {{0.0, 0.0, 0.0}, {0.0, 0.0, -1.0}, {0.0, 1.0, 0.0}};

FrameVec from_row(const double row[3]) { return {row[0], row[1], row[2]}; }

double frame_comp(const FrameVec& v, int k) {
  return k == 1 ? v.v1 : (k == 2 ? v.v2 : v.v3);
}

}  // namespace

FrameVec nabla_frame(int i, int j) {
  check_index(i);
  check_index(j);
  return from_row(kNabla[i - 1][j - 1]);
}

FrameVec frame_bracket(int i, int j) {
  check_index(i);
  check_index(j);
  // [eps1, eps2] = -2 eps1 - 2 eps3; the other brackets vanish.
  if (i == 1 && j == 2) return {-2.0, 0.0, -2.0};
  if (i == 2 && j == 1) return {2.0, 0.0, 2.0};
  return {0.0, 0.0, 0.0};
}

FrameVec curvature_frame(int i, int j, int k) {
  check_index(i);
  check_index(j);
  check_index(k);
  if (i == j) return {0.0, 0.0, 0.0};
  const double sign = (i < j) ? 1.0 : -1.0;
  const int lo = std::min(i, j), hi = std::max(i, j);
  const double(*table)[3] = (lo == 1 && hi == 2) ? kCurv12 : (lo == 1 ? kCurv13 : kCurv23);
  return sign * from_row(table[k - 1]);
}

FrameVec nabla_frame_koszul(int i, int j) {
  check_index(i);
  check_index(j);
  // 2<nabla_X Y, Z> = <[X,Y],Z> - <[Y,Z],X> + <[Z,X],Y> for an orthonormal
  // frame with constant structure coefficients.
  auto e = [](int k) {
    FrameVec v{0.0, 0.0, 0.0};
    (k == 1 ? v.v1 : k == 2 ? v.v2 : v.v3) = 1.0;
    return v;
  };
  FrameVec result{0.0, 0.0, 0.0};
  for (int k = 1; k <= 3; ++k) {
    const double twice = g_frame(frame_bracket(i, j), e(k)) -
                         g_frame(frame_bracket(j, k), e(i)) +
                         g_frame(frame_bracket(k, i), e(j));
    result = result + 0.5 * twice * e(k);
  }
  return result;
}

namespace {

// nabla_V of a constant-coefficient frame field W.
FrameVec nabla_const_field(const FrameVec& V, const FrameVec& W) {
  FrameVec result{0.0, 0.0, 0.0};
  for (int j = 1; j <= 3; ++j) {
    for (int i = 1; i <= 3; ++i) {
      result = result + frame_comp(V, j) * frame_comp(W, i) * nabla_frame(j, i);
    }
  }
  return result;
}

}  // namespace

FrameVec curvature_frame_derived(int i, int j, int k) {
  check_index(i);
  check_index(j);
  check_index(k);
  auto e = [](int n) {
    FrameVec v{0.0, 0.0, 0.0};
    (n == 1 ? v.v1 : n == 2 ? v.v2 : v.v3) = 1.0;
    return v;
  };
  // All coefficient fields below are constant, so nabla_const_field applies.
  const FrameVec t1 = nabla_const_field(e(i), nabla_frame(j, k));
  const FrameVec t2 = nabla_const_field(e(j), nabla_frame(i, k));
  const FrameVec t3 = nabla_const_field(frame_bracket(i, j), e(k));
  return t1 - t2 - t3;
}

FrameVec curvature_closed_form(const FrameVec& X, const FrameVec& Y, const FrameVec& Z) {
  const FrameVec xi = xi_frame();
  const FrameVec pX = phi_frame(X), pY = phi_frame(Y), pZ = phi_frame(Z);
  FrameVec r = -g_frame(Y, Z) * X + g_frame(Z, X) * Y;
  FrameVec braces = eta(Z) * eta(X) * Y - eta(Y) * eta(Z) * X +
                    g_frame(Z, X) * eta(Y) * xi - g_frame(Y, Z) * eta(X) * xi -
                    g_frame(Y, pZ) * pX - g_frame(Z, pX) * pY +
                    2.0 * g_frame(X, pY) * pZ;
  return r - 2.0 * braces;
}

FrameVec covariant_along(const FrameVec& V, const FrameVec& W, const FrameVec& Wdot) {
  return Wdot + nabla_const_field(V, W);
}

AlgebraVec u_tensor(const AlgebraVec& X, const AlgebraVec& Y) {
  // Bilinear extension of U(E1,E1) = 2E3, U(E2,E2) = -2E3, U(E1,E3) =
  // -E1 - E2, U(E2,E3) = E1 + E2, U(E1,E2) = U(E3,E3) = 0.
  const double horizontal = -(X.a * Y.c + X.c * Y.a) + (X.b * Y.c + X.c * Y.b);
  const double vertical = 2.0 * (X.a * Y.a - X.b * Y.b);
  return {horizontal, horizontal, vertical};
}

AlgebraVec nabla_leftinvariant(const AlgebraVec& X, const AlgebraVec& Y) {
  return 0.5 * bracket(X, Y) + u_tensor(X, Y);
}

FrameVec phi_frame(const FrameVec& v) { return {-v.v2, v.v1, 0.0}; }

AlgebraVec phi_algebra(const AlgebraVec& X) {
  const double h = -X.c / kSqrt2;
  return {h, h, (X.a + X.b) / kSqrt2};
}

AlgebraVec xi_algebra() { return {1.0 / kSqrt2, -1.0 / kSqrt2, 0.0}; }

FrameVec leftinvariant_to_frame(const AlgebraVec& X, double theta) {
  // Split into the Ad_K-invariant Reeb part and the 2-theta rotating pair
  // (E1+E2)/sqrt2, E3.
  const double w1 = (X.a + X.b) / kSqrt2;
  const double w2 = X.c;
  const double w3 = (X.a - X.b) / kSqrt2;
  const double c = std::cos(2.0 * theta), s = std::sin(2.0 * theta);
  return {w1 * c - w2 * s, w1 * s + w2 * c, w3};
}

AlgebraVec frame_to_leftinvariant(const FrameVec& v, double theta) {
  const double c = std::cos(2.0 * theta), s = std::sin(2.0 * theta);
  const double w1 = v.v1 * c + v.v2 * s;
  const double w2 = -v.v1 * s + v.v2 * c;
  const double w3 = v.v3;
  return {(w1 + w3) / kSqrt2, (w1 - w3) / kSqrt2, w2};
}

SasakianReport verify_sasakian(int point_samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  std::uniform_real_distribution<double> log_y(-2.0, 2.0);
  std::uniform_real_distribution<double> angle(-M_PI, M_PI);
  std::uniform_real_distribution<double> comp(-2.0, 2.0);

  SasakianReport report;
  report.samples = point_samples;
  const FrameVec xi = xi_frame();

  for (int n = 0; n < point_samples; ++n) {
    IwasawaCoord p{coord(rng), std::exp(log_y(rng)), angle(rng)};
    const FrameVec X{comp(rng), comp(rng), comp(rng)};
    const FrameVec Y{comp(rng), comp(rng), comp(rng)};

    // phi^2 = -I + eta (x) xi
    const FrameVec phi2 = phi_frame(phi_frame(X)) - (-1.0 * X + eta(X) * xi);
    report.max_phi_square = std::max(report.max_phi_square, norm(phi2));

    // Compatibility g(phi X, phi Y) = g(X, Y) - eta(X) eta(Y)
    const double compat = g_frame(phi_frame(X), phi_frame(Y)) -
                          (g_frame(X, Y) - eta(X) * eta(Y));
    report.max_compat = std::max(report.max_compat, std::fabs(compat));

    // deta(X,Y) = g(phi X, Y) with deta evaluated from the coordinate
    // 2-form: eta = dtheta + dx/(2y) gives deta = dx ^ dy/(4y^2) under the
    // half-convention deta(X,Y) = (X eta(Y) - Y eta(X) - eta([X,Y]))/2.
    double Xdx, Xdy, Xdth, Ydx, Ydy, Ydth;
    frame_to_coord(p, X, Xdx, Xdy, Xdth);
    frame_to_coord(p, Y, Ydx, Ydy, Ydth);
    const double deta = (Xdx * Ydy - Xdy * Ydx) / (4.0 * p.y * p.y);
    report.max_deta = std::max(report.max_deta, std::fabs(deta - g_frame(phi_frame(X), Y)));

    // nabla_X xi = phi X
    const FrameVec nxi = covariant_along(X, xi, {0.0, 0.0, 0.0}) - phi_frame(X);
    report.max_nabla_xi = std::max(report.max_nabla_xi, norm(nxi));

    // (nabla_X phi) Y = -g(X,Y) xi + eta(Y) X
    const FrameVec nphi = covariant_along(X, phi_frame(Y), {0.0, 0.0, 0.0}) -
                          phi_frame(covariant_along(X, Y, {0.0, 0.0, 0.0})) -
                          (-g_frame(X, Y) * xi + eta(Y) * X);
    report.max_nabla_phi = std::max(report.max_nabla_phi, norm(nphi));
  }

  report.max_residual = std::max({report.max_phi_square, report.max_compat,
                                  report.max_deta, report.max_nabla_xi,
                                  report.max_nabla_phi});
  return report;
}

double deta_fd_residual(int samples, double h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  std::uniform_real_distribution<double> log_y(-1.5, 1.5);
  std::uniform_real_distribution<double> angle(-M_PI, M_PI);
  std::uniform_real_distribution<double> comp(-2.0, 2.0);

  // eta evaluated on the coordinate-constant extension of (dx, dy, dtheta).
  auto eta_at = [](const IwasawaCoord& p, double dx, double, double dtheta) {
    return dtheta + dx / (2.0 * p.y);
  };

  double worst = 0.0;
  for (int n = 0; n < samples; ++n) {
    IwasawaCoord p{coord(rng), std::exp(log_y(rng)), angle(rng)};
    const FrameVec X{comp(rng), comp(rng), comp(rng)};
    const FrameVec Y{comp(rng), comp(rng), comp(rng)};
    double Xdx, Xdy, Xdth, Ydx, Ydy, Ydth;
    frame_to_coord(p, X, Xdx, Xdy, Xdth);
    frame_to_coord(p, Y, Ydx, Ydy, Ydth);

    // Coordinate-constant extensions commute, so
    // deta(X,Y) = (X[eta(Y)] - Y[eta(X)])/2 with central differences.
    auto shift = [&](double t, double ux, double uy, double uth) {
      return IwasawaCoord{p.x + t * ux, p.y + t * uy, p.theta + t * uth};
    };
    const double x_of_etaY = (eta_at(shift(h, Xdx, Xdy, Xdth), Ydx, Ydy, Ydth) -
                              eta_at(shift(-h, Xdx, Xdy, Xdth), Ydx, Ydy, Ydth)) /
                             (2.0 * h);
    const double y_of_etaX = (eta_at(shift(h, Ydx, Ydy, Ydth), Xdx, Xdy, Xdth) -
                              eta_at(shift(-h, Ydx, Ydy, Ydth), Xdx, Xdy, Xdth)) /
                             (2.0 * h);
    const double deta_fd = 0.5 * (x_of_etaY - y_of_etaX);
    worst = std::max(worst, std::fabs(deta_fd - g_frame(phi_frame(X), Y)));
  }
  return worst;
}

}  // namespace sl2mag
