#include "sl2mag/homogeneous.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "sl2mag/geometry.hpp"
#include "sl2mag/numderiv.hpp"

namespace sl2mag {

namespace {

double require_nonzero(const AlgebraVec& X) {
  const double n = norm(X);
  if (!(n > 0.0)) throw ZeroVector("algebra vector is zero");
  return n;
}

bool is_reeb_direction(const AlgebraVec& X, double n) {
  const double eps = 1e-12 * n;
  return std::fabs(X.a + X.b) <= eps && std::fabs(X.c) <= eps;
}

// Least-squares circle through the sample points (Kasa form): minimizes
// sum (x^2 + y^2 + D x + E y + F)^2, linear in (D, E, F).
void fit_circle(const std::vector<HalfPlanePoint>& pts, double& cx, double& cy,
                double& radius) {
  double sxx = 0, sxy = 0, syy = 0, sx = 0, sy = 0, sn = 0;
  double bx = 0, by = 0, b1 = 0;
  for (const auto& p : pts) {
    const double z = p.x * p.x + p.y * p.y;
    sxx += p.x * p.x;
    sxy += p.x * p.y;
    syy += p.y * p.y;
    sx += p.x;
    sy += p.y;
    sn += 1.0;
    bx += z * p.x;
    by += z * p.y;
    b1 += z;
  }
  // Solve [sxx sxy sx; sxy syy sy; sx sy sn] * (D,E,F)^T = -(bx,by,b1)^T
  // by Gaussian elimination on the 3x4 augmented matrix.
  std::array<std::array<double, 4>, 3> m = {{{sxx, sxy, sx, -bx},
                                             {sxy, syy, sy, -by},
                                             {sx, sy, sn, -b1}}};
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
    std::swap(m[col], m[piv]);
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      const double f = m[r][col] / m[col][col];
      for (int c2 = col; c2 < 4; ++c2) m[r][c2] -= f * m[col][c2];
    }
  }
  const double D = m[0][3] / m[0][0];
  const double E = m[1][3] / m[1][1];
  const double F = m[2][3] / m[2][2];
  cx = -0.5 * D;
  cy = -0.5 * E;
  radius = std::sqrt(std::max(cx * cx + cy * cy - F, 0.0));
}

}  // namespace

bool is_homogeneous_geodesic(const AlgebraVec& X) {
  const double n = require_nonzero(X);
  const double tol = 1e-12 * n * n;
  // (a = b) or (c = 0 and a = -b), written as the equivalent product
  // |a - b| * sqrt((a+b)^2 + 2 c^2) = 0 so the tolerance scales cleanly.
  const double fac =
      std::fabs(X.a - X.b) *
      std::sqrt((X.a + X.b) * (X.a + X.b) + 2.0 * X.c * X.c);
  const bool closed_form = fac <= tol;
  // Cross-check against the obstruction tensor: ||U(X,X)|| = 2 * fac.
  const bool via_u = norm(u_tensor(X, X)) <= 2.0 * tol + 1e-15 * n * n;
  if (closed_form != via_u)
    throw std::logic_error(
        "geodesic criteria disagree: closed form vs obstruction tensor");
  return closed_form;
}

bool is_homogeneous_magnetic(const AlgebraVec& X, double q,
                             bool unit_normalize) {
  const double n = require_nonzero(X);
  if (q == 0.0)
    throw std::invalid_argument("magnetic strength q must be nonzero");
  const double scale = unit_normalize ? 1.0 / n : 1.0;
  const double diff = (X.a - X.b) * scale - q / (2.0 * kSqrt2);
  return std::fabs(diff) <= 1e-9 * (1.0 + std::fabs(q));
}

double homogeneous_strength(const AlgebraVec& X) {
  const double n = require_nonzero(X);
  return 2.0 * kSqrt2 * (X.a - X.b) / n;
}

double contact_angle(const AlgebraVec& X) {
  require_nonzero(X);
  // atan2 of (component orthogonal to the Reeb direction, Reeb component)
  // stays exact where acos of the normalized Reeb component would lose
  // half the digits (arguments near +-1).
  const double t = (X.a - X.b) / kSqrt2;
  const AlgebraVec perp{X.a - t / kSqrt2, X.b + t / kSqrt2, X.c};
  return std::atan2(norm(perp), t);
}

double ProjectionConic::implicit_residual(double x, double y) const {
  if (shape == Shape::Circle)
    return std::hypot(x - cx, y - cy) - radius;
  return line_a * x + line_b * y + line_c;
}

ProjectionConic project_exp_curve(const AlgebraVec& X) {
  const double n = require_nonzero(X);
  if (is_reeb_direction(X, n))
    throw DegenerateProjection(
        "exp(tX) projects to the single point i for X along E1 - E2");

  const double a = X.a, b = X.b, c = X.c;
  const double det = algebra_det(X);
  const double eps_det = 1e-12 * n * n;
  const double eps = 1e-12 * n;
  const bool b_zero = std::fabs(b) <= eps;

  ProjectionConic out;
  if (!b_zero) {
    out.kappa = 2.0 * (b > 0 ? 1.0 : -1.0) * (b - a) /
                std::sqrt((a + b) * (a + b) + 2.0 * c * c);
  } else {
    // Direction angle of the projection at s = 0 is frozen along lines:
    // velocity there is (sqrt2 (a+b), 2c), so cos(mu*) = a/sqrt(a^2+2c^2).
    out.kappa = 2.0 * a / std::sqrt(a * a + 2.0 * c * c);
  }
  out.kind = classify_curvature(out.kappa);

  if (b_zero) {
    out.shape = ProjectionConic::Shape::Line;
    if (std::fabs(det) <= eps_det) {
      // X = a E1: the horizontal horocycle y = 1.
      out.line_a = 0.0;
      out.line_b = 1.0;
      out.line_c = -1.0;
    } else {
      // X = a E1 + c E3 (det = -c^2 < 0): sqrt2 |c| x + sgn(c) a (1 - y) = 0.
      const double sc = (c > 0 ? 1.0 : -1.0);
      double A = kSqrt2 * std::fabs(c), B = -sc * a, C = sc * a;
      const double norm = std::hypot(A, B);
      out.line_a = A / norm;
      out.line_b = B / norm;
      out.line_c = C / norm;
    }
    return out;
  }

  out.shape = ProjectionConic::Shape::Circle;
  const bool c_zero = std::fabs(c) <= eps;
  const bool anti = std::fabs(a + b) <= eps;
  if (det > eps_det && !c_zero && !anti) {
    // General elliptic X: no closed form in the source material; sample one
    // full projection period of exp(tX) and fit the circle.
    const AlgebraVec u = X * (1.0 / n);
    const double delta = std::sqrt(algebra_det(u));
    const double t_period = M_PI / delta;
    std::vector<HalfPlanePoint> pts;
    const int N = 64;
    pts.reserve(N);
    for (int i = 0; i < N; ++i) {
      const IwasawaCoord p =
          iwasawa_decompose(exp_algebra(u, t_period * i / N));
      pts.push_back({p.x, p.y});
    }
    fit_circle(pts, out.cx, out.cy, out.radius);
    out.fitted_numerically = true;
    return out;
  }
  // All remaining b != 0 cases share the closed form
  //   (x - c/(sqrt2 b))^2 + (y - (b-a)/(2b))^2 = ((a+b)^2 + 2c^2)/(4b^2),
  // which reduces to each of the quoted det = 0, det > 0 and det < 0
  // special cases.
  out.cx = c / (kSqrt2 * b);
  out.cy = (b - a) / (2.0 * b);
  out.radius = std::sqrt((a + b) * (a + b) + 2.0 * c * c) / (2.0 * std::fabs(b));
  return out;
}

LorentzResidualReport exp_trajectory_check(const AlgebraVec& X, double q,
                                           double s_span, int samples,
                                           double tol) {
  const double n = require_nonzero(X);
  if (std::fabs(n - 1.0) > 1e-9)
    throw std::invalid_argument(
        "exp_trajectory_check requires a unit algebra vector");
  if (samples < 2) throw std::invalid_argument("need at least two samples");

  const auto curve = [&X](double s) {
    return iwasawa_decompose(exp_algebra(X, s));
  };

  LorentzResidualReport rep;
  rep.samples = samples;
  rep.tol = tol;
  for (int i = 0; i < samples; ++i) {
    const double s = s_span * i / (samples - 1);
    const FrameKinematics fk = frame_kinematics_fd(curve, s);
    const FrameVec lorentz = phi_frame(fk.velocity) * q;
    const FrameVec res = fk.acceleration - lorentz;
    rep.max_residual = std::max(rep.max_residual, norm(res));
    rep.max_speed_defect =
        std::max(rep.max_speed_defect, std::fabs(norm(fk.velocity) - 1.0));
  }
  rep.passed = rep.max_residual < tol;
  return rep;
}

}  // namespace sl2mag
