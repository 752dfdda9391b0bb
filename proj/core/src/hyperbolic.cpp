#include "sl2mag/hyperbolic.hpp"

#include <cmath>

namespace sl2mag {

const char* to_string(CircleKind c) {
  switch (c) {
    case CircleKind::ClosedCircle: return "closed-circle";
    case CircleKind::Horocycle: return "horocycle";
    case CircleKind::Equidistant: return "equidistant";
    case CircleKind::Geodesic: return "geodesic";
  }
  return "?";
}

CircleKind classify_curvature(double k, double eps) {
  const double ak = std::fabs(k);
  if (ak <= eps) return CircleKind::Geodesic;
  if (std::fabs(ak - 2.0) <= eps) return CircleKind::Horocycle;
  return ak > 2.0 ? CircleKind::ClosedCircle : CircleKind::Equidistant;
}

double signed_curvature(double /*x*/, double y, double xp, double yp,
                        double xpp, double ypp) {
  const double speed_sq = (xp * xp + yp * yp) / (4.0 * y * y);
  if (std::fabs(speed_sq - 1.0) > 1e-8) {
    throw NotUnitSpeed("signed_curvature: curve is not unit speed");
  }
  return (xp * ypp - xpp * yp) / (4.0 * y * y) + xp / y;
}

double signed_curvature_any(double /*x*/, double y, double xp, double yp,
                            double xpp, double ypp) {
  const double v = std::hypot(xp, yp);
  if (!(v > 0.0)) throw NotUnitSpeed("signed_curvature_any: zero velocity");
  return 2.0 * y * (xp * ypp - xpp * yp) / (v * v * v) + 2.0 * xp / v;
}

RiemannianCircle::RiemannianCircle(double k, double rho, double a, double mu0,
                                   bool line, HalfPlanePoint start, double mu_star)
    : k_(k), rho_(rho), a_(a), mu_(k, 2.0, mu0), line_(line), start_(start),
      mu_star_(mu_star) {}

RiemannianCircle RiemannianCircle::phase_branch(double k, double rho, double a, double mu0) {
  if (rho * (k - 2.0 * std::cos(mu0)) <= 0.0) {
    throw InvalidRadius("phase_branch: rho (k - 2 cos mu0) must be positive (y > 0)");
  }
  return RiemannianCircle(k, rho, a, mu0, false, HalfPlanePoint{}, 0.0);
}

RiemannianCircle RiemannianCircle::line_branch(double k, HalfPlanePoint start, double mu_star) {
  if (!(start.y > 0.0)) throw InvalidRadius("line_branch: start.y must be positive");
  if (std::fabs(2.0 * std::cos(mu_star) - k) > 1e-9 * (std::fabs(k) + 3.0)) {
    throw InvalidRadius("line_branch: mu_star is not an equilibrium angle for k");
  }
  return RiemannianCircle(k, 0.0, 0.0, 0.0, true, start, mu_star);
}

HalfPlanePoint RiemannianCircle::at(double s) const {
  if (line_) {
    const double sin_m = std::sin(mu_star_), cos_m = std::cos(mu_star_);
    HalfPlanePoint p;
    if (std::fabs(sin_m) < 1e-15) {
      // Horizontal horocycle line.
      p.y = start_.y;
      p.x = start_.x + 2.0 * start_.y * cos_m * s;
    } else {
      p.y = start_.y * std::exp(2.0 * s * sin_m);
      p.x = start_.x + (cos_m / sin_m) * (p.y - start_.y);
    }
    return p;
  }
  const double m = mu_(s);
  return {2.0 * rho_ * std::sin(m) + a_, rho_ * (k_ - 2.0 * std::cos(m))};
}

double RiemannianCircle::mu(double s) const { return line_ ? mu_star_ : mu_(s); }

void RiemannianCircle::velocity(double s, double& xp, double& yp) const {
  const double m = mu(s);
  const double y = at(s).y;
  xp = 2.0 * y * std::cos(m);
  yp = 2.0 * y * std::sin(m);
}

void RiemannianCircle::acceleration(double s, double& xpp, double& ypp) const {
  const double m = mu(s);
  const double y = at(s).y;
  double xp, yp;
  velocity(s, xp, yp);
  const double mdot = line_ ? 0.0 : (k_ - 2.0 * std::cos(m));
  xpp = 2.0 * (yp * std::cos(m) - y * std::sin(m) * mdot);
  ypp = 2.0 * (yp * std::sin(m) + y * std::cos(m) * mdot);
}

double RiemannianCircle::period() const {
  if (!(std::fabs(k_) > 2.0) || line_) {
    throw std::domain_error("period: only closed circles (|k| > 2) have one");
  }
  return 2.0 * M_PI / std::sqrt(k_ * k_ - 4.0);
}

void RiemannianCircle::line_coefficients(double& A, double& B, double& C) const {
  if (!line_) throw std::domain_error("line_coefficients: phase branch is a circle");
  const double sin_m = std::sin(mu_star_), cos_m = std::cos(mu_star_);
  if (std::fabs(sin_m) < 1e-15) {
    A = 0.0;
    B = 1.0;
    C = -start_.y;
  } else {
    // x = cot(mu*) y + x0
    A = 1.0;
    B = -cos_m / sin_m;
    C = -(start_.x + B * start_.y);
  }
}

RiemannianCircle riemannian_circle(double k, double r, double a, double mu0) {
  if (!(r > 0.0)) throw InvalidRadius("riemannian_circle: r must be positive");
  const CircleKind kind = classify_curvature(k);
  if (kind == CircleKind::Geodesic) {
    return RiemannianCircle::line_branch(k, {a, 2.0 * r}, M_PI_2);
  }
  if (kind == CircleKind::Equidistant) {
    // The Appendix line form x = cot(mu*) y + x0 with the growing branch.
    return RiemannianCircle::line_branch(k, {a, 2.0 * r}, std::acos(0.5 * k));
  }
  // Closed circles and horocycle circles: signed radius parameter keeps
  // y = rho (k - 2 cos mu) positive for either sign of k.
  const double rho = k >= 0.0 ? r : -r;
  double m0 = mu0;
  if (std::fabs(rho * (k - 2.0 * std::cos(m0))) < 1e-12) {
    m0 = mu0 + M_PI;  // nudge off the horocycle equilibrium
  }
  return RiemannianCircle::phase_branch(k, rho, a, m0);
}

RiemannianCircle kahler_magnetic_project(double qbar, HalfPlanePoint init, double dir) {
  if (!(init.y > 0.0)) throw InvalidRadius("kahler_magnetic_project: init.y must be positive");
  const double denom = qbar - 2.0 * std::cos(dir);
  if (std::fabs(denom) < 1e-9 * (std::fabs(qbar) + 3.0)) {
    // dir sits at an equilibrium of the direction angle: line branch.
    return RiemannianCircle::line_branch(qbar, init, dir);
  }
  const double rho = init.y / denom;
  const double a = init.x - 2.0 * rho * std::sin(dir);
  return RiemannianCircle::phase_branch(qbar, rho, a, dir);
}

std::pair<double, double> cayley_to_disk(const HalfPlanePoint& p) {
  const double denom = p.x * p.x + (p.y + 1.0) * (p.y + 1.0);
  return {(p.x * p.x + p.y * p.y - 1.0) / denom, -2.0 * p.x / denom};
}

}  // namespace sl2mag
