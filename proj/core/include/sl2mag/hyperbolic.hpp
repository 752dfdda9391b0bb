// Geometry of the base H^2(-4): Poincare half-plane with metric
// (dx^2 + dy^2)/(4y^2), signed curvature of unit-speed curves, Riemannian
// circles (constant-curvature curves) with their classification, Kaehler
// magnetic curves, and the Cayley transform to the unit disk.
//
// A unit-speed curve with direction angle mu (x' = 2y cos mu, y' = 2y sin mu)
// has constant curvature k exactly when mu' = k - 2 cos mu, the same phase
// equation that drives the trajectory layer.

#pragma once

#include <stdexcept>
#include <utility>

#include "sl2mag/phase_ode.hpp"

namespace sl2mag {

struct HalfPlanePoint {
  double x = 0.0;
  double y = 1.0;  // y > 0
};

enum class CircleKind { ClosedCircle, Horocycle, Equidistant, Geodesic };
const char* to_string(CircleKind c);

// |k| > 2 closed circle, |k| = 2 horocycle, 0 < |k| < 2 equidistant,
// k = 0 geodesic; equality tested with eps.
CircleKind classify_curvature(double k, double eps = 1e-9);

struct NotUnitSpeed : std::domain_error {
  using std::domain_error::domain_error;
};
struct InvalidRadius : std::domain_error {
  using std::domain_error::domain_error;
};

// kappa = (x'y'' - x''y')/(4y^2) + x'/y for a unit-speed curve.
// Throws NotUnitSpeed unless (x'^2 + y'^2)/(4y^2) = 1 within 1e-8.
double signed_curvature(double x, double y, double xp, double yp, double xpp, double ypp);

// Signed curvature for an arbitrary regular parametrization:
// kappa = 2y (x'y'' - x''y')/v^3 + 2x'/v with v = |(x', y')|.
double signed_curvature_any(double x, double y, double xp, double yp, double xpp, double ypp);

// ---------------------------------------------------------------------------
// Constant-curvature curves

// A unit-speed constant-curvature curve, in one of two closed-form branches:
//  - phase branch (generic): x = 2 rho sin mu + a, y = rho (k - 2 cos mu)
//    with mu solving mu' = k - 2 cos mu; the Euclidean circle
//    (x - a)^2 + (y - rho k)^2 = (2 rho)^2, closed iff |k| > 2 with
//    mu-period 2 pi/sqrt(k^2 - 4);
//  - line branch (mu frozen at an equilibrium, cos mu* = k/2, |k| <= 2):
//    x = cot(mu*) y + const, covering equidistant lines, vertical geodesics
//    and horizontal horocycles.
class RiemannianCircle {
 public:
  static RiemannianCircle phase_branch(double k, double rho, double a, double mu0);
  static RiemannianCircle line_branch(double k, HalfPlanePoint start, double mu_star);

  HalfPlanePoint at(double s) const;
  double mu(double s) const;
  // Analytic derivatives of the unit-speed parametrization.
  void velocity(double s, double& xp, double& yp) const;
  void acceleration(double s, double& xpp, double& ypp) const;

  double curvature() const { return k_; }
  CircleKind kind() const { return classify_curvature(k_); }
  // Arclength period of the closed branch; throws InvalidRadius-free logic:
  // only meaningful for |k| > 2 (throws std::domain_error otherwise).
  double period() const;

  bool is_line() const { return line_; }
  // Euclidean circle data (phase branch): center (a, rho k), radius 2|rho|.
  double center_x() const { return a_; }
  double center_y() const { return rho_ * k_; }
  double radius() const { return 2.0 * std::fabs(rho_); }
  // Line data (line branch): coefficients of A x + B y + C = 0.
  void line_coefficients(double& A, double& B, double& C) const;

 private:
  RiemannianCircle(double k, double rho, double a, double mu0, bool line,
                   HalfPlanePoint start, double mu_star);

  double k_ = 0.0;
  // phase branch
  double rho_ = 0.0, a_ = 0.0;
  PhaseSolution mu_;
  // line branch
  bool line_ = false;
  HalfPlanePoint start_{};
  double mu_star_ = 0.0;
};

// The Appendix constructor: r > 0 is the Euclidean radius parameter, a the
// horizontal center.  |k| > 2 (and the non-equilibrium |k| = 2 orbits) take
// the phase branch; 0 < |k| < 2 returns the equidistant line through
// (a, 2r) with sin mu* > 0; k = 0 the vertical geodesic x = a.  Throws
// InvalidRadius if r <= 0.
RiemannianCircle riemannian_circle(double k, double r, double a, double mu0 = M_PI);

// The Kaehler magnetic curve of strength qbar through init with initial
// direction angle dir: the constant-curvature curve with kappa = qbar.
RiemannianCircle kahler_magnetic_project(double qbar, HalfPlanePoint init, double dir);

// Cayley transform f(z) = (z - i)/(z + i); maps the half-plane onto the unit
// disk, (0, 1) to the origin.
std::pair<double, double> cayley_to_disk(const HalfPlanePoint& p);

}  // namespace sl2mag
