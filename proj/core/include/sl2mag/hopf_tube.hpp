#pragma once

// Hopf tubes: the surface F(t, u) = lift(u) * k(t) over a unit-speed base
// curve beta in the half-plane, where lift is a horizontal lift of beta
// (eta(lift') = 0).  In the (t, u) chart the induced metric is flat
// (dt^2 + du^2), the u-lines are horizontal unit curves, the t-lines are
// Reeb fibres, and the mean curvature equals half the base curvature.

#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

#include "sl2mag/hyperbolic.hpp"
#include "sl2mag/lie_core.hpp"

namespace sl2mag {

class HopfTube {
 public:
  /// Tube over an analytic constant-curvature base through theta = theta0
  /// at u = 0.  The lift is in closed form:
  ///   theta_hat(u) = theta0 - (k u - (mu(u) - mu(0)))/2.
  explicit HopfTube(const RiemannianCircle& base, double theta0 = 0.0);

  /// Tube over a sampled unit-speed base: pts[i] = beta(u0 + i du),
  /// uniformly spaced in arclength.  Interpolates with cubic splines and
  /// integrates the lift angle numerically; used for curves without a
  /// closed-form curvature (negative controls).  Needs at least 8 points.
  /// The lift angle is anchored at the first sample: theta_hat(u0) = theta0.
  static HopfTube from_samples(const std::vector<HalfPlanePoint>& pts,
                               double u0, double du, double theta0 = 0.0);

  bool analytic_base() const;
  /// Valid u-range ([-inf, inf] for analytic bases; trimmed to the sample
  /// window minus a spline guard band otherwise).
  double u_min() const;
  double u_max() const;

  HalfPlanePoint base_point(double u) const;
  void base_velocity(double u, double& xp, double& yp) const;
  /// Signed curvature kappa(u) of the base.
  double base_curvature(double u) const;

  /// Fibre angle of the horizontal lift.
  double lift_theta(double u) const;
  IwasawaCoord lift_point(double u) const;
  /// F(t, u): the lift shifted along the fibre by t.
  IwasawaCoord surface_point(double t, double u) const;

  /// kappa(u)/2.
  double mean_curvature(double u) const { return 0.5 * base_curvature(u); }

  struct Impl;  // opaque; defined in the implementation file

 private:
  explicit HopfTube(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

/// The horizontal lift of beta through theta0, as a curve u -> SL2R.
std::function<IwasawaCoord(double)> horizontal_lift(
    const RiemannianCircle& beta, double theta0);

/// kappa(u)/2 (the tube's mean curvature in the ambient space).
double tube_mean_curvature(const HopfTube& tube, double u);

// ---------------------------------------------------------------------------
// Constant-mean-curvature classification, keyed on kappa^2 against
// {0} / (0,4) / {4} / (4, inf).

enum class CmcTubeClass {
  MinimalGeodesicTube,  ///< kappa = 0: minimal tube over a geodesic
  EquidistantTube,      ///< 0 < kappa^2 < 4: CMC tube over an equidistant
  HorocycleTube,        ///< kappa^2 = 4: CMC tube over a horocycle
  HopfTorus             ///< kappa^2 > 4: embedded torus over a closed circle
};
const char* to_string(CmcTubeClass c);

CmcTubeClass classify_cmc_tube(double kappa, double eps = 1e-9);

// ---------------------------------------------------------------------------
// Geodesic decomposition of a curve presumed to lie on a Hopf tube

/// Splits the finite-difference covariant acceleration of gamma into
/// tube-tangential (span{T-hat, xi}) and tube-normal (N-hat = phi T-hat)
/// parts, where T-hat is the normalized horizontal part of the velocity.
/// Magnetic trajectories are tube geodesics: the tangential part vanishes.
struct TubeGeodesicReport {
  double max_tangential = 0.0;  ///< max over samples of |<A, T-hat>|, |<A, xi>|
  double max_normal = 0.0;      ///< max |<A, N-hat>| (= |q| sin sigma for magnetic curves)
  int samples = 0;
  double tol = 0.0;
  bool passed = false;
};

TubeGeodesicReport tube_geodesic_residual(
    const std::function<IwasawaCoord(double)>& gamma, double s_span,
    int samples = 33, double tol = 1e-7);

// ---------------------------------------------------------------------------
// Numerical cross-checks of the induced geometry

/// Gauss curvature of the induced metric computed in the F1(u, v) chart
/// (u, v) -> (x(u), y(u), v): metric coefficients are sampled from the
/// ambient metric as two-variable functions and fed to the Brioschi formula
/// with finite-difference partials.  Flatness means |K| < 1e-7.
double gauss_curvature_f1(const HopfTube& tube, double u, double v = 0.0,
                          double h = 1e-3);

/// Second fundamental form of the tube at F(t, u) with respect to the unit
/// normal N-hat = phi T-hat, from finite-difference accelerations of the
/// chart lines: expected values h(T,T) = kappa(u), h(T,xi) = 1,
/// h(xi,xi) = 0.
struct TubeSecondForm {
  double h_tt = 0.0;
  double h_txi = 0.0;
  double h_xixi = 0.0;
};

TubeSecondForm tube_second_form_fd(const HopfTube& tube, double t, double u);

}  // namespace sl2mag
