#pragma once

// One-parameter-subgroup trajectories s -> exp(s X): geodesic and magnetic
// criteria on the algebra, contact angle, closed-form projection conics in
// the half-plane, and a finite-difference Lorentz-equation residual check.
//
// Conventions: X = a E1 + b E2 + c E3 in the orthonormal algebra basis; the
// curve is reparametrized by arclength (the left-invariant speed of exp(tX)
// is ||X||), so every criterion below is stated for the normalized vector.

#include <stdexcept>
#include <vector>

#include "sl2mag/hyperbolic.hpp"
#include "sl2mag/lie_core.hpp"

namespace sl2mag {

struct ZeroVector : std::domain_error {
  using std::domain_error::domain_error;
};
struct DegenerateProjection : std::domain_error {
  using std::domain_error::domain_error;
};

/// True iff exp(tX) is a geodesic: (a = b) or (c = 0 and a = -b).  Also
/// evaluates the equivalent obstruction U(X,X) = 0; throws std::logic_error
/// if the two closed forms ever disagree (they cannot, up to tolerance).
bool is_homogeneous_geodesic(const AlgebraVec& X);

/// True iff the arclength reparametrization of exp(tX) is a contact magnetic
/// trajectory of strength q: after normalization, a - b = q/(2 sqrt 2).
/// Set `unit_normalize = false` to test the raw components instead.
bool is_homogeneous_magnetic(const AlgebraVec& X, double q,
                             bool unit_normalize = true);

/// The strength for which unit-speed exp(sX) is magnetic: q = 2 sqrt2 (a-b)
/// evaluated on X/||X||.  (Zero means the curve is a homogeneous geodesic
/// candidate, not a genuine magnetic curve.)
double homogeneous_strength(const AlgebraVec& X);

/// Contact angle sigma in [0, pi]: cos sigma = (a - b)/(sqrt2 ||X||).
double contact_angle(const AlgebraVec& X);

/// Implicit conic traced by pi(exp(tX)) in the half-plane.
struct ProjectionConic {
  enum class Shape { Circle, Line };
  Shape shape = Shape::Circle;
  CircleKind kind = CircleKind::Geodesic;

  // Circle data: (x - cx)^2 + (y - cy)^2 = radius^2.
  double cx = 0.0, cy = 0.0, radius = 0.0;
  // Line data: A x + B y + C = 0, normalized to A^2 + B^2 = 1.
  double line_a = 0.0, line_b = 0.0, line_c = 0.0;

  /// Signed curvature of the projection with respect to its traversal
  /// orientation; equals 2 sgn(b) (b - a)/sqrt((a+b)^2 + 2 c^2) when b != 0.
  double kappa = 0.0;
  /// True when the conic was obtained by a numeric least-squares circle fit
  /// (general det X > 0 with no closed form) rather than a closed form.
  bool fitted_numerically = false;

  /// Signed implicit-equation defect at (x, y): for circles the distance to
  /// the circle |(x,y) - center| - radius, for lines the normalized
  /// A x + B y + C.
  double implicit_residual(double x, double y) const;
};

/// Case split on det X (negative of the Killing-quadratic c^2 + 2ab) and on
/// b = 0, returning the closed-form conic of the projected one-parameter
/// subgroup.  Throws DegenerateProjection when X is proportional to the Reeb
/// direction E1 - E2 (the projection is the single point i).
ProjectionConic project_exp_curve(const AlgebraVec& X);

/// Finite-difference verification that arclength-parametrized exp(sX)
/// solves the Lorentz equation nabla_{g'} g' = q phi g'.
struct LorentzResidualReport {
  double max_residual = 0.0;   ///< max |A - q phi V| over the samples
  double max_speed_defect = 0.0;  ///< max ||V| - 1| (sanity)
  int samples = 0;
  double tol = 0.0;
  bool passed = false;  ///< max_residual < tol
};

/// Samples s in [0, s_span]; pre: ||X|| = 1 within 1e-9 (use
/// AlgebraVec scaling or homogeneous_strength conventions to normalize).
LorentzResidualReport exp_trajectory_check(const AlgebraVec& X, double q,
                                           double s_span = 1.5,
                                           int samples = 25,
                                           double tol = 1e-7);

}  // namespace sl2mag
