#pragma once

// Finite-difference differentiation utilities for curves in the Iwasawa
// chart.  Velocities use a Richardson-extrapolated central stencil with a
// small step; accelerations use a wider step (second differences amplify
// roundoff as eps/h^2) plus one Richardson level, which keeps the absolute
// error near 1e-9 for order-one data.  Angle samples are re-branched to the
// representative nearest the stencil centre before differencing, so wrapped
// theta values never produce spurious 2*pi jumps.

#include <functional>

#include "sl2mag/geometry.hpp"
#include "sl2mag/lie_core.hpp"

namespace sl2mag {

/// Default step for first-derivative stencils.
inline constexpr double kVelocityStep = 1e-5;
/// Default step for second-derivative stencils (before Richardson halving).
inline constexpr double kAccelStep = 1e-3;

/// Richardson-extrapolated central first derivative of a scalar function:
/// combines steps h and h/2 for an O(h^4) estimate.
double central_derivative(const std::function<double(double)>& f, double t,
                          double h = kVelocityStep);

/// Richardson-extrapolated central second derivative of a scalar function.
double central_second_derivative(const std::function<double(double)>& f,
                                 double t, double h = kAccelStep);

/// Angle representative of `value` nearest to `center` (differs from `value`
/// by an exact multiple of 2*pi).
double unwrap_near(double value, double center);

/// Coordinate derivatives of a curve s -> (x, y, theta).  The stored point
/// carries the curve's own theta value at s (not re-branched).
struct CurveDerivs {
  IwasawaCoord point;
  double xp = 0.0, yp = 0.0, thp = 0.0;     ///< first derivatives
  double xpp = 0.0, ypp = 0.0, thpp = 0.0;  ///< second derivatives
};

/// Differentiates a coordinate curve by finite differences.  Theta samples
/// are unwrapped toward the value at the stencil centre, which is valid as
/// long as |theta'| * h stays well below pi.
CurveDerivs curve_derivatives(const std::function<IwasawaCoord(double)>& curve,
                              double s, double h_vel = kVelocityStep,
                              double h_acc = kAccelStep);

/// Velocity and covariant acceleration of a curve, expressed in the
/// orthonormal frame at the curve point.  Everything is computed from
/// coordinate finite differences plus the closed-form connection table:
///   V = (x'/(2y), y'/(2y), theta' + x'/(2y)),
///   V1' = x''/(2y) - x' y'/(2 y^2),
///   V2' = y''/(2y) - y'^2/(2 y^2),
///   V3' = theta'' + V1',
///   A = V' + nabla_V V (frame Christoffel part).
struct FrameKinematics {
  IwasawaCoord point;
  FrameVec velocity;
  FrameVec acceleration;
};

FrameKinematics frame_kinematics_fd(
    const std::function<IwasawaCoord(double)>& curve, double s,
    double h_vel = kVelocityStep, double h_acc = kAccelStep);

}  // namespace sl2mag
