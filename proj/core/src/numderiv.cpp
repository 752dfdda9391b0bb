#include "sl2mag/numderiv.hpp"

#include <cmath>

namespace sl2mag {

double central_derivative(const std::function<double(double)>& f, double t,
                          double h) {
  const double d_h = (f(t + h) - f(t - h)) / (2.0 * h);
  const double d_h2 = (f(t + 0.5 * h) - f(t - 0.5 * h)) / h;
  return (4.0 * d_h2 - d_h) / 3.0;
}

double central_second_derivative(const std::function<double(double)>& f,
                                 double t, double h) {
  const double f0 = f(t);
  const double d_h = (f(t + h) - 2.0 * f0 + f(t - h)) / (h * h);
  const double d_h2 =
      (f(t + 0.5 * h) - 2.0 * f0 + f(t - 0.5 * h)) / (0.25 * h * h);
  return (4.0 * d_h2 - d_h) / 3.0;
}

double unwrap_near(double value, double center) {
  constexpr double kTwoPi = 2.0 * 3.14159265358979323846;
  return center + std::remainder(value - center, kTwoPi);
}

CurveDerivs curve_derivatives(const std::function<IwasawaCoord(double)>& curve,
                              double s, double h_vel, double h_acc) {
  const IwasawaCoord p0 = curve(s);
  const auto x_of = [&](double t) { return curve(t).x; };
  const auto y_of = [&](double t) { return curve(t).y; };
  const auto th_of = [&](double t) {
    return unwrap_near(curve(t).theta, p0.theta);
  };

  CurveDerivs d;
  d.point = p0;
  d.xp = central_derivative(x_of, s, h_vel);
  d.yp = central_derivative(y_of, s, h_vel);
  d.thp = central_derivative(th_of, s, h_vel);
  d.xpp = central_second_derivative(x_of, s, h_acc);
  d.ypp = central_second_derivative(y_of, s, h_acc);
  d.thpp = central_second_derivative(th_of, s, h_acc);
  return d;
}

FrameKinematics frame_kinematics_fd(
    const std::function<IwasawaCoord(double)>& curve, double s, double h_vel,
    double h_acc) {
  const CurveDerivs d = curve_derivatives(curve, s, h_vel, h_acc);
  const double y = d.point.y;
  const double inv2y = 1.0 / (2.0 * y);

  FrameVec v;
  v.v1 = d.xp * inv2y;
  v.v2 = d.yp * inv2y;
  v.v3 = d.thp + v.v1;

  FrameVec vdot;
  vdot.v1 = d.xpp * inv2y - d.xp * d.yp / (2.0 * y * y);
  vdot.v2 = d.ypp * inv2y - d.yp * d.yp / (2.0 * y * y);
  vdot.v3 = d.thpp + vdot.v1;

  FrameKinematics out;
  out.point = d.point;
  out.velocity = v;
  out.acceleration = covariant_along(v, v, vdot);
  return out;
}

}  // namespace sl2mag
