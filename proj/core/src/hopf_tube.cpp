#include "sl2mag/hopf_tube.hpp"

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <cmath>
#include <limits>

#include "sl2mag/geometry.hpp"
#include "sl2mag/numderiv.hpp"

namespace sl2mag {

struct HopfTube::Impl {
  virtual ~Impl() = default;
  virtual bool analytic() const = 0;
  virtual double umin() const = 0;
  virtual double umax() const = 0;
  virtual HalfPlanePoint at(double u) const = 0;
  virtual void vel(double u, double& xp, double& yp) const = 0;
  virtual double curvature(double u) const = 0;
  virtual double lift_theta(double u) const = 0;
};

namespace {

struct AnalyticImpl final : HopfTube::Impl {
  RiemannianCircle base;
  double theta0;
  double mu0;

  AnalyticImpl(const RiemannianCircle& b, double th0)
      : base(b), theta0(th0), mu0(b.mu(0.0)) {}

  bool analytic() const override { return true; }
  double umin() const override { return -std::numeric_limits<double>::infinity(); }
  double umax() const override { return std::numeric_limits<double>::infinity(); }
  HalfPlanePoint at(double u) const override { return base.at(u); }
  void vel(double u, double& xp, double& yp) const override {
    base.velocity(u, xp, yp);
  }
  double curvature(double) const override { return base.curvature(); }
  double lift_theta(double u) const override {
    // theta' = -x'/(2y) = -cos(mu) and mu' = k - 2 cos(mu) give
    // theta = theta0 - (k u - (mu(u) - mu(0)))/2 on both branches.
    return theta0 - 0.5 * (base.curvature() * u - (base.mu(u) - mu0));
  }
};

using Spline = boost::math::interpolators::cardinal_cubic_b_spline<double>;

struct SplineImpl final : HopfTube::Impl {
  Spline sx, sy, sth;
  double u0 = 0.0, du = 0.0;
  std::size_t n = 0;

  bool analytic() const override { return false; }
  // Guard band: endpoint spline derivatives are one-sided estimates.
  double umin() const override { return u0 + 2.0 * du; }
  double umax() const override { return u0 + (static_cast<double>(n) - 3.0) * du; }
  HalfPlanePoint at(double u) const override { return {sx(u), sy(u)}; }
  void vel(double u, double& xp, double& yp) const override {
    xp = sx.prime(u);
    yp = sy.prime(u);
  }
  double curvature(double u) const override {
    return signed_curvature_any(sx(u), sy(u), sx.prime(u), sy.prime(u),
                                sx.double_prime(u), sy.double_prime(u));
  }
  double lift_theta(double u) const override { return sth(u); }
};

}  // namespace

HopfTube::HopfTube(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

HopfTube::HopfTube(const RiemannianCircle& base, double theta0)
    : impl_(std::make_shared<AnalyticImpl>(base, theta0)) {}

HopfTube HopfTube::from_samples(const std::vector<HalfPlanePoint>& pts,
                                double u0, double du, double theta0) {
  if (pts.size() < 8)
    throw std::invalid_argument("HopfTube::from_samples: need >= 8 samples");
  if (!(du > 0.0))
    throw std::invalid_argument("HopfTube::from_samples: du must be positive");
  const std::size_t n = pts.size();
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(pts[i].y > 0.0))
      throw std::invalid_argument("HopfTube::from_samples: base must have y > 0");
    xs[i] = pts[i].x;
    ys[i] = pts[i].y;
  }
  auto impl = std::make_shared<SplineImpl>();
  impl->u0 = u0;
  impl->du = du;
  impl->n = n;
  impl->sx = Spline(xs.data(), n, u0, du);
  impl->sy = Spline(ys.data(), n, u0, du);

  // Lift angle: cumulative Simpson integration of -x'/(2y) on the spline.
  const auto integrand = [&impl](double u) {
    return -impl->sx.prime(u) / (2.0 * impl->sy(u));
  };
  std::vector<double> th(n);
  th[0] = theta0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double acc = 0.0;
    const int sub = 4;
    for (int j = 0; j < sub; ++j) {
      const double a = u0 + du * (static_cast<double>(i) + static_cast<double>(j) / sub);
      const double h = du / sub;
      acc += (h / 6.0) * (integrand(a) + 4.0 * integrand(a + 0.5 * h) +
                          integrand(a + h));
    }
    th[i + 1] = th[i] + acc;
  }
  impl->sth = Spline(th.data(), n, u0, du);
  return HopfTube(std::shared_ptr<const Impl>(std::move(impl)));
}

bool HopfTube::analytic_base() const { return impl_->analytic(); }
double HopfTube::u_min() const { return impl_->umin(); }
double HopfTube::u_max() const { return impl_->umax(); }
HalfPlanePoint HopfTube::base_point(double u) const { return impl_->at(u); }
void HopfTube::base_velocity(double u, double& xp, double& yp) const {
  impl_->vel(u, xp, yp);
}
double HopfTube::base_curvature(double u) const { return impl_->curvature(u); }
double HopfTube::lift_theta(double u) const { return impl_->lift_theta(u); }

IwasawaCoord HopfTube::lift_point(double u) const {
  const HalfPlanePoint p = impl_->at(u);
  return {p.x, p.y, impl_->lift_theta(u)};
}

IwasawaCoord HopfTube::surface_point(double t, double u) const {
  IwasawaCoord p = lift_point(u);
  p.theta += t;
  return p;
}

std::function<IwasawaCoord(double)> horizontal_lift(const RiemannianCircle& beta,
                                                    double theta0) {
  HopfTube tube(beta, theta0);
  return [tube](double u) { return tube.lift_point(u); };
}

double tube_mean_curvature(const HopfTube& tube, double u) {
  return tube.mean_curvature(u);
}

const char* to_string(CmcTubeClass c) {
  switch (c) {
    case CmcTubeClass::MinimalGeodesicTube: return "minimal-tube-over-geodesic";
    case CmcTubeClass::EquidistantTube: return "cmc-tube-over-equidistant";
    case CmcTubeClass::HorocycleTube: return "cmc-tube-over-horocycle";
    case CmcTubeClass::HopfTorus: return "hopf-torus";
  }
  return "?";
}

CmcTubeClass classify_cmc_tube(double kappa, double eps) {
  const double k2 = kappa * kappa;
  if (k2 <= eps) return CmcTubeClass::MinimalGeodesicTube;
  if (std::fabs(k2 - 4.0) <= eps) return CmcTubeClass::HorocycleTube;
  return k2 > 4.0 ? CmcTubeClass::HopfTorus : CmcTubeClass::EquidistantTube;
}

TubeGeodesicReport tube_geodesic_residual(
    const std::function<IwasawaCoord(double)>& gamma, double s_span,
    int samples, double tol) {
  if (samples < 2) throw std::invalid_argument("need at least two samples");
  TubeGeodesicReport rep;
  rep.samples = samples;
  rep.tol = tol;
  for (int i = 0; i < samples; ++i) {
    const double s = s_span * i / (samples - 1);
    const FrameKinematics fk = frame_kinematics_fd(gamma, s);
    const FrameVec& A = fk.acceleration;
    const double hpart = std::hypot(fk.velocity.v1, fk.velocity.v2);
    double tangential, normal;
    if (hpart < 1e-9) {
      // Fibre curve: no preferred horizontal direction; the whole
      // acceleration must vanish for a fibre geodesic.
      tangential = norm(A);
      normal = 0.0;
    } else {
      const FrameVec that{fk.velocity.v1 / hpart, fk.velocity.v2 / hpart, 0.0};
      const FrameVec nhat = phi_frame(that);
      tangential = std::max(std::fabs(g_frame(A, that)),
                            std::fabs(g_frame(A, xi_frame())));
      normal = std::fabs(g_frame(A, nhat));
    }
    rep.max_tangential = std::max(rep.max_tangential, tangential);
    rep.max_normal = std::max(rep.max_normal, normal);
  }
  rep.passed = rep.max_tangential < tol;
  return rep;
}

double gauss_curvature_f1(const HopfTube& tube, double u, double v, double h) {
  // Metric coefficients of the chart F1(u, v) = (x(u), y(u), v), sampled
  // from the ambient metric (not from the closed-form chart expression).
  const auto metric = [&tube](double uu, double vv, int which) {
    const HalfPlanePoint p = tube.base_point(uu);
    double xp, yp;
    tube.base_velocity(uu, xp, yp);
    const IwasawaCoord base{p.x, p.y, vv};
    const FrameVec fu = coord_to_frame(base, xp, yp, 0.0);
    const FrameVec fv = coord_to_frame(base, 0.0, 0.0, 1.0);
    switch (which) {
      case 0: return g_frame(fu, fu);  // E
      case 1: return g_frame(fu, fv);  // F
      default: return g_frame(fv, fv); // G
    }
  };
  const auto E = [&metric](double uu, double vv) { return metric(uu, vv, 0); };
  const auto F = [&metric](double uu, double vv) { return metric(uu, vv, 1); };
  const auto G = [&metric](double uu, double vv) { return metric(uu, vv, 2); };

  const auto d_u = [h](const auto& f, double uu, double vv) {
    return central_derivative([&](double t) { return f(t, vv); }, uu, h);
  };
  const auto d_v = [h](const auto& f, double uu, double vv) {
    return central_derivative([&](double t) { return f(uu, t); }, vv, h);
  };
  const auto d_uu = [h](const auto& f, double uu, double vv) {
    return central_second_derivative([&](double t) { return f(t, vv); }, uu, h);
  };
  const auto d_vv = [h](const auto& f, double uu, double vv) {
    return central_second_derivative([&](double t) { return f(uu, t); }, vv, h);
  };
  const auto d_uv = [h](const auto& f, double uu, double vv) {
    return (f(uu + h, vv + h) - f(uu + h, vv - h) - f(uu - h, vv + h) +
            f(uu - h, vv - h)) /
           (4.0 * h * h);
  };

  const double Ev = E(u, v), Fv = F(u, v), Gv = G(u, v);
  const double E_u = d_u(E, u, v), E_v = d_v(E, u, v), E_vv = d_vv(E, u, v);
  const double F_u = d_u(F, u, v), F_v = d_v(F, u, v), F_uv = d_uv(F, u, v);
  const double G_u = d_u(G, u, v), G_v = d_v(G, u, v), G_uu = d_uu(G, u, v);

  const auto det3 = [](double a11, double a12, double a13, double a21,
                       double a22, double a23, double a31, double a32,
                       double a33) {
    return a11 * (a22 * a33 - a23 * a32) - a12 * (a21 * a33 - a23 * a31) +
           a13 * (a21 * a32 - a22 * a31);
  };
  const double m1 = det3(-0.5 * E_vv + F_uv - 0.5 * G_uu, 0.5 * E_u,
                         F_u - 0.5 * E_v, F_v - 0.5 * G_u, Ev, Fv, 0.5 * G_v,
                         Fv, Gv);
  const double m2 = det3(0.0, 0.5 * E_v, 0.5 * G_u, 0.5 * E_v, Ev, Fv,
                         0.5 * G_u, Fv, Gv);
  const double denom = Ev * Gv - Fv * Fv;
  return (m1 - m2) / (denom * denom);
}

TubeSecondForm tube_second_form_fd(const HopfTube& tube, double t, double u) {
  // u-line: the horizontal lift shifted along the fibre by t.
  const auto uline = [&tube, t](double s) { return tube.surface_point(t, s); };
  const FrameKinematics ku = frame_kinematics_fd(uline, u);
  const double hpart = std::hypot(ku.velocity.v1, ku.velocity.v2);
  const FrameVec that{ku.velocity.v1 / hpart, ku.velocity.v2 / hpart, 0.0};
  const FrameVec nhat = phi_frame(that);

  // Fibre line through the same point.
  const auto tline = [&tube, u](double s) { return tube.surface_point(s, u); };
  const FrameKinematics kt = frame_kinematics_fd(tline, t);

  TubeSecondForm out;
  out.h_tt = g_frame(ku.acceleration, nhat);
  out.h_xixi = g_frame(kt.acceleration, nhat);
  // Mixed term: nabla_{T} xi of the constant-component field xi along the
  // u-line, through the connection table.
  const FrameVec dxi = covariant_along(that, xi_frame(), FrameVec{});
  out.h_txi = g_frame(dxi, nhat);
  return out;
}

}  // namespace sl2mag
