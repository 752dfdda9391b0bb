#include "sl2mag/trajectories.hpp"

#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>

namespace sl2mag {

namespace {

// Relative tolerance for the degenerate lines qbar = -+ 2 sin sigma; matches
// the det-dispatch convention of the exponential.
bool near(double a, double b, double scale) { return std::fabs(a - b) <= 1e-12 * scale; }

}  // namespace

PhaseCase classify_phase(const MagneticParams& params) {
  const double qb = params.qbar();
  const double two_sin = 2.0 * params.sin_sigma();
  const double scale = std::fabs(qb) + two_sin + 1.0;
  if (near(qb, -two_sin, scale)) return PhaseCase::Case1;
  if (near(qb, two_sin, scale)) return PhaseCase::Case2;
  return (qb * qb > two_sin * two_sin) ? PhaseCase::Case3 : PhaseCase::Case4;
}

const char* to_string(PhaseCase c) {
  switch (c) {
    case PhaseCase::Case1: return "case1";
    case PhaseCase::Case2: return "case2";
    case PhaseCase::Case3: return "case3";
    case PhaseCase::Case4: return "case4";
  }
  return "?";
}

PhaseSolution make_phase_solution(const MagneticParams& params, double U0) {
  return PhaseSolution(params.qbar(), 2.0 * params.sin_sigma(), U0);
}

PhaseSolution make_phase_solution(const MagneticParams& params) {
  const double U0 = classify_phase(params) == PhaseCase::Case2 ? M_PI_2 : 0.0;
  return make_phase_solution(params, U0);
}

double phase_solution(const MagneticParams& params, double s) {
  return make_phase_solution(params)(s);
}

double phase_solution(const MagneticParams& params, PhaseCase expected, double s) {
  const PhaseCase actual = classify_phase(params);
  if (actual != expected) {
    throw CaseMismatch(std::string("phase_solution: parameters are ") + to_string(actual) +
                       ", caller expected " + to_string(expected));
  }
  return phase_solution(params, s);
}

StateDeriv lorentz_rhs(const TrajectoryState& state, const MagneticParams& params) {
  if (!(state.y > 0.0)) throw NonpositiveY("lorentz_rhs: y must be positive");
  const double sin_s = params.sin_sigma();
  const double cos_u = std::cos(state.U);
  StateDeriv d;
  d.dx = 2.0 * state.y * sin_s * cos_u;
  d.dy = 2.0 * state.y * sin_s * std::sin(state.U);
  d.dtheta = params.cos_sigma() - sin_s * cos_u;
  d.dU = params.qbar() - 2.0 * sin_s * cos_u;
  return d;
}

ReconstructedTrajectory::ReconstructedTrajectory(const MagneticParams& params,
                                                 const ReconstructionParams& recon)
    : params_(params), recon_(recon), phase_(make_phase_solution(params)) {
  if (recon_.rbar == 0.0) {
    throw NonpositiveYReached("reconstruct: rbar must be nonzero");
  }
  reeb_ = std::fabs(params_.sin_sigma()) < 1e-15;
  const double y0 = reeb_ ? recon_.rbar * params_.qbar() : at(0.0).y;
  if (!(y0 > 0.0)) {
    throw NonpositiveYReached("reconstruct: rbar sign inconsistent with the qbar branch");
  }
}

TrajectoryState ReconstructedTrajectory::at(double s) const {
  if (reeb_) {
    return reeb_trajectory(recon_.x0, recon_.rbar * params_.qbar(), recon_.theta0,
                           params_.cos_sigma() > 0.0 ? +1 : -1, s);
  }
  const double sin_s = params_.sin_sigma();
  const double qb = params_.qbar();
  const double U = phase_(s);
  TrajectoryState st;
  st.s = s;
  st.U = U;
  st.y = recon_.rbar * (qb - 2.0 * sin_s * std::cos(U));
  st.x = 2.0 * recon_.rbar * sin_s * std::sin(U) + recon_.x0;
  st.theta = (params_.cos_sigma() - 0.5 * qb) * s + 0.5 * U + recon_.theta0;
  return st;
}

double ReconstructedTrajectory::projected_curvature() const {
  return params_.qbar() / params_.sin_sigma();
}

void ReconstructedTrajectory::projection_derivatives(double s, double& xp, double& yp,
                                                     double& xpp, double& ypp) const {
  if (reeb_) {
    xp = yp = xpp = ypp = 0.0;
    return;
  }
  const double sin_s = params_.sin_sigma();
  const double U = phase_(s);
  const double Up = phase_.derivative(s);       // U' = qbar - 2 sin(sigma) cos U
  const double Upp = 2.0 * sin_s * std::sin(U) * Up;
  const double amp = 2.0 * recon_.rbar * sin_s;
  xp = amp * std::cos(U) * Up;
  yp = amp * std::sin(U) * Up;
  xpp = amp * (std::cos(U) * Upp - std::sin(U) * Up * Up);
  ypp = amp * (std::sin(U) * Upp + std::cos(U) * Up * Up);
}

TrajectoryState reconstruct_curve(const MagneticParams& params,
                                  const ReconstructionParams& recon, double s) {
  return ReconstructedTrajectory(params, recon).at(s);
}

LegendreTrajectory::LegendreTrajectory(double q, double r, double x0, double theta0)
    : q_(q), r_(r), x0_(x0), theta0_(theta0),
      mu_(std::fabs(q), 2.0, 0.0) {
  if (!(std::fabs(q) > 2.0)) {
    throw StrengthTooSmall("legendre_trajectory: requires |q| > 2");
  }
}

TrajectoryState LegendreTrajectory::at(double s) const {
  const double abs_q = std::fabs(q_);
  const double mu = mu_(s);
  TrajectoryState st;
  st.s = s;
  st.U = mu;
  st.x = r_ * std::sin(mu) + x0_;
  st.y = r_ * (0.5 * abs_q - std::cos(mu));
  st.theta = 0.5 * mu - 0.5 * abs_q * s + theta0_;
  return st;
}

double LegendreTrajectory::period() const {
  return 2.0 * M_PI / std::sqrt(q_ * q_ - 4.0);
}

TrajectoryState legendre_trajectory(double q, double r, double x0, double theta0, double s) {
  return LegendreTrajectory(q, r, x0, theta0).at(s);
}

TrajectoryState reeb_trajectory(double x0, double y0, double theta0, int sign, double s) {
  TrajectoryState st;
  st.s = s;
  st.x = x0;
  st.y = y0;
  st.theta = theta0 + (sign >= 0 ? s : -s);
  st.U = 0.0;
  return st;
}

// ---------------------------------------------------------------------------
// Oracle integrator

namespace {

using OracleState = std::array<double, 6>;  // x, y, theta, x', y', theta'

// The Lorentz equation componentwise in Iwasawa coordinates.  eta is read
// from the state each call; the third component of the equation is eta' = 0,
// which translates to the theta'' line below.
struct LorentzFull {
  double q;

  void operator()(const OracleState& v, OracleState& dvds, double /*s*/) const {
    const double y = v[1], xp = v[3], yp = v[4], thp = v[5];
    if (!(y > 1e-12)) {
      throw StepUnderflow("integrate_oracle: y collapsed to the boundary");
    }
    const double eta = thp + xp / (2.0 * y);
    const double xpp = 2.0 * xp * yp / y + (2.0 * eta - q) * yp;
    const double ypp = (yp * yp - xp * xp) / y + (q - 2.0 * eta) * xp;
    const double thpp = -xpp / (2.0 * y) + xp * yp / (2.0 * y * y);
    dvds = {xp, yp, thp, xpp, ypp, thpp};
  }
};

}  // namespace

std::vector<OracleSample> integrate_oracle(const TrajectoryState& init,
                                           const MagneticParams& params,
                                           double s_end, double tol, int n_samples) {
  namespace odeint = boost::numeric::odeint;
  if (n_samples < 2) n_samples = 2;

  const double sin_s = params.sin_sigma();
  OracleState v{};
  v[0] = init.x;
  v[1] = init.y;
  v[2] = init.theta;
  v[3] = 2.0 * init.y * sin_s * std::cos(init.U);
  v[4] = 2.0 * init.y * sin_s * std::sin(init.U);
  v[5] = params.cos_sigma() - sin_s * std::cos(init.U);

  LorentzFull rhs{params.q};
  auto stepper = odeint::make_controlled(tol, tol, odeint::runge_kutta_dopri5<OracleState>());

  std::vector<OracleSample> out;
  out.reserve(n_samples);
  auto record = [&](double s) {
    out.push_back({s, v[0], v[1], v[2], v[3], v[4], v[5]});
  };
  record(0.0);

  double s = 0.0;
  const double ds = s_end / (n_samples - 1);
  try {
    for (int i = 1; i < n_samples; ++i) {
      const double target = i * ds;
      odeint::integrate_adaptive(stepper, rhs, v, s, target, std::min(1e-3, ds));
      s = target;
      record(s);
    }
  } catch (const StepUnderflow&) {
    throw;
  } catch (const std::exception& e) {
    throw StepUnderflow(std::string("integrate_oracle: stepper failed: ") + e.what());
  }
  return out;
}

ConservationReport conservation_drift(const std::vector<OracleSample>& samples) {
  ConservationReport report;
  if (samples.empty()) return report;
  auto invariants = [](const OracleSample& smp) {
    const double v1 = smp.xp / (2.0 * smp.y);
    const double v2 = smp.yp / (2.0 * smp.y);
    const double v3 = smp.thetap + v1;
    return std::pair<double, double>{std::sqrt(v1 * v1 + v2 * v2 + v3 * v3), v3};
  };
  const auto [speed0, eta0] = invariants(samples.front());
  for (const auto& smp : samples) {
    const auto [speed, et] = invariants(smp);
    report.max_speed_drift = std::max(report.max_speed_drift, std::fabs(speed - speed0));
    report.max_eta_drift = std::max(report.max_eta_drift, std::fabs(et - eta0));
  }
  return report;
}

}  // namespace sl2mag
