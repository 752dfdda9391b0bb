// The Lorentz system nabla_{gamma'} gamma' = q phi gamma' on SL(2,R) for
// unit-speed trajectories with constant contact angle sigma:
// reduced first-order system in (x, y, theta, U), closed-form phase solutions,
// curve reconstruction, the Legendre and Reeb special cases, and an
// independent full-coordinate adaptive integrator used as oracle.
//
// Conventions: qbar = q - 2 cos sigma; the frame velocity is
//   (sin sigma cos U, sin sigma sin U, cos sigma)
// and the phase obeys U' = qbar - 2 sin sigma cos U.  theta is kept unwrapped
// (universal cover); reduction mod 2 pi happens only in closure tests and
// export.

#pragma once

#include <stdexcept>
#include <vector>

#include "sl2mag/geometry.hpp"
#include "sl2mag/phase_ode.hpp"

namespace sl2mag {

struct MagneticParams {
  double q = 0.0;
  double sigma = M_PI_2;  // in [0, pi]

  double cos_sigma() const { return std::cos(sigma); }
  double sin_sigma() const { return std::sin(sigma); }
  // Effective strength of the projected Kaehler magnetic curve; always
  // recomputed, never stored.
  double qbar() const { return q - 2.0 * cos_sigma(); }
};

// Case 1: qbar = -2 sin sigma; Case 2: qbar = +2 sin sigma;
// Case 3: qbar^2 > 4 sin^2 sigma (rotational); Case 4: qbar^2 < 4 sin^2 sigma.
enum class PhaseCase { Case1, Case2, Case3, Case4 };

struct CaseMismatch : std::logic_error {
  using std::logic_error::logic_error;
};
struct StrengthTooSmall : std::domain_error {
  using std::domain_error::domain_error;
};
struct NonpositiveYReached : std::domain_error {
  using std::domain_error::domain_error;
};
struct StepUnderflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

PhaseCase classify_phase(const MagneticParams& params);
const char* to_string(PhaseCase c);

// Phase solver with the published initial conditions: U(0) = pi/2 in Case 2,
// U(0) = 0 otherwise.  The overload taking U0 serves callers with their own
// initial phase.
PhaseSolution make_phase_solution(const MagneticParams& params);
PhaseSolution make_phase_solution(const MagneticParams& params, double U0);

// U(s); the checked overload throws CaseMismatch if the caller's expected
// case disagrees with the parameters.
double phase_solution(const MagneticParams& params, double s);
double phase_solution(const MagneticParams& params, PhaseCase expected, double s);

// ---------------------------------------------------------------------------
// Reduced system state

struct TrajectoryState {
  double s = 0.0;
  double x = 0.0, y = 1.0;
  double theta = 0.0;  // unwrapped
  double U = 0.0;      // phase
};

struct StateDeriv {
  double dx = 0.0, dy = 0.0, dtheta = 0.0, dU = 0.0;
};

// x' = 2y sin sigma cos U, y' = 2y sin sigma sin U,
// theta' = cos sigma - sin sigma cos U, U' = qbar - 2 sin sigma cos U.
StateDeriv lorentz_rhs(const TrajectoryState& state, const MagneticParams& params);

// ---------------------------------------------------------------------------
// Closed-form reconstruction
//
//   y(s) = rbar (qbar - 2 sin sigma cos U(s))
//   x(s) = 2 rbar sin sigma sin U(s) + x0
//   theta(s) = (cos sigma - qbar/2) s + U(s)/2 + theta0

struct ReconstructionParams {
  double rbar = 1.0;  // nonzero; sign must make y > 0 on the orbit branch
  double x0 = 0.0;
  double theta0 = 0.0;
};

class ReconstructedTrajectory {
 public:
  // Throws NonpositiveYReached if rbar's sign is inconsistent with the qbar
  // branch (y(0) <= 0).  sigma in {0, pi} dispatches to the Reeb line with
  // y = rbar * qbar.
  ReconstructedTrajectory(const MagneticParams& params, const ReconstructionParams& recon);

  TrajectoryState at(double s) const;
  const MagneticParams& params() const { return params_; }
  const ReconstructionParams& recon() const { return recon_; }
  const PhaseSolution& phase() const { return phase_; }
  // Curvature of the projected curve in H^2(-4): qbar/sin sigma.
  double projected_curvature() const;
  // Exact first and second s-derivatives of the projection (x(s), y(s)),
  // differentiating the closed form through U'(s).  On the Reeb branch the
  // projection is a single point, so every derivative is zero.
  void projection_derivatives(double s, double& xp, double& yp, double& xpp,
                              double& ypp) const;

 private:
  MagneticParams params_;
  ReconstructionParams recon_;
  PhaseSolution phase_;
  bool reeb_ = false;
};

TrajectoryState reconstruct_curve(const MagneticParams& params,
                                  const ReconstructionParams& recon, double s);

// ---------------------------------------------------------------------------
// Special trajectories

// Legendre (sigma = pi/2) closed-projection branch, |q| > 2:
//   (x, y) = (r sin mu + x0, r(|q|/2 - cos mu)),
//   theta = mu/2 - (|q|/2) s + theta0, mu' = |q| - 2 cos mu, mu(0) = 0.
// TrajectoryState.U carries mu.  Throws StrengthTooSmall if |q| <= 2.
class LegendreTrajectory {
 public:
  LegendreTrajectory(double q, double r, double x0, double theta0);
  TrajectoryState at(double s) const;
  double mu(double s) const { return mu_(s); }
  // Fundamental period of the projected circle: 2 pi/sqrt(q^2 - 4).
  double period() const;

 private:
  double q_, r_, x0_, theta0_;
  PhaseSolution mu_;
};

TrajectoryState legendre_trajectory(double q, double r, double x0, double theta0, double s);

// Reeb integral curve (sigma = 0 or pi): (x0, y0, theta0 ± s).
TrajectoryState reeb_trajectory(double x0, double y0, double theta0, int sign, double s);

// ---------------------------------------------------------------------------
// Independent oracle: adaptive Dormand-Prince on the full second-order
// system in (x, y, theta), i.e. the Lorentz equation componentwise with no
// phase reduction.  eta = theta' + x'/(2y) is read from the state, never
// assumed constant; its drift is a quality check on the closed forms.

struct OracleSample {
  double s = 0.0;
  double x = 0.0, y = 1.0, theta = 0.0;
  double xp = 0.0, yp = 0.0, thetap = 0.0;  // first derivatives
};

// Integrates from the reduced initial state (velocities derived from U and
// sigma) to s_end with per-step tolerance tol, sampling n_samples points
// evenly (endpoints included).  Throws StepUnderflow if the stepper stalls
// or y leaves (0, inf).
std::vector<OracleSample> integrate_oracle(const TrajectoryState& init,
                                           const MagneticParams& params,
                                           double s_end, double tol = 1e-10,
                                           int n_samples = 201);

struct ConservationReport {
  double max_speed_drift = 0.0;  // | |gamma'| - speed(0) |
  double max_eta_drift = 0.0;    // | eta(gamma') - eta(0) |
};

ConservationReport conservation_drift(const std::vector<OracleSample>& samples);

}  // namespace sl2mag
