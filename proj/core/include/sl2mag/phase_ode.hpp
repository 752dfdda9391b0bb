// Closed-form, branch-tracked solution of the scalar phase equation
//
//     w'(s) = p - r cos w(s),   w(0) = w0,
//
// which drives both the trajectory phase (p = qbar, r = 2 sin sigma) and the
// direction angle of constant-curvature curves in the half-plane (p = k,
// r = 2).  Solved by the tan-half-angle substitution; continuity across tan
// poles is enforced analytically (pole counting), never by numerical
// unwrapping of samples.
//
// Regimes (after the symmetries w -> w + pi (r -> -r) and w -> pi - w
// (p -> -p) reduce to p >= 0, r >= 0):
//   Linear       r = 0:       w = w0 + p s
//   Rotational   p > r:       w winds monotonically, rate omega = sqrt(p^2-r^2)
//   Parabolic    p = r > 0:   cot(w/2) = cot(w0/2) - p s between equilibria
//   Dissipative  p < r:       tanh orbit inside the separatrix, coth outside
//   Equilibrium  cos w0 = p/r exactly: w constant

#pragma once

#include <cmath>

namespace sl2mag {

class PhaseSolution {
 public:
  enum class Regime { Linear, Rotational, Parabolic, Dissipative, Equilibrium };

  PhaseSolution(double p, double r, double w0);

  double operator()(double s) const;
  // w'(s) = p - r cos w(s), evaluated analytically.
  double derivative(double s) const { return p_orig_ - r_orig_ * std::cos((*this)(s)); }

  Regime regime() const { return regime_; }
  // Winding rate for the Rotational regime: w(s + 2 pi/omega) = w(s) +- 2 pi.
  double omega() const { return omega_; }

  double p() const { return p_orig_; }
  double r() const { return r_orig_; }
  double w0() const { return w0_orig_; }

 private:
  double eval_normalized(double s) const;

  double p_orig_, r_orig_, w0_orig_;
  // Normalized problem (p_ >= 0, r_ >= 0) and the affine output map
  // w(s) = sign_ * v(s) + offset_ where v solves the normalized equation.
  double p_ = 0.0, r_ = 0.0, v0_ = 0.0;
  double sign_ = 1.0, offset_ = 0.0;
  Regime regime_ = Regime::Linear;
  double omega_ = 0.0;

  // Rotational precomputation
  double cfac_ = 0.0;   // sqrt((p-r)/(p+r))
  double psi0_ = 0.0;   // initial angle of the tan argument
  double base_ = 0.0;   // branch offset of v0
  // Parabolic precomputation
  double turns_ = 0.0;  // 2 pi floor(v0/(2 pi))
  double ct0_ = 0.0;    // cot of the reduced initial half-angle
  // Dissipative precomputation
  double tau_star_ = 0.0;  // separatrix tan(w*/2)
  double u0_ = 0.0;
  bool inside_ = false;    // |tan(v0/2)| < tau_star
  double const_c_ = 0.0;   // branch constant for the coth orbit
};

}  // namespace sl2mag
