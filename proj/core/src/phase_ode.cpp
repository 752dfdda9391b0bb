#include "sl2mag/phase_ode.hpp"

#include <cmath>

namespace sl2mag {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// Principal value in (-pi, pi].
double principal(double w) {
  double p = std::remainder(w, kTwoPi);
  if (p <= -M_PI) p += kTwoPi;
  return p;
}

}  // namespace

PhaseSolution::PhaseSolution(double p, double r, double w0)
    : p_orig_(p), r_orig_(r), w0_orig_(w0) {
  // Reduce to p >= 0, r >= 0 via w -> w + pi (flips the sign of r) and
  // w -> pi - w (flips the sign of p); track the affine output map
  // w(s) = sign_ * v(s) + offset_.
  sign_ = 1.0;
  offset_ = 0.0;
  double v0 = w0;
  if (r < 0.0) {
    // v = w + pi solves the equation with -r.
    v0 = v0 + M_PI;
    offset_ -= sign_ * M_PI;
    r = -r;
  }
  if (p < 0.0) {
    // v = pi - w solves the equation with -p (and the same r).
    v0 = M_PI - v0;
    offset_ += sign_ * M_PI;
    sign_ = -sign_;
    p = -p;
  }
  p_ = p;
  r_ = r;
  v0_ = v0;

  const double scale = p_ + r_ + 1.0;
  if (r_ == 0.0) {
    regime_ = Regime::Linear;
    return;
  }
  if (std::fabs(p_ - r_ * std::cos(v0_)) <= 1e-14 * scale && p_ <= r_) {
    regime_ = Regime::Equilibrium;
    return;
  }

  if (p_ > r_ && (p_ - r_) > 1e-12 * scale) {
    regime_ = Regime::Rotational;
    omega_ = std::sqrt((p_ - r_) * (p_ + r_));
    cfac_ = std::sqrt((p_ - r_) / (p_ + r_));
    const double v0p = principal(v0_);
    base_ = v0_ - v0p;
    // tan(psi) = tan(v0p/2)/cfac, with psi in (-pi/2, pi/2].
    psi0_ = std::atan2(std::sin(0.5 * v0p), cfac_ * std::cos(0.5 * v0p));
    return;
  }

  if (std::fabs(p_ - r_) <= 1e-12 * scale) {
    regime_ = Regime::Parabolic;
    // Non-equilibrium orbit lives on (2 pi n, 2 pi (n+1)).
    const double n = std::floor(v0_ / kTwoPi);
    turns_ = kTwoPi * n;
    const double v0i = v0_ - turns_;  // in (0, 2 pi)
    ct0_ = std::cos(0.5 * v0i) / std::sin(0.5 * v0i);
    return;
  }

  regime_ = Regime::Dissipative;
  omega_ = std::sqrt((r_ - p_) * (r_ + p_));
  tau_star_ = std::sqrt((r_ - p_) / (r_ + p_));
  const double v0p = principal(v0_);
  base_ = v0_ - v0p;
  const double tau0 = std::tan(0.5 * v0p);
  inside_ = std::fabs(tau0) < tau_star_;
  if (inside_) {
    // tau(s) = -tau* tanh(omega s/2 + u0)
    u0_ = std::atanh(-tau0 / tau_star_);
  } else {
    // tau(s) = -tau* coth(omega s/2 + u0); the orbit crosses the tan pole
    // (v = pi mod 2 pi) exactly when the coth argument crosses zero.
    u0_ = -std::atanh(tau_star_ / tau0);
    const double h0 = u0_ > 0.0 ? 1.0 : 0.0;
    const_c_ = v0p - 2.0 * std::atan(tau0) - kTwoPi * h0;
  }
}

double PhaseSolution::eval_normalized(double s) const {
  switch (regime_) {
    case Regime::Linear:
      return v0_ + p_ * s;
    case Regime::Equilibrium:
      return v0_;
    case Regime::Rotational: {
      const double psi = 0.5 * omega_ * s + psi0_;
      // IEEE remainder reduces psi exactly (no rounding) onto [-pi, pi], so
      // the turn counter recovered from the quotient can never disagree with
      // the atan2 branch at the seam.
      const double psi_c = std::remainder(psi, kTwoPi);
      const double j = std::nearbyint((psi - psi_c) / kTwoPi);
      return base_ + 2.0 * (std::atan2(cfac_ * std::sin(psi_c), std::cos(psi_c)) + kTwoPi * j);
    }
    case Regime::Parabolic:
      // cot(v/2) = ct0 - p s, v/2 in (0, pi).
      return turns_ + 2.0 * std::atan2(1.0, ct0_ - p_ * s);
    case Regime::Dissipative: {
      const double u = 0.5 * omega_ * s + u0_;
      if (inside_) {
        return base_ + 2.0 * std::atan(-tau_star_ * std::tanh(u));
      }
      if (std::fabs(u) < 1e-300) return base_ + const_c_ + M_PI;
      const double tau = -tau_star_ / std::tanh(u);
      const double h = u > 0.0 ? 1.0 : 0.0;
      return base_ + const_c_ + 2.0 * std::atan(tau) + kTwoPi * h;
    }
  }
  return v0_;
}

double PhaseSolution::operator()(double s) const {
  return sign_ * eval_normalized(s) + offset_;
}

}  // namespace sl2mag
