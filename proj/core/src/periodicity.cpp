#include "sl2mag/periodicity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace sl2mag {

namespace {

void require_coprime_positive(int m, int k) {
  if (m <= 0 || k <= 0) throw InvalidRatio("m and k must be positive integers");
  if (std::gcd(m, k) != 1) {
    throw NonCoprimeInput("m and k must be coprime (no silent reduction)");
  }
}

}  // namespace

QuantizedRoots quantized_strength(int m, int k, double sigma) {
  require_coprime_positive(m, k);
  if (m == k) throw DegenerateDenominator("quantized_strength: m = k makes a = -1");
  const double sin_s = std::sin(sigma);
  if (std::fabs(sin_s) < 1e-15) {
    throw std::domain_error("quantized_strength: requires sin sigma != 0");
  }

  QuantizedRoots result;
  result.m = m;
  result.k = k;
  result.sigma = sigma;
  const double ratio = static_cast<double>(m) / k;
  const double a = 1.0 - 2.0 * ratio * ratio;
  result.a = a;

  // 2 (1 - a cos 2 sigma) > 0 whenever |a| < 1, so both roots are real.
  const double radicand = 2.0 * (1.0 - a * std::cos(2.0 * sigma));
  const double root = std::sqrt(radicand);
  const double denom = 0.5 * (1.0 + a);
  const double cos_s = std::cos(sigma);

  for (const double q : {(2.0 * a * cos_s + root) / denom, (2.0 * a * cos_s - root) / denom}) {
    const double abs_qbar = std::fabs(q - 2.0 * cos_s);
    // Roots landing exactly on |qbar| = 2 sin sigma (the sigma = pi/4 "+"
    // root does, for every m/k) describe horocyclic projections and are
    // never periodic; a relative margin keeps roundoff from re-admitting
    // them through the strict inequality.
    const double margin = 1e-9 * (1.0 + abs_qbar + 2.0 * sin_s);
    if (std::fabs(abs_qbar - 2.0 * sin_s) <= margin) {
      result.rejected.push_back({q, "phase boundary (|qbar| = 2 sin sigma)"});
    } else if (abs_qbar > 2.0 * sin_s) {
      result.accepted.push_back(q);
      result.in_gap.push_back(abs_qbar <= 2.0);
    } else {
      result.rejected.push_back(
          {q, "non-rotational phase (|qbar| < 2 sin sigma)"});
    }
  }
  return result;
}

double kajigaya_strength(int m, int k) {
  require_coprime_positive(m, k);
  if (m >= k) throw InvalidRatio("kajigaya_strength: requires m/k < 1");
  const double ratio = static_cast<double>(m) / k;
  return 2.0 / std::sqrt(1.0 - ratio * ratio);
}

double period_relation_residual(int m, int k, double sigma, double q) {
  require_coprime_positive(m, k);
  const MagneticParams params{q, sigma};
  const double qb = params.qbar();
  const double two_sin = 2.0 * params.sin_sigma();
  const double lhs = std::sqrt(qb * qb - two_sin * two_sin);
  const double rhs = (static_cast<double>(m) / k) * std::fabs(qb - 2.0 * params.cos_sigma());
  return std::fabs(lhs - rhs);
}

double phase_period(const MagneticParams& params) {
  const double qb = params.qbar();
  const double two_sin = 2.0 * params.sin_sigma();
  const double disc = qb * qb - two_sin * two_sin;
  if (!(disc > 0.0)) {
    throw NonRotationalPhase("phase_period: requires qbar^2 > 4 sin^2 sigma");
  }
  return 2.0 * M_PI / std::sqrt(disc);
}

ClosureResult detect_closure(const MagneticParams& params, int max_phase_periods,
                             double tol) {
  const double T = phase_period(params);
  const double dtheta = (params.cos_sigma() - 0.5 * params.qbar()) * T + M_PI;

  ClosureResult result;
  double best = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= max_phase_periods; ++n) {
    const double defect = std::fabs(std::remainder(n * dtheta, 2.0 * M_PI));
    best = std::min(best, defect);
    if (defect < tol) {
      result.n_periods = n;
      result.theta_defect = defect;
      return result;
    }
  }
  result.theta_defect = best;
  return result;
}

int legendre_branch_count(int m, int k) {
  require_coprime_positive(m, k);
  if (m >= k) throw InvalidRatio("legendre_branch_count: requires m < k");
  for (int h = 0;; ++h) {
    if (((h + 1) * (k - m)) % (2 * m) == 0) return h;
  }
}

PeriodicityCert certify(int m, int k, double sigma, double tol) {
  QuantizedRoots roots = quantized_strength(m, k, sigma);
  PeriodicityCert cert;
  cert.m = m;
  cert.k = k;
  cert.sigma = sigma;
  cert.a = roots.a;
  cert.rejected = std::move(roots.rejected);
  cert.h = m < k ? legendre_branch_count(m, k) : 0;

  const int window = std::max(4 * k, 2 * m);
  for (std::size_t i = 0; i < roots.accepted.size(); ++i) {
    const double q = roots.accepted[i];
    const MagneticParams params{q, sigma};
    PeriodicityCert::Root entry;
    entry.q = q;
    entry.in_gap = roots.in_gap[i];
    entry.T_phase = phase_period(params);
    const ClosureResult closure = detect_closure(params, window, tol);
    entry.n_periods = closure.n_periods;
    entry.defect = closure.theta_defect;
    entry.T_total = closure.n_periods ? *closure.n_periods * entry.T_phase : 0.0;
    cert.accepted.push_back(entry);
  }
  return cert;
}

}  // namespace sl2mag
