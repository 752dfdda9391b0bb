// Analytic periodicity machinery: quantization of the magnetic strength by
// rationals m/k, the Kajigaya criterion at sigma = pi/2, phase periods,
// Legendre branch counts, and a closure detector based purely on the
// theta-advance per phase period (the arbitration oracle for every analytic
// formula in this module).

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sl2mag/trajectories.hpp"

namespace sl2mag {

struct InvalidRatio : std::domain_error {
  using std::domain_error::domain_error;
};
struct DegenerateDenominator : std::domain_error {
  using std::domain_error::domain_error;
};
struct NonRotationalPhase : std::domain_error {
  using std::domain_error::domain_error;
};
struct NonCoprimeInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Quantization

struct RejectedRoot {
  double q = 0.0;
  std::string reason;
};

struct QuantizedRoots {
  int m = 0, k = 0;
  double sigma = 0.0;
  double a = 0.0;  // 1 - 2 (m/k)^2
  // Roots with |qbar| > 2 sin sigma (strictly rotational phase).
  std::vector<double> accepted;
  // Accepted roots lying in the gap 2 sin sigma < |qbar| <= 2, where the
  // projected circle closes but the source demanded |qbar| > 2.
  std::vector<bool> in_gap;
  std::vector<RejectedRoot> rejected;
};

// Solves q = (2 a cos sigma +- sqrt(2 (1 - a cos 2 sigma)))/((1 + a)/2) with
// a = 1 - 2 (m/k)^2.  Requires coprime positive m, k with sin sigma != 0;
// throws DegenerateDenominator when m = k and NonCoprimeInput otherwise.
QuantizedRoots quantized_strength(int m, int k, double sigma);

// |q| = 2/sqrt(1 - (m/k)^2) for 0 < m < k coprime; always > 2.
double kajigaya_strength(int m, int k);

// Residual of the period-consistency relation
//   sqrt(qbar^2 - 4 sin^2 sigma) = (m/k) |qbar - 2 cos sigma|,
// which every quantized root must satisfy.  (The absolute value reads k as a
// signed integer so the negative-strength branch obeys the same relation.)
double period_relation_residual(int m, int k, double sigma, double q);

// ---------------------------------------------------------------------------
// Periods and closure

// T = 2 pi/sqrt(qbar^2 - 4 sin^2 sigma); throws NonRotationalPhase at or
// below the boundary qbar^2 = 4 sin^2 sigma.
double phase_period(const MagneticParams& params);

struct ClosureResult {
  // Smallest n <= max_phase_periods with theta matched mod 2 pi after n
  // phase periods; empty if the trajectory never closes in the window.
  std::optional<int> n_periods;
  // |n Delta_theta mod 2 pi| at the reported n, or the window minimum when
  // no closure was found.
  double theta_defect = 0.0;
};

// Uses only the closed-form advance Delta_theta per phase period
//   (cos sigma - qbar/2) T_phase + pi  (mod 2 pi).
ClosureResult detect_closure(const MagneticParams& params, int max_phase_periods,
                             double tol = 1e-8);

// Smallest h >= 0 such that (h + 1)(k - m)/m is an even integer; the number
// of extra projection periods a Legendre trajectory needs to close is h + 1.
int legendre_branch_count(int m, int k);

// ---------------------------------------------------------------------------
// Aggregate certificate (drives the scan command)

struct PeriodicityCert {
  int m = 0, k = 0;
  double sigma = 0.0;
  double a = 0.0;

  struct Root {
    double q = 0.0;
    double T_phase = 0.0;
    std::optional<int> n_periods;
    double T_total = 0.0;  // n_periods * T_phase when closed
    double defect = 0.0;
    bool in_gap = false;
  };
  std::vector<Root> accepted;
  std::vector<RejectedRoot> rejected;
  int h = 0;  // Legendre branch count for (m, k)
};

// Quantizes, then validates every accepted root through detect_closure with
// a window of max(4k, 2m) phase periods.
PeriodicityCert certify(int m, int k, double sigma, double tol = 1e-8);

}  // namespace sl2mag
