// Rational quantization of the magnetic strength, phase periods, closure
// detection, and the Legendre branch count.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "sl2mag/periodicity.hpp"

using namespace sl2mag;

TEST_CASE("quantized roots at the worked example") {
  // (m, k, sigma) = (1, 3, pi/3): a = 7/9 and the two roots are exactly
  // 11/4 and -1.
  const QuantizedRoots roots = quantized_strength(1, 3, M_PI / 3.0);
  CHECK(roots.m == 1);
  CHECK(roots.k == 3);
  CHECK(std::fabs(roots.a - 7.0 / 9.0) < 1e-15);
  REQUIRE(roots.accepted.size() == 2);
  std::vector<double> sorted = roots.accepted;
  std::sort(sorted.begin(), sorted.end());
  CHECK(std::fabs(sorted[0] - (-1.0)) < 1e-12);
  CHECK(std::fabs(sorted[1] - 2.75) < 1e-12);
  CHECK(roots.rejected.empty());
  // qbar = 2.75 - 1 = 1.75 <= 2 and qbar = -2 both sit in the closing gap.
  REQUIRE(roots.in_gap.size() == 2);
  CHECK(roots.in_gap[0]);
  CHECK(roots.in_gap[1]);
}

TEST_CASE("quantized roots satisfy the period relation") {
  const double sigmas[] = {M_PI / 6.0, M_PI / 3.0, 2.0 * M_PI / 5.0, M_PI_2};
  for (int k = 2; k <= 9; ++k) {
    for (int m = 1; m < k; ++m) {
      if (std::gcd(m, k) != 1) continue;
      for (const double sigma : sigmas) {
        const QuantizedRoots roots = quantized_strength(m, k, sigma);
        for (const double q : roots.accepted) {
          CHECK(period_relation_residual(m, k, sigma, q) < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("boundary roots at sigma equal pi over four are rejected") {
  // At sigma = pi/4 the "+" root is q = 2 sqrt 2 for every m/k, which puts
  // qbar exactly on |qbar| = 2 sin sigma; it must be rejected by reason.
  for (const auto& [m, k] : {std::pair{1, 3}, std::pair{2, 5}, std::pair{3, 7}}) {
    const QuantizedRoots roots = quantized_strength(m, k, M_PI / 4.0);
    bool saw_boundary = false;
    for (const RejectedRoot& rej : roots.rejected) {
      if (rej.reason.find("phase boundary") != std::string::npos) {
        saw_boundary = true;
        CHECK(std::fabs(rej.q - 2.0 * std::sqrt(2.0)) < 1e-9);
      }
    }
    CHECK(saw_boundary);
  }
}

TEST_CASE("quantization validates its inputs") {
  CHECK_THROWS_AS(quantized_strength(2, 4, M_PI / 3.0), NonCoprimeInput);
  CHECK_THROWS_AS(quantized_strength(1, 1, M_PI / 3.0), DegenerateDenominator);
  CHECK_THROWS_AS(quantized_strength(0, 3, M_PI / 3.0), InvalidRatio);
  CHECK_THROWS_AS(quantized_strength(-1, 3, M_PI / 3.0), InvalidRatio);
  CHECK_THROWS_AS(quantized_strength(1, 3, 0.0), std::domain_error);
  CHECK_THROWS_AS(quantized_strength(1, 3, M_PI), std::domain_error);
}

TEST_CASE("kajigaya strength matches the legendre quantization") {
  CHECK(std::fabs(kajigaya_strength(1, 3) - 2.0 / std::sqrt(1.0 - 1.0 / 9.0)) <
        1e-15);
  CHECK_THROWS_AS(kajigaya_strength(2, 4), NonCoprimeInput);
  // At sigma = pi/2 the accepted quantized strengths are +-kajigaya.
  for (const auto& [m, k] : {std::pair{1, 3}, std::pair{3, 5}, std::pair{2, 7}}) {
    const double expect = kajigaya_strength(m, k);
    CHECK(expect > 2.0);
    const QuantizedRoots roots = quantized_strength(m, k, M_PI_2);
    REQUIRE(roots.accepted.size() == 2);
    for (const double q : roots.accepted) {
      CHECK(std::fabs(std::fabs(q) - expect) < 1e-12);
    }
  }
}

TEST_CASE("kajigaya strength is monotone in the ratio") {
  // |q| = 2/sqrt(1 - (m/k)^2) grows strictly with m/k, approaching 2 from
  // above as the ratio shrinks and diverging as it approaches 1.
  const std::pair<int, int> by_ratio[] = {
      {1, 100}, {1, 10}, {1, 5}, {1, 3}, {2, 5},  {1, 2},
      {3, 5},   {2, 3},  {3, 4}, {4, 5}, {9, 10}, {99, 100}};
  double prev = 0.0;
  for (const auto& [m, k] : by_ratio) {
    const double strength = kajigaya_strength(m, k);
    CHECK(strength > 2.0);
    CHECK(strength > prev);
    prev = strength;
  }
  CHECK(kajigaya_strength(1, 100) - 2.0 < 1e-3);
  CHECK(kajigaya_strength(99, 100) > 14.0);
}

TEST_CASE("quantization stores an injective rational invariant") {
  // a = 1 - 2 (m/k)^2 determines the reduced ratio: (1 - a)/2 recovers
  // (m/k)^2, and distinct coprime pairs give distinct values of a.
  std::vector<double> seen;
  for (int k = 2; k <= 12; ++k) {
    for (int m = 1; m < k; ++m) {
      if (std::gcd(m, k) != 1) continue;
      const QuantizedRoots roots = quantized_strength(m, k, M_PI / 3.0);
      const double ratio_sq =
          (static_cast<double>(m) / k) * (static_cast<double>(m) / k);
      CHECK(std::fabs((1.0 - roots.a) / 2.0 - ratio_sq) < 1e-15);
      seen.push_back(roots.a);
    }
  }
  std::sort(seen.begin(), seen.end());
  // Reduced ratios in (0, 1) with k <= 12 are separated by at least
  // 2/(12*12)^2 in the squares, so a collision would be glaring.
  for (std::size_t i = 1; i < seen.size(); ++i) {
    CHECK(seen[i] - seen[i - 1] > 1e-5);
  }
}

TEST_CASE("accepted roots close after branch count plus one periods") {
  // Per phase period theta advances by pi (1 -+ k/m), so the first closure
  // happens after exactly as many periods as the Legendre branch count
  // predicts: n = h + 1, for both signs of the accepted strength.
  const double sigmas[] = {M_PI / 6.0, M_PI / 3.0, 2.0 * M_PI / 5.0, M_PI_2};
  int rows = 0;
  for (int k = 2; k <= 10; ++k) {
    for (int m = 1; m < k; ++m) {
      if (std::gcd(m, k) != 1) continue;
      const int h = legendre_branch_count(m, k);
      for (const double sigma : sigmas) {
        for (const double q : quantized_strength(m, k, sigma).accepted) {
          const ClosureResult res =
              detect_closure(MagneticParams{q, sigma}, 4 * k + 2 * m);
          REQUIRE(res.n_periods.has_value());
          CHECK(*res.n_periods == h + 1);
          CHECK(res.theta_defect < 1e-8);
          ++rows;
        }
      }
    }
  }
  CHECK(rows > 200);
}

TEST_CASE("phase period formula and its guard") {
  const MagneticParams mp{3.0, M_PI_2};  // qbar = 3
  const double T = phase_period(mp);
  CHECK(std::fabs(T - 2.0 * M_PI / std::sqrt(9.0 - 4.0)) < 1e-14);
  CHECK_THROWS_AS(phase_period(MagneticParams{1.0, M_PI_2}), NonRotationalPhase);
  CHECK_THROWS_AS(phase_period(MagneticParams{2.0, M_PI_2}), NonRotationalPhase);
}

TEST_CASE("closure detection at the figure parameters") {
  // (1, 3, 2 pi/5): both quantized roots close in a single phase period.
  for (const double q : quantized_strength(1, 3, 2.0 * M_PI / 5.0).accepted) {
    const ClosureResult res = detect_closure(
        MagneticParams{q, 2.0 * M_PI / 5.0}, 12);
    REQUIRE(res.n_periods.has_value());
    CHECK(*res.n_periods == 1);
    CHECK(res.theta_defect < 1e-8);
  }
  // (3, 5, pi/3): closure needs three phase periods.
  for (const double q : quantized_strength(3, 5, M_PI / 3.0).accepted) {
    const ClosureResult res = detect_closure(MagneticParams{q, M_PI / 3.0}, 20);
    REQUIRE(res.n_periods.has_value());
    CHECK(*res.n_periods == 3);
    CHECK(res.theta_defect < 1e-8);
  }
}

TEST_CASE("generic strengths do not close") {
  // A rotational strength off the quantized set: defect stays visible.
  const ClosureResult res = detect_closure(MagneticParams{3.01, M_PI_2}, 40);
  CHECK_FALSE(res.n_periods.has_value());
  CHECK(res.theta_defect > 1e-4);
}

TEST_CASE("legendre branch count") {
  CHECK(legendre_branch_count(1, 3) == 0);
  CHECK(legendre_branch_count(3, 5) == 2);
  CHECK(legendre_branch_count(2, 7) == 3);
  // Defining property: (h+1)(k-m)/m is an even integer and h is minimal.
  for (const auto& [m, k] :
       {std::pair{1, 3}, std::pair{3, 5}, std::pair{2, 7}, std::pair{5, 12},
        std::pair{4, 9}, std::pair{7, 10}}) {
    const int h = legendre_branch_count(m, k);
    const auto even_multiple = [&](int hh) {
      const long num = static_cast<long>(hh + 1) * (k - m);
      return num % m == 0 && (num / m) % 2 == 0;
    };
    CHECK(even_multiple(h));
    for (int hh = 0; hh < h; ++hh) CHECK_FALSE(even_multiple(hh));
  }
  CHECK_THROWS_AS(legendre_branch_count(2, 4), NonCoprimeInput);
}

TEST_CASE("certificate aggregates quantization and closure") {
  const PeriodicityCert cert = certify(3, 5, M_PI / 3.0);
  CHECK(cert.m == 3);
  CHECK(cert.k == 5);
  CHECK(cert.h == legendre_branch_count(3, 5));
  REQUIRE_FALSE(cert.accepted.empty());
  for (const PeriodicityCert::Root& root : cert.accepted) {
    REQUIRE(root.n_periods.has_value());
    CHECK(root.defect < 1e-8);
    CHECK(std::fabs(root.T_total - *root.n_periods * root.T_phase) < 1e-12);
    const double T = phase_period(MagneticParams{root.q, M_PI / 3.0});
    CHECK(std::fabs(root.T_phase - T) < 1e-13);
    // The closure window is max(4k, 2m) phase periods.
    CHECK(*root.n_periods <= std::max(4 * 5, 2 * 3));
  }
}
