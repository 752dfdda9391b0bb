// Orthonormal-frame geometry: metric, connection and curvature tables,
// the contact structure (phi, xi, eta), the difference tensor, and the
// Sasakian axiom suite.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "sl2mag/geometry.hpp"
#include "sl2mag/lie_core.hpp"

using namespace sl2mag;

namespace {
double frame_abs_max(const FrameVec& v) {
  return std::max({std::fabs(v.v1), std::fabs(v.v2), std::fabs(v.v3)});
}
FrameVec basis(int i) {
  return {i == 1 ? 1.0 : 0.0, i == 2 ? 1.0 : 0.0, i == 3 ? 1.0 : 0.0};
}
}  // namespace

TEST_CASE("frame metric is orthonormal") {
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j)
      CHECK(g_frame(basis(i), basis(j)) == (i == j ? 1.0 : 0.0));
}

TEST_CASE("coordinate to frame conversion round trips") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const IwasawaCoord base{uni(rng), 0.5 + std::fabs(uni(rng)), uni(rng)};
    const double dx = uni(rng), dy = uni(rng), dtheta = uni(rng);
    const FrameVec v = coord_to_frame(base, dx, dy, dtheta);
    double bx, by, btheta;
    frame_to_coord(base, v, bx, by, btheta);
    CHECK(std::fabs(bx - dx) < 1e-12);
    CHECK(std::fabs(by - dy) < 1e-12);
    CHECK(std::fabs(btheta - dtheta) < 1e-12);
  }
}

TEST_CASE("frame components of the coordinate fields") {
  // epsilon_1 = 2y d/dx - d/dtheta, epsilon_2 = 2y d/dy, epsilon_3 = d/dtheta.
  const IwasawaCoord base{0.3, 1.7, -0.4};
  const FrameVec from_dx = coord_to_frame(base, 2.0 * base.y, 0.0, -1.0);
  CHECK(frame_abs_max(from_dx - basis(1)) < 1e-12);
  const FrameVec from_dy = coord_to_frame(base, 0.0, 2.0 * base.y, 0.0);
  CHECK(frame_abs_max(from_dy - basis(2)) < 1e-12);
  const FrameVec from_dtheta = coord_to_frame(base, 0.0, 0.0, 1.0);
  CHECK(frame_abs_max(from_dtheta - basis(3)) < 1e-12);
}

TEST_CASE("connection table matches the koszul derivation") {
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j)
      CHECK(frame_abs_max(nabla_frame(i, j) - nabla_frame_koszul(i, j)) == 0.0);
}

TEST_CASE("connection table entries") {
  CHECK(frame_abs_max(nabla_frame(1, 1) - FrameVec{0, 2, 0}) == 0.0);
  CHECK(frame_abs_max(nabla_frame(1, 2) - FrameVec{-2, 0, -1}) == 0.0);
  CHECK(frame_abs_max(nabla_frame(1, 3) - FrameVec{0, 1, 0}) == 0.0);
  CHECK(frame_abs_max(nabla_frame(2, 1) - FrameVec{0, 0, 1}) == 0.0);
  CHECK(frame_abs_max(nabla_frame(2, 2)) == 0.0);
  CHECK(frame_abs_max(nabla_frame(2, 3) - FrameVec{-1, 0, 0}) == 0.0);
  CHECK(frame_abs_max(nabla_frame(3, 1) - FrameVec{0, 1, 0}) == 0.0);
  CHECK(frame_abs_max(nabla_frame(3, 2) - FrameVec{-1, 0, 0}) == 0.0);
  CHECK(frame_abs_max(nabla_frame(3, 3)) == 0.0);
  CHECK_THROWS_AS(nabla_frame(0, 1), IndexOutOfRange);
  CHECK_THROWS_AS(nabla_frame(1, 4), IndexOutOfRange);
}

TEST_CASE("frame brackets") {
  // [eps1, eps2] = -2 eps1 - 2 eps3 is the only nonzero bracket.
  CHECK(frame_abs_max(frame_bracket(1, 2) - FrameVec{-2, 0, -2}) == 0.0);
  CHECK(frame_abs_max(frame_bracket(2, 1) + FrameVec{-2, 0, -2}) == 0.0);
  CHECK(frame_abs_max(frame_bracket(1, 3)) == 0.0);
  CHECK(frame_abs_max(frame_bracket(2, 3)) == 0.0);
}

TEST_CASE("curvature table matches the first principles derivation") {
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j)
      for (int k = 1; k <= 3; ++k)
        CHECK(frame_abs_max(curvature_frame(i, j, k) -
                            curvature_frame_derived(i, j, k)) == 0.0);
}

TEST_CASE("distinguished curvature values") {
  // R(eps1, eps2)eps2 = -7 eps1: the phi-sectional curvature is -7.
  CHECK(frame_abs_max(curvature_frame(1, 2, 2) - FrameVec{-7, 0, 0}) == 0.0);
  CHECK(frame_abs_max(curvature_frame(1, 3, 3) - FrameVec{1, 0, 0}) == 0.0);
  CHECK(frame_abs_max(curvature_frame(2, 3, 3) - FrameVec{0, 1, 0}) == 0.0);
}

TEST_CASE("closed form curvature agrees with the table on random vectors") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> uni(-1.5, 1.5);
  for (int trial = 0; trial < 60; ++trial) {
    const FrameVec X{uni(rng), uni(rng), uni(rng)};
    const FrameVec Y{uni(rng), uni(rng), uni(rng)};
    const FrameVec Z{uni(rng), uni(rng), uni(rng)};
    // Expand R(X,Y)Z through the 27 table entries by trilinearity.
    FrameVec expected{0, 0, 0};
    const double xc[] = {X.v1, X.v2, X.v3};
    const double yc[] = {Y.v1, Y.v2, Y.v3};
    const double zc[] = {Z.v1, Z.v2, Z.v3};
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j)
        for (int k = 1; k <= 3; ++k)
          expected = expected + curvature_frame(i, j, k) *
                                    (xc[i - 1] * yc[j - 1] * zc[k - 1]);
    CHECK(frame_abs_max(curvature_closed_form(X, Y, Z) - expected) < 1e-12);
  }
}

TEST_CASE("phi squares to minus identity plus eta tensor xi") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    const FrameVec v{uni(rng), uni(rng), uni(rng)};
    const FrameVec lhs = phi_frame(phi_frame(v));
    const FrameVec rhs = (v * -1.0) + xi_frame() * eta(v);
    CHECK(frame_abs_max(lhs - rhs) < 1e-12);
  }
  CHECK(frame_abs_max(phi_frame(xi_frame())) == 0.0);
  CHECK(eta(xi_frame()) == 1.0);
}

TEST_CASE("left invariant and frame descriptions rotate by twice the angle") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> uni(-1.5, 1.5);
  for (int trial = 0; trial < 50; ++trial) {
    const AlgebraVec X{uni(rng), uni(rng), uni(rng)};
    const double theta = 3.0 * uni(rng);
    const FrameVec v = leftinvariant_to_frame(X, theta);
    // Norms agree (the change of frame is an isometry).
    CHECK(std::fabs(norm(v) - norm(X)) < 1e-12);
    // Round trip.
    const AlgebraVec back = frame_to_leftinvariant(v, theta);
    CHECK(std::fabs(back.a - X.a) < 1e-12);
    CHECK(std::fabs(back.b - X.b) < 1e-12);
    CHECK(std::fabs(back.c - X.c) < 1e-12);
    // The Reeb component is rotation-invariant.
    CHECK(std::fabs(eta(v) - (X.a - X.b) / kSqrt2) < 1e-12);
  }
  // At every angle the Reeb direction maps to the frame Reeb vector.
  for (const double theta : {0.0, 0.7, -2.1}) {
    CHECK(frame_abs_max(leftinvariant_to_frame(xi_algebra(), theta) -
                        xi_frame()) < 1e-12);
  }
}

TEST_CASE("u tensor is symmetric and matches the connection split") {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> uni(-1.5, 1.5);
  for (int trial = 0; trial < 50; ++trial) {
    const AlgebraVec X{uni(rng), uni(rng), uni(rng)};
    const AlgebraVec Y{uni(rng), uni(rng), uni(rng)};
    const AlgebraVec uxy = u_tensor(X, Y), uyx = u_tensor(Y, X);
    CHECK(std::fabs(uxy.a - uyx.a) < 1e-12);
    CHECK(std::fabs(uxy.b - uyx.b) < 1e-12);
    CHECK(std::fabs(uxy.c - uyx.c) < 1e-12);
    // nabla_X Y = (1/2)[X, Y] + U(X, Y) on left-invariant fields.
    const AlgebraVec nab = nabla_leftinvariant(X, Y);
    const AlgebraVec half = bracket(X, Y) * 0.5;
    CHECK(std::fabs(nab.a - half.a - uxy.a) < 1e-12);
    CHECK(std::fabs(nab.b - half.b - uxy.b) < 1e-12);
    CHECK(std::fabs(nab.c - half.c - uxy.c) < 1e-12);
  }
}

TEST_CASE("u tensor norm closed form") {
  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> uni(-1.5, 1.5);
  for (int trial = 0; trial < 50; ++trial) {
    const AlgebraVec X{uni(rng), uni(rng), uni(rng)};
    const AlgebraVec uxx = u_tensor(X, X);
    const double expected = 2.0 * std::fabs(X.a - X.b) *
                            std::sqrt((X.a + X.b) * (X.a + X.b) +
                                      2.0 * X.c * X.c);
    CHECK(std::fabs(norm(uxx) - expected) < 1e-12);
  }
}

TEST_CASE("sasakian axioms hold to tight tolerance") {
  const SasakianReport rep = verify_sasakian(400);
  CHECK(rep.samples == 400);
  CHECK(rep.max_phi_square < 1e-12);
  CHECK(rep.max_compat < 1e-12);
  CHECK(rep.max_nabla_xi < 1e-12);
  CHECK(rep.max_nabla_phi < 1e-12);
  CHECK(rep.max_residual < 1e-9);
}

TEST_CASE("deta equals the phi pairing by finite differences") {
  CHECK(deta_fd_residual(64) < 1e-7);
}

TEST_CASE("covariant derivative along a curve reduces to the table") {
  // For constant W along a curve with velocity V, covariant_along(V, W, 0)
  // must equal nabla_V W from the table, bilinearly.
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> uni(-1.5, 1.5);
  for (int trial = 0; trial < 40; ++trial) {
    const FrameVec V{uni(rng), uni(rng), uni(rng)};
    const FrameVec W{uni(rng), uni(rng), uni(rng)};
    FrameVec expected{0, 0, 0};
    const double vc[] = {V.v1, V.v2, V.v3};
    const double wc[] = {W.v1, W.v2, W.v3};
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j)
        expected = expected + nabla_frame(i, j) * (vc[i - 1] * wc[j - 1]);
    CHECK(frame_abs_max(covariant_along(V, W, {0, 0, 0}) - expected) < 1e-12);
  }
}
