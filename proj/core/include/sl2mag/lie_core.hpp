// Matrix-group layer: SL(2,R) elements, the sl(2,R) algebra in the orthonormal
// basis E1 = sqrt(2)E, E2 = sqrt(2)F, E3 = H, closed-form exponentials, the
// Iwasawa (x, y, theta) chart, and Moebius classification by trace.

#pragma once

#include <cmath>
#include <stdexcept>

namespace sl2mag {

inline constexpr double kSqrt2 = 1.4142135623730950488016887242097;

// ---------------------------------------------------------------------------
// 2x2 real matrices

struct Mat2 {
  double p11 = 1.0, p12 = 0.0;
  double p21 = 0.0, p22 = 1.0;

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

  double trace() const { return p11 + p22; }
  double det() const { return p11 * p22 - p12 * p21; }
  // Largest absolute entry; the norm used by all entrywise comparisons.
  double max_abs() const;

  Mat2 operator*(const Mat2& o) const {
    return {p11 * o.p11 + p12 * o.p21, p11 * o.p12 + p12 * o.p22,
            p21 * o.p11 + p22 * o.p21, p21 * o.p12 + p22 * o.p22};
  }
  Mat2 operator+(const Mat2& o) const {
    return {p11 + o.p11, p12 + o.p12, p21 + o.p21, p22 + o.p22};
  }
  Mat2 operator-(const Mat2& o) const {
    return {p11 - o.p11, p12 - o.p12, p21 - o.p21, p22 - o.p22};
  }
  Mat2 operator*(double c) const { return {c * p11, c * p12, c * p21, c * p22}; }
};

inline Mat2 operator*(double c, const Mat2& m) { return m * c; }

// Iwasawa factors: n(x) upper unipotent, a(y) diagonal (y > 0), k(theta) rotation.
Mat2 n_factor(double x);
Mat2 a_factor(double y);
Mat2 k_factor(double theta);

// ---------------------------------------------------------------------------
// The algebra sl(2,R) in the orthonormal basis
//
// E1 = sqrt(2)E, E2 = sqrt(2)F, E3 = H, with inner product <X,Y> = tr(X^T Y)/2,
// so |aE1 + bE2 + cE3|^2 = a^2 + b^2 + c^2.  Matrix form [[c, sqrt2 a],
// [sqrt2 b, -c]], det = -c^2 - 2ab.  Commutators: [E1,E2] = 2E3,
// [E2,E3] = 2E2, [E3,E1] = 2E1.

struct AlgebraVec {
  double a = 0.0, b = 0.0, c = 0.0;

  AlgebraVec operator+(const AlgebraVec& o) const { return {a + o.a, b + o.b, c + o.c}; }
  AlgebraVec operator-(const AlgebraVec& o) const { return {a - o.a, b - o.b, c - o.c}; }
  AlgebraVec operator*(double t) const { return {t * a, t * b, t * c}; }
};

inline AlgebraVec operator*(double t, const AlgebraVec& v) { return v * t; }

Mat2 algebra_matrix(const AlgebraVec& X);
AlgebraVec algebra_from_matrix(const Mat2& m);  // requires m trace-free

inline double inner(const AlgebraVec& X, const AlgebraVec& Y) {
  return X.a * Y.a + X.b * Y.b + X.c * Y.c;
}
inline double norm(const AlgebraVec& X) { return std::sqrt(inner(X, X)); }

// [X,Y] via the structure constants (equals the matrix commutator).
AlgebraVec bracket(const AlgebraVec& X, const AlgebraVec& Y);

// det of the matrix form: -c^2 - 2ab.  Sign decides the exponential branch.
inline double algebra_det(const AlgebraVec& X) { return -X.c * X.c - 2.0 * X.a * X.b; }

// ---------------------------------------------------------------------------
// Iwasawa coordinates

struct IwasawaCoord {
  double x = 0.0;
  double y = 1.0;      // y > 0
  double theta = 0.0;  // radians; decompose() returns the principal value (-pi, pi]
};

struct NonUnitDeterminant : std::domain_error {
  using std::domain_error::domain_error;
};
struct NonpositiveY : std::domain_error {
  using std::domain_error::domain_error;
};

// p = n(x) a(y) k(theta).  Throws NonUnitDeterminant if |det p - 1| > tol.
IwasawaCoord iwasawa_decompose(const Mat2& p, double tol = 1e-9);
// Recompose; throws NonpositiveY if y <= 0.
Mat2 iwasawa_compose(const IwasawaCoord& coord);

// ---------------------------------------------------------------------------
// Exponentials

// Closed-form exp(tX), dispatching on det of the matrix form:
//   det = 0:        I + tX
//   det = d^2 > 0:  cos(dt) I + sin(dt)/d X
//   det = -d^2 < 0: cosh(dt) I + sinh(dt)/d X
// |det| < 1e-12 |X|^2 snaps to the affine branch (all three formulas agree
// there to the same order).
Mat2 exp_algebra(const AlgebraVec& X, double t);

// Independent check: scaling-and-squaring Taylor series, no case dispatch.
Mat2 exp_oracle(const AlgebraVec& X, double t);

// ---------------------------------------------------------------------------
// Moebius classification by |trace|

enum class MobiusClass { Identity, Elliptic, Parabolic, Hyperbolic };

// +-Id detection and the Parabolic |trace| = 2 line both use eps_tr so the
// classification of numerically produced matrices does not flicker.
MobiusClass classify_mobius(const Mat2& p, double eps_tr = 1e-9);

const char* to_string(MobiusClass c);

}  // namespace sl2mag
