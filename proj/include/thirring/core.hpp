#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace thirring {

template <class Real>
using Complex = std::complex<Real>;

template <class Real> using Vec2 = Eigen::Matrix<Complex<Real>, 2, 1>;
template <class Real> using Vec4 = Eigen::Matrix<Complex<Real>, 4, 1>;
template <class Real> using Mat2 = Eigen::Matrix<Complex<Real>, 2, 2>;
template <class Real> using Mat4 = Eigen::Matrix<Complex<Real>, 4, 4>;

using Cxd = std::complex<double>;
using Vec2cd = Vec2<double>;
using Vec4cd = Vec4<double>;
using Mat2cd = Mat2<double>;
using Mat4cd = Mat4<double>;

template <class Real>
inline constexpr Real pi_v = std::numbers::pi_v<Real>;
inline constexpr double pi = std::numbers::pi;

// Default tolerances. Unitarity and algebraic identities are checked at
// kUnitarityTol, eigensolution residuals at kResidualTol.
inline constexpr double kUnitarityTol = 1e-12;
inline constexpr double kResidualTol = 1e-10;

/// Reduces x to the Brillouin zone (-pi, pi], preserving x mod 2*pi.
template <class Real>
Real reduce_to_zone(Real x) {
  Real r = std::remainder(x, Real(2) * pi_v<Real>);
  if (r <= -pi_v<Real>) r += Real(2) * pi_v<Real>;
  return r;
}

/// Principal-branch arccosine on the complex plane: cos(w) = z and
/// Re(w) in [0, pi].  Branch cuts run along the real axis outside [-1, 1];
/// on the cut x > 1 the branch with Im >= 0 is used (the limit from the
/// upper half-plane), which keeps Arccos(-z) = pi - Arccos(z) exact.
template <class Real>
Complex<Real> principal_arccos(Complex<Real> z) {
  if (z.imag() == Real(0) && z.real() > Real(1)) return std::conj(std::acos(z));
  return std::acos(z);
}

/// Real momentum stored reduced to (-pi, pi].
template <class Real = double>
struct Momentum {
  Real value{};
  Momentum() = default;
  explicit Momentum(Real v) : value(reduce_to_zone(v)) {}
};

/// Complex momentum with the real part reduced to (-pi, pi]; the imaginary
/// part is unconstrained.
template <class Real = double>
struct ComplexMomentum {
  Real re{};
  Real im{};
  ComplexMomentum() = default;
  explicit ComplexMomentum(Complex<Real> k)
      : re(reduce_to_zone(k.real())), im(k.imag()) {}
  ComplexMomentum(Real real_part, Real imag_part)
      : re(reduce_to_zone(real_part)), im(imag_part) {}
  Complex<Real> value() const { return {re, im}; }
};

/// Mass and coupling parameters of the walk.  mu = mass is the on-site
/// coupling playing the Dirac mass role, nu = sqrt(1 - mass^2) the hopping
/// amplitude, so mu^2 + nu^2 = 1.  The interaction phase chi is stored
/// reduced to (-pi, pi].
template <class Real = double>
struct WalkParams {
  Real mass;
  Real mu;
  Real nu;
  Real coupling;

  explicit WalkParams(Real m, Real chi = Real(0)) {
    if (!(m > Real(0) && m < Real(1)))
      throw std::invalid_argument("WalkParams: mass must lie in (0, 1)");
    mass = m;
    mu = m;
    nu = std::sqrt((Real(1) - m) * (Real(1) + m));
    coupling = reduce_to_zone(chi);
  }
};

/// || M^dagger M - I ||_F, zero for unitary M.
template <class Derived>
double unitarity_defect(const Eigen::MatrixBase<Derived>& m) {
  using Mat = typename Derived::PlainObject;
  const Mat gram = m.adjoint() * m;
  return (gram - Mat::Identity(m.cols(), m.cols())).norm();
}

}  // namespace thirring
