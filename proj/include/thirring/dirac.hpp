#pragma once

#include <cassert>
#include <stdexcept>

#include "thirring/core.hpp"

namespace thirring {

/// Dispersion relation Arccos(nu cos p).  Real and in [0, pi] for real p.
template <class Real>
Complex<Real> dispersion(Complex<Real> p, const WalkParams<Real>& w) {
  return principal_arccos(Complex<Real>(w.nu) * std::cos(p));
}

template <class Real>
Real dispersion(Real p, const WalkParams<Real>& w) {
  return dispersion(Complex<Real>(p), w).real();
}

/// Lower component of the coin eigenvector, -i (s sin w(p) + nu sin p).
/// s = +1 picks the e^{-i w(p)} branch, s = -1 the e^{+i w(p)} branch.
template <class Real>
Complex<Real> down_amplitude(Complex<Real> p, int s, const WalkParams<Real>& w) {
  assert(s == 1 || s == -1);
  const Complex<Real> omega = dispersion(p, w);
  return Complex<Real>(0, -1) * (Real(s) * std::sin(omega) + w.nu * std::sin(p));
}

/// Momentum-space walk matrix (nu e^{ip}, -i mu; -i mu, nu e^{-ip}).
/// Unitary for real p.
template <class Real>
Mat2<Real> walk_matrix(Complex<Real> p, const WalkParams<Real>& w) {
  const Complex<Real> i(0, 1);
  Mat2<Real> m;
  m << w.nu * std::exp(i * p), Complex<Real>(0, -w.mu),
      Complex<Real>(0, -w.mu), w.nu * std::exp(-i * p);
  return m;
}

template <class Real = double>
struct DiracEigenvector {
  int branch;              // +1 or -1
  Complex<Real> momentum;
  Vec2<Real> vec;          // unit norm for real momentum
  Complex<Real> eigenvalue;  // e^{-i s w(p)}
};

/// Coin eigenvector (-i mu, g_s(p)) / |N_s| with |N_s|^2 = mu^2 + |g_s|^2,
/// satisfying walk_matrix(p) v = e^{-i s w(p)} v.
template <class Real>
DiracEigenvector<Real> coin_eigenvector(Complex<Real> p, int s,
                                        const WalkParams<Real>& w) {
  const Complex<Real> g = down_amplitude(p, s, w);
  const Real n2 = w.mu * w.mu + std::norm(g);
  assert(n2 > Real(0));
  Vec2<Real> v;
  v << Complex<Real>(0, -w.mu), g;
  v /= std::sqrt(n2);
  const Complex<Real> i(0, 1);
  return DiracEigenvector<Real>{s, p, v,
                                std::exp(-i * Real(s) * dispersion(p, w))};
}

enum class Boundary { Ring, Guarded };

/// Two-component field over lattice sites; column x holds the coin vector.
template <class Real = double>
using CoinField = Eigen::Matrix<Complex<Real>, 2, Eigen::Dynamic>;

namespace detail {

// out(x) = in(x - d), cyclic.
template <class Real>
Eigen::Matrix<Complex<Real>, 1, Eigen::Dynamic> shift_row(
    const Eigen::Matrix<Complex<Real>, 1, Eigen::Dynamic>& in, int d) {
  const auto n = in.cols();
  Eigen::Matrix<Complex<Real>, 1, Eigen::Dynamic> out(1, n);
  for (Eigen::Index x = 0; x < n; ++x)
    out(0, x) = in(0, (x - d % n + n) % n);
  return out;
}

}  // namespace detail

/// One step of the walk in position space.  The convention matches the
/// momentum-space matrix: a momentum-p plane wave has amplitudes e^{-ipx},
/// so the spin-up component hops to x+1 and the spin-down one to x-1.
/// Boundary::Guarded refuses states whose support touches the cell that
/// would leave the window (spin-up at the right edge, spin-down at the
/// left edge); Boundary::Ring wraps around.
template <class Real>
CoinField<Real> position_step(const CoinField<Real>& f, const WalkParams<Real>& w,
                              Boundary boundary = Boundary::Ring) {
  const auto n = f.cols();
  if (boundary == Boundary::Guarded) {
    const Real guard = Real(1e-14) * std::max(Real(1), Real(f.norm()));
    if (std::abs(f(0, n - 1)) > guard || std::abs(f(1, 0)) > guard)
      throw std::runtime_error(
          "position_step: support reached the open boundary (state would be "
          "truncated); enlarge the window or use Boundary::Ring");
  }
  CoinField<Real> out(2, n);
  const Complex<Real> im_mu(0, -w.mu);
  out.row(0) = w.nu * detail::shift_row<Real>(f.row(0), +1) + im_mu * f.row(1);
  out.row(1) = im_mu * f.row(0) + w.nu * detail::shift_row<Real>(f.row(1), -1);
  return out;
}

}  // namespace thirring
