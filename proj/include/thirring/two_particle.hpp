#pragma once

#include "thirring/core.hpp"
#include "thirring/dirac.hpp"

namespace thirring {

/// Two-particle dispersion s*w(p+k) + r*w(p-k).
template <class Real>
Complex<Real> pair_dispersion(Complex<Real> p, Complex<Real> k, int s, int r,
                              const WalkParams<Real>& w) {
  return Real(s) * dispersion(p + k, w) + Real(r) * dispersion(p - k, w);
}

template <class Real>
Mat4<Real> kron2(const Mat2<Real>& a, const Mat2<Real>& b) {
  Mat4<Real> out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.template block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

/// Free two-particle coin matrix W(p+k) (x) W(p-k); unitary for real p, k.
template <class Real>
Mat4<Real> pair_walk_matrix(Complex<Real> p, Complex<Real> k,
                            const WalkParams<Real>& w) {
  return kron2(walk_matrix(p + k, w), walk_matrix(p - k, w));
}

/// Unnormalized pair eigenvector
///   ( -mu^2, -i mu g_r(p-k), -i mu g_s(p+k), g_s(p+k) g_r(p-k) ).
/// With this scaling the component identities between the four degenerate
/// momenta {k, -k, pi-k, k-pi} hold exactly, for complex k as well.
template <class Real>
Vec4<Real> pair_eigenvector_raw(Complex<Real> p, Complex<Real> k, int s, int r,
                                const WalkParams<Real>& w) {
  const Complex<Real> gs = down_amplitude(p + k, s, w);
  const Complex<Real> gr = down_amplitude(p - k, r, w);
  Vec4<Real> v;
  v << Complex<Real>(-w.mu * w.mu), Complex<Real>(0, -w.mu) * gr,
      Complex<Real>(0, -w.mu) * gs, gs * gr;
  return v;
}

template <class Real = double>
struct TwoPEigenvector {
  int s, r;
  Complex<Real> p, k;
  Vec4<Real> vec;            // unit norm for real p, k
  Complex<Real> eigenvalue;  // e^{-i w_{sr}(p,k)}
};

/// Pair eigenvector scaled by 1/(|N_s(p+k)| |N_r(p-k)|); unit norm for
/// real momenta.
template <class Real>
TwoPEigenvector<Real> pair_eigenvector(Complex<Real> p, Complex<Real> k, int s,
                                       int r, const WalkParams<Real>& w) {
  Vec4<Real> v = pair_eigenvector_raw(p, k, s, r, w);
  const Real mu2 = w.mu * w.mu;
  const Real ns2 = mu2 + std::norm(down_amplitude(p + k, s, w));
  const Real nr2 = mu2 + std::norm(down_amplitude(p - k, r, w));
  v /= std::sqrt(ns2 * nr2);
  const Complex<Real> i(0, 1);
  return TwoPEigenvector<Real>{
      s, r, p, k, v, std::exp(-i * pair_dispersion(p, k, s, r, w))};
}

/// Particle-exchange matrix on the coin space: swaps the two opposite-spin
/// components.
template <class Real = double>
Mat4<Real> exchange_matrix() {
  Mat4<Real> e = Mat4<Real>::Zero();
  e(0, 0) = Real(1);
  e(1, 2) = Real(1);
  e(2, 1) = Real(1);
  e(3, 3) = Real(1);
  return e;
}

}  // namespace thirring
