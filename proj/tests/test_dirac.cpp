#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "thirring/dirac.hpp"

using namespace thirring;

namespace {
const WalkParams<double> w06(0.6);  // nu = 0.8
}

TEST_CASE("dispersion reference values") {
  // w(0) = Arccos(nu); frozen from a high-precision evaluation for nu = 0.8
  CHECK(dispersion(0.0, w06) == doctest::Approx(0.64350110879328439).epsilon(1e-14));
  CHECK(std::cos(dispersion(0.0, w06)) == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(dispersion(pi / 2, w06) == doctest::Approx(pi / 2));
  CHECK(dispersion(pi, w06) ==
        doctest::Approx(pi - 0.64350110879328439).epsilon(1e-14));
}

TEST_CASE("dispersion symmetries") {
  for (int j = 0; j <= 50; ++j) {
    const double p = -pi + 2 * pi * j / 50;
    CHECK(dispersion(-p, w06) == doctest::Approx(dispersion(p, w06)));
    CHECK(dispersion(p + pi, w06) ==
          doctest::Approx(pi - dispersion(p, w06)).epsilon(1e-12));
    CHECK(dispersion(p - pi, w06) ==
          doctest::Approx(pi - dispersion(p, w06)).epsilon(1e-12));
    CHECK(dispersion(p, w06) >= 0.0);
    CHECK(dispersion(p, w06) <= pi);
  }
}

TEST_CASE("down amplitude special points") {
  // at p = 0: sin w(0) = mu, so g_+ = -i mu and g_- = +i mu
  CHECK(std::abs(down_amplitude(Cxd(0), +1, w06) - Cxd(0, -0.6)) < 1e-14);
  CHECK(std::abs(down_amplitude(Cxd(0), -1, w06) - Cxd(0, 0.6)) < 1e-14);
  // at p = pi/2: w = pi/2, so g_+ = -i (1 + nu)
  CHECK(std::abs(down_amplitude(Cxd(pi / 2), +1, w06) - Cxd(0, -1.8)) < 1e-14);
}

TEST_CASE("walk matrix entries, unitarity, determinant") {
  const Mat2<double> m0 = walk_matrix(Cxd(0), w06);
  CHECK(std::abs(m0(0, 0) - Cxd(0.8)) < 1e-15);
  CHECK(std::abs(m0(0, 1) - Cxd(0, -0.6)) < 1e-15);
  CHECK(std::abs(m0(1, 0) - Cxd(0, -0.6)) < 1e-15);
  CHECK(std::abs(m0(1, 1) - Cxd(0.8)) < 1e-15);

  const Mat2<double> mpi = walk_matrix(Cxd(pi), w06);
  CHECK(std::abs(mpi(0, 0) - Cxd(-0.8)) < 1e-14);
  CHECK(std::abs(mpi(1, 1) - Cxd(-0.8)) < 1e-14);

  for (int j = 0; j <= 64; ++j) {
    const double p = -pi + 2 * pi * j / 64;
    const Mat2<double> m = walk_matrix(Cxd(p), w06);
    CHECK(unitarity_defect(m) < 1e-13);
    CHECK(std::abs(std::abs(m.determinant()) - 1.0) < 1e-14);
  }
}

TEST_CASE("spectrum of the walk matrix is {e^{-iw}, e^{+iw}}") {
  for (double p : {0.3, 1.1, 2.7, -0.9}) {
    const Mat2<double> m = walk_matrix(Cxd(p), w06);
    Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(m);
    const double omega = dispersion(p, w06);
    std::array<Cxd, 2> expect{std::exp(Cxd(0, -omega)), std::exp(Cxd(0, omega))};
    for (Cxd lambda : expect) {
      const double d0 = std::abs(es.eigenvalues()(0) - lambda);
      const double d1 = std::abs(es.eigenvalues()(1) - lambda);
      CHECK(std::min(d0, d1) < 1e-13);
    }
  }
}

TEST_CASE("coin eigenvector at p = 0") {
  const auto ev = coin_eigenvector(Cxd(0), +1, w06);
  // (-i mu, -i mu)/(mu sqrt 2) = (-i, -i)/sqrt 2
  CHECK(std::abs(ev.vec(0) - Cxd(0, -1 / std::sqrt(2))) < 1e-14);
  CHECK(std::abs(ev.vec(1) - Cxd(0, -1 / std::sqrt(2))) < 1e-14);
}

TEST_CASE("coin eigenvector residual and orthogonality") {
  const WalkParams<double> w(0.6);
  const auto evm = coin_eigenvector(Cxd(1.1), -1, w);
  const Mat2<double> m = walk_matrix(Cxd(1.1), w);
  CHECK((m * evm.vec - evm.eigenvalue * evm.vec).norm() < 1e-12);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-pi, pi);
  for (int j = 0; j < 50; ++j) {
    const double p = dist(rng);
    const auto plus = coin_eigenvector(Cxd(p), +1, w);
    const auto minus = coin_eigenvector(Cxd(p), -1, w);
    CHECK(std::abs(plus.vec.dot(minus.vec)) < 1e-13);
    CHECK(plus.vec.norm() == doctest::Approx(1.0));
    const Mat2<double> wp = walk_matrix(Cxd(p), w);
    CHECK((wp * plus.vec - plus.eigenvalue * plus.vec).norm() < 1e-12);
    CHECK((wp * minus.vec - minus.eigenvalue * minus.vec).norm() < 1e-12);
  }
}

TEST_CASE("eigenvalue relation continues to complex momentum") {
  const Cxd p(0.4, -0.9);
  for (int s : {+1, -1}) {
    const auto ev = coin_eigenvector(p, s, w06);
    const Mat2<double> m = walk_matrix(p, w06);
    CHECK((m * ev.vec - ev.eigenvalue * ev.vec).norm() < 1e-12);
  }
}

TEST_CASE("position step: near-massless limit translates the upper component") {
  const WalkParams<double> w(1e-8);
  const int n = 16;
  CoinField<double> f = CoinField<double>::Zero(2, n);
  f(0, 5) = 1.0;
  const CoinField<double> g = position_step(f, w, Boundary::Ring);
  CHECK(std::abs(g(0, 6) - Cxd(1)) < 1e-7);
  double rest = 0;
  for (int x = 0; x < n; ++x) {
    if (x != 6) rest += std::abs(g(0, x));
    rest += x == 6 ? 0 : 0;
  }
  CHECK(rest < 1e-7);
}

TEST_CASE("position step preserves the norm") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> dist(-1, 1);
  CoinField<double> f = CoinField<double>::Zero(2, 64);
  for (int x = 0; x < 64; ++x)
    for (int c = 0; c < 2; ++c) f(c, x) = Cxd(dist(rng), dist(rng));
  f /= f.norm();
  const CoinField<double> g = position_step(f, w06, Boundary::Ring);
  CHECK(std::abs(g.norm() - 1.0) < 1e-12);
}

TEST_CASE("position step is momentum-consistent with the dispersion") {
  // a ring plane wave with amplitudes e^{-ipx} v_p^s advances by e^{-is w(p)}
  const int n = 64;
  for (int j : {3, 17, 40}) {
    const double p = reduce_to_zone(2 * pi * j / n);
    for (int s : {+1, -1}) {
      const auto ev = coin_eigenvector(Cxd(p), s, w06);
      CoinField<double> f(2, n);
      for (int x = 0; x < n; ++x) {
        const Cxd phase = std::exp(Cxd(0, -p * x));
        f(0, x) = phase * ev.vec(0);
        f(1, x) = phase * ev.vec(1);
      }
      const CoinField<double> g = position_step(f, w06, Boundary::Ring);
      CHECK((g - ev.eigenvalue * f).norm() / f.norm() < 1e-10);
    }
  }
}

TEST_CASE("guarded boundary refuses escaping support") {
  CoinField<double> f = CoinField<double>::Zero(2, 8);
  f(0, 7) = 1.0;  // spin-up at the right edge exits on the next step
  CHECK_THROWS_AS(position_step(f, w06, Boundary::Guarded), std::runtime_error);
  CoinField<double> g = CoinField<double>::Zero(2, 8);
  g(0, 3) = 1.0;
  CHECK_NOTHROW(position_step(g, w06, Boundary::Guarded));
  CoinField<double> h = CoinField<double>::Zero(2, 8);
  h(1, 0) = 1.0;  // spin-down at the left edge
  CHECK_THROWS_AS(position_step(h, w06, Boundary::Guarded), std::runtime_error);
}
