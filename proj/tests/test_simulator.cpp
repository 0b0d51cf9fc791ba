#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "thirring/grid.hpp"
#include "thirring/oracle.hpp"

using namespace thirring;

namespace {
const WalkParams<double> w06(0.6);

GridState random_antisymmetric(std::mt19937_64& rng, int L) {
  std::uniform_real_distribution<double> dist(-1, 1);
  GridState s(L);
  for (int a1 = 0; a1 < 2; ++a1)
    for (int a2 = 0; a2 < 2; ++a2)
      for (int x1 = 0; x1 < L; ++x1)
        for (int x2 = 0; x2 < L; ++x2)
          s.amp(a1, a2, x1, x2) = Cxd(dist(rng), dist(rng));
  return antisymmetrized(s);
}
}  // namespace

TEST_CASE("singlet at origin") {
  const GridState s = singlet_at_origin(32);
  CHECK(s.norm() == doctest::Approx(1.0));
  CHECK(s.antisymmetry_defect() < 1e-15);
  int nonzero = 0;
  for (int a1 = 0; a1 < 2; ++a1)
    for (int a2 = 0; a2 < 2; ++a2)
      for (int x1 = 0; x1 < 32; ++x1)
        for (int x2 = 0; x2 < 32; ++x2)
          if (std::abs(s.amp(a1, a2, x1, x2)) > 0) ++nonzero;
  CHECK(nonzero == 2);
  CHECK(s.amp(0, 1, 16, 16) == -s.amp(1, 0, 16, 16));

  const auto field = probability(s);
  CHECK(field.p(16, 16) == doctest::Approx(1.0));
  CHECK(field.diagonal_mass == doctest::Approx(1.0));
}

TEST_CASE("antisymmetrization on the grid") {
  std::mt19937_64 rng(3);
  const GridState s = random_antisymmetric(rng, 12);
  CHECK(s.antisymmetry_defect() < 1e-14);
  // idempotent
  const GridState again = antisymmetrized(s, false);
  double diff = 0;
  for (int c = 0; c < 4; ++c)
    diff += (again.components()[c] - s.components()[c]).norm();
  CHECK(diff < 1e-13);

  // symmetric input throws
  GridState sym(12);
  sym.amp(0, 0, 3, 5) = 1.0;
  sym.amp(0, 0, 5, 3) = 1.0;
  CHECK_THROWS_AS(antisymmetrized(sym), std::runtime_error);
}

TEST_CASE("one free step equals independent single-particle steps") {
  // (W (x) W) on a product of localized coin states, chi = 0
  const int L = 16;
  GridState s(L);
  const Vec2cd f1(Cxd(0.6, 0.1), Cxd(-0.3, 0.4));
  const Vec2cd f2(Cxd(0.2, -0.5), Cxd(0.7, 0.0));
  for (int a1 = 0; a1 < 2; ++a1)
    for (int a2 = 0; a2 < 2; ++a2)
      s.amp(a1, a2, 5, 9) = f1(a1) * f2(a2);

  const GridState stepped = evolve_step(s, 0.0, w06, GridBoundary::Periodic);

  CoinField<double> c1 = CoinField<double>::Zero(2, L);
  c1(0, 5) = f1(0);
  c1(1, 5) = f1(1);
  CoinField<double> c2 = CoinField<double>::Zero(2, L);
  c2(0, 9) = f2(0);
  c2(1, 9) = f2(1);
  const CoinField<double> g1 = position_step(c1, w06);
  const CoinField<double> g2 = position_step(c2, w06);

  double worst = 0;
  for (int a1 = 0; a1 < 2; ++a1)
    for (int a2 = 0; a2 < 2; ++a2)
      for (int x1 = 0; x1 < L; ++x1)
        for (int x2 = 0; x2 < L; ++x2)
          worst = std::max(worst, std::abs(stepped.amp(a1, a2, x1, x2) -
                                           g1(a1, x1) * g2(a2, x2)));
  CHECK(worst < 1e-14);
}

TEST_CASE("evolution conserves norm, antisymmetry and total momentum") {
  std::mt19937_64 rng(5);
  GridState s = random_antisymmetric(rng, 16);
  const Eigen::VectorXd mom0 = total_momentum_distribution(s);
  for (int t = 0; t < 8; ++t) {
    s = evolve_step(s, 1.2, w06, GridBoundary::Periodic);
    CHECK(std::abs(s.norm() - 1.0) < 1e-12);
    CHECK(s.antisymmetry_defect() < 1e-13);
  }
  const Eigen::VectorXd mom1 = total_momentum_distribution(s);
  CHECK((mom1 - mom0).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(std::abs(mom0.sum() - 1.0) < 1e-12);
}

TEST_CASE("light cone: support grows one site per particle per step") {
  GridState s = singlet_at_origin(32);
  const int steps = 6;
  const GridState evolved =
      evolve(std::move(s), steps, pi / 2, w06, GridBoundary::Periodic);
  const auto field = probability(evolved);
  double outside = 0;
  for (int x1 = 0; x1 < 32; ++x1)
    for (int x2 = 0; x2 < 32; ++x2)
      if (std::abs(x1 - 16) > steps || std::abs(x2 - 16) > steps)
        outside += field.p(x1, x2);
  CHECK(outside == 0.0);
}

TEST_CASE("guarded boundary refuses runs that would truncate") {
  GridState s = singlet_at_origin(8);
  CHECK_NOTHROW(evolve(s, 2, 0.7, w06, GridBoundary::GuardedOpen));
  CHECK_THROWS_AS(evolve(singlet_at_origin(8), 5, 0.7, w06,
                         GridBoundary::GuardedOpen),
                  std::runtime_error);
}

TEST_CASE("probability field symmetry and marginals") {
  std::mt19937_64 rng(7);
  const GridState s = random_antisymmetric(rng, 12);
  const auto field = probability(s);
  CHECK(field.p.sum() == doctest::Approx(1.0));
  CHECK((field.p - field.p.transpose()).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(field.marginal_rel.sum() == doctest::Approx(1.0));
  CHECK(field.marginal_com.sum() == doctest::Approx(1.0));
  // the relative marginal is symmetric about y = 0
  for (int d = 1; d < 12; ++d)
    CHECK(field.marginal_rel(11 + d) ==
          doctest::Approx(field.marginal_rel(11 - d)));
}

TEST_CASE("interacting run builds diagonal mass above the free run") {
  const int L = 64, steps = 16;
  const GridState free_run = evolve(singlet_at_origin(L), steps, 0.0, w06,
                                    GridBoundary::Periodic);
  const GridState int_run = evolve(singlet_at_origin(L), steps, pi / 2, w06,
                                   GridBoundary::Periodic);
  const double free_mass = probability(free_run).diagonal_mass;
  const double int_mass = probability(int_run).diagonal_mass;
  CHECK(int_mass > free_mass);
}

TEST_CASE("bound packet with infinite width reproduces the fixed-p profile") {
  const int L = 64;
  // ring-commensurate total momentum so the plane-wave envelope is exact
  const double p0 = 2 * pi * 3 / L;
  const auto bound = bound_state(p0, 1.9, w06);
  const GridState packet = bound_state_packet(
      p0, 1.9, w06, std::numeric_limits<double>::infinity(), L, /*wrap=*/true);
  CHECK(std::abs(packet.norm() - 1.0) < 1e-12);
  CHECK(packet.antisymmetry_defect() < 1e-13);

  const auto field = probability(packet);
  // the relative marginal equals the analytic |psi(y)|^2 profile, with the
  // separation wrapped to its nearest torus representative
  Eigen::VectorXd expect = Eigen::VectorXd::Zero(2 * L - 1);
  for (int yraw = -(L - 1); yraw <= L - 1; ++yraw) {
    int y = yraw;
    if (y >= L / 2) y -= L;
    if (y < -L / 2) y += L;
    const Vec4cd a = bound.amplitude(((y % 2) + 2) % 2 == 1 ? (y - 1) / 2
                                                            : y / 2);
    double weight = (((y % 2) + 2) % 2 == 1)
                        ? std::norm(a(0)) + std::norm(a(3))
                        : std::norm(a(1)) + std::norm(a(2));
    // multiplicity of the unwrapped separation on the torus
    expect(yraw + L - 1) = weight * (L - std::abs(yraw));
  }
  expect /= expect.sum();
  CHECK((field.marginal_rel - expect).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("bound packet stays on the diagonal while the centre spreads") {
  const int L = 192;
  const double p0 = 0.035 * pi, chi = 0.2 * pi;
  GridState s = bound_state_packet(p0, chi, w06, 8.0, L);
  const auto before = probability(s);
  s = evolve(std::move(s), 48, chi, w06, GridBoundary::Periodic);
  const auto after = probability(s);
  CHECK(after.width_rel < 1.1 * before.width_rel);
  CHECK(after.width_com > 1.2 * before.width_com);
}

TEST_CASE("fixed-p evolution: bound state accumulates only a phase") {
  const double p = 0.3, chi = 1.4;
  const auto sol = bound_state(p, chi, w06);
  FixedPState s = sol.state(64, Boundary::Guarded);
  const Cxd step_phase = sol.eigenvalue();
  FixedPState evolved = s;
  for (int t = 0; t < 100; ++t) evolved = u2_step(evolved, chi, w06);
  // fidelity after 100 steps
  Cxd overlap = 0;
  for (int z = -64; z <= 64; ++z)
    for (int c = 0; c < 4; ++c)
      overlap += std::conj(s.amp(c, z)) * evolved.amp(c, z);
  CHECK(std::abs(overlap) > 1.0 - 1e-9);
  // and the phase advance per step is e^{-i omega}
  const Cxd expected = std::pow(step_phase, 100);
  CHECK(std::abs(overlap / std::abs(overlap) - expected) < 1e-7);

  // the chi = 0 stationary state is untouched after 50 steps
  const int hw = 25;
  const double k = pi * 5 / hw;  // commensurate with the 2*hw ring
  RelativeState stat = stationary_plane_wave(k, w06, hw);
  RelativeState evolved_stat = stat;
  for (int t = 0; t < 50; ++t) evolved_stat = u2_step(evolved_stat, 0.0, w06);
  CHECK((evolved_stat.data() - stat.data()).norm() < 1e-9);
}
