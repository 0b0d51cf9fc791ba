#include "thirring/verify.hpp"

#include <random>

#include "thirring/grid.hpp"
#include "thirring/oracle.hpp"

namespace thirring {

namespace {

struct Suite {
  VerifyLevel level;
  std::mt19937_64 rng;
  double tol_scale;
  std::vector<CheckResult> results;

  bool quick() const { return level == VerifyLevel::Quick; }

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  }

  void record(const std::string& name, double measured, double threshold,
              const std::string& note = "") {
    const double t = threshold * tol_scale;
    results.push_back({name, measured, t, measured <= t, note});
  }

  FixedPState random_fixed_p(double p, int halfwidth) {
    FixedPState s(p, halfwidth, Boundary::Ring);
    for (int z = -halfwidth; z <= halfwidth; ++z)
      for (int c = 0; c < 4; ++c)
        s.amp(c, z) = Cxd(uniform(-1, 1), uniform(-1, 1));
    s.normalize();
    return s;
  }

  RelativeState random_relative(double p, int halfwidth) {
    RelativeState s(p, halfwidth, Boundary::Ring);
    for (int y = s.min_site(); y <= s.max_site(); ++y)
      for (int c = 0; c < 4; ++c)
        s.amp(c, y) = Cxd(uniform(-1, 1), uniform(-1, 1));
    s.normalize();
    return s;
  }
};

void check_core(Suite& su) {
  double worst = 0;
  for (int j = 0; j < 200; ++j) {
    const double x = su.uniform(-50, 50);
    const double r = reduce_to_zone(x);
    worst = std::max(worst, std::abs(reduce_to_zone(r) - r));
    worst = std::max(worst, std::abs(reduce_to_zone(x + 2 * pi) - r));
    if (!(r > -pi && r <= pi)) worst = 1;
  }
  su.record("core.zone_reduction", worst, 1e-12);

  double branch = 0;
  for (int j = 0; j < 100; ++j) {
    const Cxd z(su.uniform(-2, 2), su.uniform(-2, 2));
    const Cxd w = principal_arccos(z);
    branch = std::max(branch, std::abs(std::cos(w) - z));
    if (w.real() < -1e-15 || w.real() > pi + 1e-15) branch = 1;
  }
  if (principal_arccos(Cxd(2.0, 0.0)).imag() < 0) branch = 1;
  su.record("core.arccos_branch", branch, 1e-13);
}

void check_single_particle(Suite& su, const WalkParams<double>& w) {
  double unit = 0, eig = 0, sym = 0;
  for (int j = 0; j <= 64; ++j) {
    const double p = -pi + 2 * pi * j / 64.0;
    const Mat2<double> m = walk_matrix(Cxd(p), w);
    unit = std::max(unit, unitarity_defect(m));
    for (int s : {+1, -1}) {
      const auto ev = coin_eigenvector(Cxd(p), s, w);
      eig = std::max(eig, (m * ev.vec - ev.eigenvalue * ev.vec).norm());
    }
    sym = std::max(sym, std::abs(dispersion(p, w) - dispersion(-p, w)));
    sym = std::max(sym,
                   std::abs(dispersion(p + pi, w) - (pi - dispersion(p, w))));
  }
  su.record("dirac.unitarity", unit, 1e-13);
  su.record("dirac.eigen_residual", eig, 1e-12);
  su.record("dirac.dispersion_symmetries", sym, 1e-12);
}

void check_two_particle(Suite& su, const WalkParams<double>& w) {
  double unit = 0, eig = 0, quad = 0;
  for (int a = 0; a < 12; ++a)
    for (int b = 0; b < 12; ++b) {
      const double p = -pi + 2 * pi * (a + 0.5) / 12;
      const double k = -pi + 2 * pi * (b + 0.5) / 12;
      const Mat4<double> m = pair_walk_matrix(Cxd(p), Cxd(k), w);
      unit = std::max(unit, unitarity_defect(m));
      for (int s : {+1, -1})
        for (int r : {+1, -1}) {
          const auto ev = pair_eigenvector(Cxd(p), Cxd(k), s, r, w);
          eig = std::max(eig, (m * ev.vec - ev.eigenvalue * ev.vec).norm());
        }
      const Cxd i(0, 1);
      const Cxd base = std::exp(-i * pair_dispersion(Cxd(p), Cxd(k), 1, 1, w));
      quad = std::max(
          quad,
          std::abs(base - std::exp(-i * pair_dispersion(Cxd(p), Cxd(-k), 1, 1, w))));
      quad = std::max(
          quad, std::abs(base - std::exp(-i * pair_dispersion(
                                    Cxd(p), Cxd(pi - k), -1, -1, w))));
      quad = std::max(
          quad, std::abs(base - std::exp(-i * pair_dispersion(
                                    Cxd(p), Cxd(k - pi), -1, -1, w))));
    }
  su.record("two_particle.unitarity", unit, 1e-13);
  su.record("two_particle.eigen_residual", eig, 1e-12);
  su.record("two_particle.degeneracy_quadruple", quad, 1e-12);

  const auto rep = symmetry_report(0.7, w);
  su.record("two_particle.conjugation_symmetries", rep.max_defect(), 1e-13);

  // Fixed-p ring: plane waves advance by the dispersion phase, the step is
  // norm-preserving, and the even/odd projector commutes with the walk.
  const int hw = 16;
  const int n = 2 * hw + 1;
  const double p = pi / 6;
  double plane = 0;
  for (int j : {1, 5, 11}) {
    const double k = pi * j / n;
    for (int s : {+1, -1})
      for (int r : {+1, -1}) {
        FixedPState wave = plane_wave(p, Cxd(k), s, r, w, hw);
        const Cxd expect =
            std::exp(Cxd(0, -1) * pair_dispersion(Cxd(p), Cxd(k), s, r, w));
        FixedPState stepped = free_step(wave, w);
        plane = std::max(
            plane, (stepped.data() - expect * wave.data()).norm() /
                       wave.data().norm());
      }
  }
  su.record("two_particle.fixed_p_plane_wave", plane, 1e-12);

  double norm_drift = 0, commute = 0, complement = 0;
  for (int trial = 0; trial < 4; ++trial) {
    const double chi = su.uniform(-pi, pi);
    FixedPState s = su.random_fixed_p(p, hw);
    norm_drift = std::max(norm_drift,
                          std::abs(u2_step(s, chi, w).norm() - s.norm()));
    RelativeState r = su.random_relative(p, hw);
    // [U2, P] = 0: stepping the projected state equals projecting the
    // stepped state.
    const RelativeState lhs = u2_step(project_even_odd(r), chi, w);
    const RelativeState rhs = project_even_odd(u2_step(r, chi, w));
    commute = std::max(commute, (lhs.data() - rhs.data()).norm());
    // On the complement of P the interaction phase must drop out entirely.
    RelativeState c = r;
    for (int y = c.min_site(); y <= c.max_site(); ++y) {
      const bool odd = ((y % 2) + 2) % 2 == 1;
      if (odd) {
        c.amp(0, y) = 0;
        c.amp(3, y) = 0;
      } else {
        c.amp(1, y) = 0;
        c.amp(2, y) = 0;
      }
    }
    complement = std::max(
        complement,
        (u2_step(c, chi, w).data() - free_step(c, w).data()).norm());
  }
  su.record("two_particle.fixed_p_norm", norm_drift, 1e-12);
  su.record("two_particle.projector_commutes", commute, 1e-13);
  su.record("two_particle.interaction_confined", complement, 1e-14);
}

void check_solutions(Suite& su, const WalkParams<double>& w) {
  const int trials = su.quick() ? 50 : 400;
  double tmod = 0;
  for (int j = 0; j < trials; ++j) {
    const double p = su.uniform(-pi, pi), k = su.uniform(-pi, pi);
    const double chi = su.uniform(-pi, pi);
    for (int b : {+1, -1}) {
      const auto t = transmission(Cxd(p), Cxd(k), chi, b, w);
      if (t.pole) continue;
      tmod = std::max(tmod, std::abs(std::abs(t.value) - 1.0));
    }
  }
  su.record("solutions.transmission_modulus", tmod, 1e-13);

  const int stol = su.quick() ? 6 : 20;
  double scat = 0;
  for (int j = 0; j < stol; ++j) {
    const double p = su.uniform(0.1, pi / 2 - 0.1);
    double k = su.uniform(0.1, pi / 2 - 0.1) + (j % 2 ? pi / 2 : 0);
    const double chi = su.uniform(-pi + 0.1, pi - 0.1);
    const int branch = j % 2 ? -1 : +1;
    const auto sol = scattering_state(p, k, chi, branch, w);
    scat = std::max(scat, recurrence_residual(sol, w, -40, 40));
  }
  su.record("solutions.scattering_residual", scat, 1e-10);

  const int btol = su.quick() ? 6 : 16;
  double broot = 0, bres = 0, bgap = 0, buniq = 0;
  for (int j = 0; j < btol; ++j) {
    const double p = su.uniform(0.05, pi / 2 - 0.05);
    double chi = su.uniform(0.2, pi - 0.2) * (j % 2 ? -1 : 1);
    const auto roots = bound_momentum_scan(p, chi, w);
    buniq = std::max(buniq, std::abs(double(roots.size()) - 1.0));
    if (roots.size() != 1) continue;
    broot = std::max(broot, roots[0].transmission_residual);
    const auto sol = bound_state(p, chi, w);
    bres = std::max(bres, recurrence_residual(sol, w, -40, 40));
    const auto bands = continuous_bands(p, w);
    if (!bands.in_gap(sol.phase())) bgap = 1;
  }
  su.record("solutions.bound_uniqueness", buniq, 0);
  su.record("solutions.bound_transmission_zero", broot, 1e-10);
  su.record("solutions.bound_residual", bres, 1e-10);
  su.record("solutions.bound_in_gap", bgap, 0);

  double loc = 0;
  for (int j = 0; j < 6; ++j) {
    const double p = su.uniform(0.1, pi / 2 - 0.1);
    const int b = j % 2 ? -1 : +1;
    const auto sol = localized_state(p, b * 2 * p, w);
    loc = std::max(loc, recurrence_residual(sol, w, -6, 6));
  }
  su.record("solutions.localized_residual", loc, 1e-13);

  double stat = 0;
  const int hw = 24;
  for (double chi : {0.0, pi / 2, 2.0}) {
    for (int j : {3, 10}) {
      const double k = pi * j / hw;  // commensurate with the 2*hw ring
      const RelativeState s = stationary_plane_wave(k, w, hw);
      stat = std::max(stat, (u2_step(s, chi, w).data() - s.data()).norm());
    }
  }
  su.record("solutions.stationary_fixed", stat, 1e-10);
}

void check_oracle(Suite& su, const WalkParams<double>& w) {
  const int n = su.quick() ? 48 : 128;
  const double p = 0.7, chi = 1.1;
  const auto dense = build_dense(p, chi, w, n);
  su.record("oracle.dense_unitarity", unitarity_defect(dense.matrix), 1e-12);

  const auto free_dense = build_dense(p, 0.0, w, n);
  const auto spec = full_spectrum(free_dense);
  std::vector<Cxd> numeric(spec.values.data(),
                           spec.values.data() + spec.values.size());
  const auto analytic = free_spectrum(p, w, n);
  const double d1 = one_sided_spectral_distance(numeric, analytic);
  const double d2 = one_sided_spectral_distance(analytic, numeric);
  su.record("oracle.free_spectrum_match", std::max(d1, d2), 1e-10);

  // Consistency with the stencil step operator on a random state.  Ring
  // index z maps to window column (z + Z) mod sites so that the interacting
  // cell sits at ring index 0.
  FixedPState s = su.random_fixed_p(p, 23);
  const int sites = s.sites();
  const int half = s.halfwidth();
  FixedPState stepped = u2_step(s, chi, w);
  Eigen::VectorXcd flat(4 * sites), flat_stepped(4 * sites);
  for (int z = 0; z < sites; ++z)
    for (int c = 0; c < 4; ++c) {
      flat(4 * z + c) = s.data()(c, (z + half) % sites);
      flat_stepped(4 * z + c) = stepped.data()(c, (z + half) % sites);
    }
  const auto dense_ring = build_dense(p, chi, w, sites);
  su.record("oracle.matches_step_operator",
            (dense_ring.matrix * flat - flat_stepped).norm(), 1e-12);

  const double pb = su.uniform(0.2, 1.2), chib = su.uniform(0.4, 2.6);
  const auto bm = bound_state_momentum(pb, chib, w);
  const auto sol = bound_state(pb, chib, w);
  const auto gap = gap_eigenvalues(build_dense(pb, chib, w, n), 1e-3);
  double match = 1;
  for (const Cxd& lambda : gap)
    match = std::min(match, std::abs(lambda - sol.eigenvalue()));
  su.record("oracle.bound_eigenvalue_match", match, su.quick() ? 1e-6 : 1e-8,
            "k_im=" + std::to_string(bm.momentum.imag()));
}

void check_simulator(Suite& su, const WalkParams<double>& w) {
  const int L = su.quick() ? 64 : 128;
  const int steps = su.quick() ? 12 : 24;
  GridState s = singlet_at_origin(L);
  const Eigen::VectorXd mom0 = total_momentum_distribution(s);
  double drift = 0, antisym = 0;
  for (int t = 0; t < steps; ++t) {
    s = evolve_step(s, pi / 2, w, GridBoundary::Periodic);
    drift = std::max(drift, std::abs(s.norm() - 1.0));
    antisym = std::max(antisym, s.antisymmetry_defect());
  }
  su.record("simulator.norm_conservation", drift, 1e-12);
  su.record("simulator.antisymmetry", antisym, 1e-13);
  const Eigen::VectorXd mom1 = total_momentum_distribution(s);
  su.record("simulator.momentum_conservation",
            (mom1 - mom0).cwiseAbs().maxCoeff(), 1e-10);

  // Light cone: support after t steps stays within t sites of the start.
  GridState probe = singlet_at_origin(L);
  probe = evolve(probe, 5, 1.0, w, GridBoundary::Periodic);
  const auto field = probability(probe);
  double outside = 0;
  for (int x1 = 0; x1 < L; ++x1)
    for (int x2 = 0; x2 < L; ++x2)
      if (std::abs(x1 - L / 2) > 5 || std::abs(x2 - L / 2) > 5)
        outside += field.p(x1, x2);
  su.record("simulator.light_cone", outside, 0);
}

}  // namespace

std::vector<CheckResult> run_verification(VerifyLevel level,
                                          std::uint64_t seed,
                                          double tol_scale) {
  Suite su{level, std::mt19937_64(seed), tol_scale, {}};
  const WalkParams<double> w06(0.6), w07(0.7);
  check_core(su);
  check_single_particle(su, w06);
  check_single_particle(su, w07);
  check_two_particle(su, w06);
  check_solutions(su, w06);
  check_oracle(su, w06);
  check_simulator(su, w06);
  return su.results;
}

}  // namespace thirring
