#include "thirring/oracle.hpp"

#include <Eigen/Eigenvalues>

namespace thirring {

namespace {

inline int wrapz(int z, int n) { return ((z % n) + n) % n; }

}  // namespace

DenseWalk build_dense(double p, double chi, const WalkParams<double>& params,
                      int sites) {
  if (sites < 16)
    throw std::invalid_argument("build_dense: need at least 16 ring sites");
  const int dim = 4 * sites;
  const Cxd i(0, 1);
  const Cxd eip = std::exp(i * p), eim = std::exp(-i * p);
  const double nu2 = params.nu * params.nu, mu2 = params.mu * params.mu;
  const Cxd hop_p = -i * params.mu * params.nu * eip;
  const Cxd hop_m = -i * params.mu * params.nu * eim;

  auto idx = [&](int z, int c) { return 4 * wrapz(z, sites) + c; };

  Eigen::MatrixXcd w2 = Eigen::MatrixXcd::Zero(dim, dim);
  for (int z = 0; z < sites; ++z) {
    // Row blocks of the free walk, one line of the recurrence each.
    w2(idx(z, 0), idx(z, 0)) += nu2 * eip * eip;
    w2(idx(z, 0), idx(z, 1)) += hop_p;
    w2(idx(z, 0), idx(z + 1, 2)) += hop_p;
    w2(idx(z, 0), idx(z, 3)) += -mu2;

    w2(idx(z, 1), idx(z - 1, 0)) += hop_p;
    w2(idx(z, 1), idx(z - 1, 1)) += nu2;
    w2(idx(z, 1), idx(z, 2)) += -mu2;
    w2(idx(z, 1), idx(z - 1, 3)) += hop_m;

    w2(idx(z, 2), idx(z, 0)) += hop_p;
    w2(idx(z, 2), idx(z, 1)) += -mu2;
    w2(idx(z, 2), idx(z + 1, 2)) += nu2;
    w2(idx(z, 2), idx(z, 3)) += hop_m;

    w2(idx(z, 3), idx(z, 0)) += -mu2;
    w2(idx(z, 3), idx(z, 1)) += hop_m;
    w2(idx(z, 3), idx(z + 1, 2)) += hop_m;
    w2(idx(z, 3), idx(z, 3)) += nu2 * eim * eim;
  }

  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(dim);
  v(idx(0, 1)) = std::exp(i * chi);
  v(idx(0, 2)) = std::exp(i * chi);

  DenseWalk dense{p, chi, params, sites, w2 * v.asDiagonal()};
  return dense;
}

Spectrum full_spectrum(const DenseWalk& dense) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(dense.matrix, true);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("full_spectrum: diagonalization failed");
  Spectrum s{solver.eigenvalues(), solver.eigenvectors(), 0.0};
  for (Eigen::Index j = 0; j < s.values.size(); ++j) {
    const double r =
        (dense.matrix * s.vectors.col(j) - s.values(j) * s.vectors.col(j))
            .norm();
    s.max_residual = std::max(s.max_residual, r);
  }
  return s;
}

Eigen::MatrixXcd antisymmetric_basis(int sites) {
  const int n = sites;
  auto idx = [&](int z, int c) { return 4 * wrapz(z, n) + c; };
  std::vector<Eigen::VectorXcd> cols;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  // Equal-spin components pair z with -z-1; a self-paired site (odd ring)
  // is forced to zero and contributes nothing.
  for (int c : {0, 3}) {
    for (int z = 0; z < n; ++z) {
      const int zm = wrapz(-z - 1, n);
      if (z < zm) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4 * n);
        v(idx(z, c)) = inv_sqrt2;
        v(idx(zm, c)) = -inv_sqrt2;
        cols.push_back(std::move(v));
      }
    }
  }
  // Opposite-spin components pair (2, z) with (3, -z) across components.
  for (int z = 0; z < n; ++z) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4 * n);
    v(idx(z, 1)) = inv_sqrt2;
    v(idx(-z, 2)) = -inv_sqrt2;
    cols.push_back(std::move(v));
  }
  Eigen::MatrixXcd basis(4 * n, static_cast<Eigen::Index>(cols.size()));
  for (Eigen::Index j = 0; j < basis.cols(); ++j) basis.col(j) = cols[j];
  return basis;
}

Spectrum antisymmetric_spectrum(const DenseWalk& dense) {
  const Eigen::MatrixXcd basis = antisymmetric_basis(dense.sites);
  const Eigen::MatrixXcd restricted =
      basis.adjoint() * dense.matrix * basis;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(restricted, true);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("antisymmetric_spectrum: diagonalization failed");
  Spectrum s{solver.eigenvalues(), basis * solver.eigenvectors(), 0.0};
  for (Eigen::Index j = 0; j < s.values.size(); ++j) {
    const double r =
        (dense.matrix * s.vectors.col(j) - s.values(j) * s.vectors.col(j))
            .norm();
    s.max_residual = std::max(s.max_residual, r);
  }
  return s;
}

std::vector<Cxd> gap_eigenvalues(const DenseWalk& dense, double margin) {
  const Spectrum s = antisymmetric_spectrum(dense);
  const BandStructure bands =
      continuous_bands(dense.total_momentum, dense.params);
  std::vector<Cxd> out;
  for (Eigen::Index j = 0; j < s.values.size(); ++j) {
    const double phase = -std::arg(s.values(j));
    if (bands.distance_to_bands(phase) > margin) out.push_back(s.values(j));
  }
  return out;
}

std::vector<Cxd> free_spectrum(double p, const WalkParams<double>& params,
                               int sites) {
  std::vector<Cxd> out;
  out.reserve(4 * sites);
  const Cxd i(0, 1);
  for (int j = 0; j < sites; ++j) {
    const double k = pi * j / sites;
    for (int s : {+1, -1})
      for (int r : {+1, -1})
        out.push_back(
            std::exp(-i * pair_dispersion(Cxd(p), Cxd(k), s, r, params)));
  }
  return out;
}

double one_sided_spectral_distance(const std::vector<Cxd>& a,
                                   const std::vector<Cxd>& b) {
  double worst = 0;
  for (const Cxd& x : a) {
    double best = std::numeric_limits<double>::infinity();
    for (const Cxd& y : b) best = std::min(best, std::abs(x - y));
    worst = std::max(worst, best);
  }
  return worst;
}

double recurrence_residual(const std::function<Vec4cd(int)>& amplitude,
                           Cxd eigenvalue, double p, double chi,
                           const WalkParams<double>& params, int zmin,
                           int zmax) {
  const Cxd i(0, 1);
  const Cxd eip = std::exp(i * p), eim = std::exp(-i * p);
  const double nu2 = params.nu * params.nu, mu2 = params.mu * params.mu;
  const Cxd hp = -i * params.mu * params.nu * eip;
  const Cxd hm = -i * params.mu * params.nu * eim;
  const Cxd vx = std::exp(i * chi);

  double worst = 0;
  for (int z = zmin; z <= zmax; ++z) {
    const Vec4cd at = amplitude(z);
    const Vec4cd prev = amplitude(z - 1);
    const Vec4cd next = amplitude(z + 1);
    const Cxd v0 = z == 0 ? vx : Cxd(1);    // e^{i chi delta_{z,0}}
    const Cxd vm1 = z == -1 ? vx : Cxd(1);  // e^{i chi delta_{z,-1}}
    const Cxd vp1 = z == 1 ? vx : Cxd(1);   // e^{i chi delta_{z,1}}

    const Cxd r1 = eigenvalue * at(0) -
                   (nu2 * eip * eip * at(0) + hp * v0 * at(1) +
                    hp * vm1 * next(2) - mu2 * at(3));
    const Cxd r2 = eigenvalue * at(1) -
                   (hp * prev(0) + nu2 * vp1 * prev(1) - mu2 * v0 * at(2) +
                    hm * prev(3));
    const Cxd r3 = eigenvalue * at(2) -
                   (hp * at(0) - mu2 * v0 * at(1) + nu2 * vm1 * next(2) +
                    hm * at(3));
    const Cxd r4 = eigenvalue * at(3) -
                   (-mu2 * at(0) + hm * v0 * at(1) + hm * vm1 * next(2) +
                    nu2 * eim * eim * at(3));
    worst = std::max({worst, std::abs(r1), std::abs(r2), std::abs(r3),
                      std::abs(r4)});
  }
  return worst;
}

double recurrence_residual(const EigenSolution& solution,
                           const WalkParams<double>& params, int zmin,
                           int zmax) {
  return recurrence_residual([&](int z) { return solution.amplitude(z); },
                             solution.eigenvalue(), solution.total_momentum(),
                             solution.coupling(), params, zmin, zmax);
}

double recurrence_residual(const FixedPState& state, Cxd eigenvalue,
                           double chi, const WalkParams<double>& params) {
  const int hw = state.halfwidth();
  auto amp = [&](int z) -> Vec4cd {
    Vec4cd v;
    if (state.boundary == Boundary::Ring) {
      const int n = state.sites();
      const int zz = wrapz(z + hw, n) - hw;
      for (int c = 0; c < 4; ++c) v(c) = state.amp(c, zz);
    } else {
      for (int c = 0; c < 4; ++c)
        v(c) = (z >= -hw && z <= hw) ? state.amp(c, z) : Cxd(0);
    }
    return v;
  };
  const int margin = state.boundary == Boundary::Ring ? 0 : 1;
  return recurrence_residual(amp, eigenvalue, state.total_momentum, chi,
                             params, -hw + margin, hw - margin);
}

}  // namespace thirring
