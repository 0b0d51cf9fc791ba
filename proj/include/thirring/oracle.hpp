#pragma once

#include <functional>
#include <vector>

#include "thirring/solutions.hpp"

namespace thirring {

/// Dense matrix of the interacting fixed-momentum walk on a periodic ring of
/// `sites` relative cells in the even/odd sublattice layout; dimension
/// 4*sites.  Basis index = 4*z + component.
struct DenseWalk {
  double total_momentum;
  double coupling;
  WalkParams<double> params;
  int sites;
  Eigen::MatrixXcd matrix;
};

/// Builds the dense walk directly from the recurrence coefficients
/// (independent of the stencil-based step operator).
DenseWalk build_dense(double p, double chi, const WalkParams<double>& params,
                      int sites);

struct Spectrum {
  Eigen::VectorXcd values;
  Eigen::MatrixXcd vectors;  // column j pairs with values(j)
  double max_residual;       // max_j ||M v_j - lambda_j v_j||
};

/// Full dense diagonalization; all eigenvalues lie on the unit circle.
Spectrum full_spectrum(const DenseWalk& dense);

/// Orthonormal basis of the Fermionic (exchange-antisymmetric) sector of the
/// ring, as columns of a 4N x d matrix.
Eigen::MatrixXcd antisymmetric_basis(int sites);

/// Spectrum of the walk restricted to the antisymmetric sector.
Spectrum antisymmetric_spectrum(const DenseWalk& dense);

/// Eigenvalues in the Fermionic sector lying strictly outside the continuous
/// bands by more than `margin` (phase distance).
std::vector<Cxd> gap_eigenvalues(const DenseWalk& dense, double margin = 1e-4);

/// The free-walk spectrum on the ring: e^{-i w_{sr}(p, k_j)} over all four
/// branch pairs and the ring momenta k_j = pi j / N, j = 0..N-1.
std::vector<Cxd> free_spectrum(double p, const WalkParams<double>& params,
                               int sites);

/// Largest distance from any element of `a` to its nearest neighbour in `b`.
double one_sided_spectral_distance(const std::vector<Cxd>& a,
                                   const std::vector<Cxd>& b);

/// Max over sites and components of |LHS - RHS| of the eigenvalue
/// recurrence, evaluated from the closed-form amplitudes at every z in
/// [zmin, zmax] (neighbour sites are taken from the generator, so there are
/// no window-edge effects).  This is the defining residual of an
/// eigensolution and is implemented directly from the recurrence, separate
/// from the step operators.
double recurrence_residual(const std::function<Vec4cd(int)>& amplitude,
                           Cxd eigenvalue, double p, double chi,
                           const WalkParams<double>& params, int zmin,
                           int zmax);

double recurrence_residual(const EigenSolution& solution,
                           const WalkParams<double>& params, int zmin,
                           int zmax);

/// Same residual for a windowed state (sites within the stencil reach of
/// the window edge are skipped on a guarded window).
double recurrence_residual(const FixedPState& state, Cxd eigenvalue,
                           double chi, const WalkParams<double>& params);

}  // namespace thirring
