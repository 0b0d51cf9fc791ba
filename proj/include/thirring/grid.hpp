#pragma once

#include <array>

#include "thirring/solutions.hpp"

namespace thirring {

enum class GridBoundary { Periodic, GuardedOpen };

/// Two-particle position-space state psi(a1, a2, x1, x2) on an L x L grid.
/// Component index 2*a1 + a2 with a = 0 (up), 1 (down); matrix entry
/// (x1, x2).  Physical states are antisymmetric under particle exchange,
/// psi(a2, a1, x2, x1) = -psi(a1, a2, x1, x2).
class GridState {
 public:
  explicit GridState(int size)
      : size_(size) {
    if (size < 4 || size % 2 != 0)
      throw std::invalid_argument("GridState: lattice size must be even, >= 4");
    for (auto& c : comp_) c = Eigen::MatrixXcd::Zero(size, size);
  }

  int size() const { return size_; }

  Cxd& amp(int a1, int a2, int x1, int x2) {
    return comp_[2 * a1 + a2](x1, x2);
  }
  Cxd amp(int a1, int a2, int x1, int x2) const {
    return comp_[2 * a1 + a2](x1, x2);
  }

  std::array<Eigen::MatrixXcd, 4>& components() { return comp_; }
  const std::array<Eigen::MatrixXcd, 4>& components() const { return comp_; }

  double norm() const;
  void normalize();

  /// Max violation of psi(a2, a1, x2, x1) = -psi(a1, a2, x1, x2).
  double antisymmetry_defect() const;

 private:
  int size_;
  std::array<Eigen::MatrixXcd, 4> comp_;
};

/// Spin singlet (ud - du)/sqrt(2) with both particles at x = L/2.
GridState singlet_at_origin(int size);

/// Fermionic projection psi <- (psi - exchanged(psi))/2; throws if the
/// input has no antisymmetric component.
GridState antisymmetrized(const GridState& state, bool renormalize = true);

/// Wave packet of bound states peaked at half total momentum p0, with a
/// Gaussian centre-of-mass envelope of width `width` (standard deviation of
/// |psi|^2 in w = x1 + x2) around the grid centre.  Each momentum component
/// carries its own exact bound profile, so the packet spreads only in the
/// centre-of-mass coordinate.  width = inf gives the single exact fixed-p
/// eigenstate; combine that with wrap_separation on a periodic lattice with
/// ring-commensurate p0 (on an open lattice keep the wrap off).
GridState bound_state_packet(double total_momentum, double coupling,
                             const WalkParams<double>& params, double width,
                             int size, bool wrap_separation = false);

/// One step of the interacting walk U2 = (W (x) W) V_int: the on-site
/// opposite-spin phase acts first, then the free walk on each particle.
/// Preserves the norm to machine precision and Fermionic antisymmetry
/// exactly; GuardedOpen throws if support would leave the grid.
GridState evolve_step(const GridState& state, double chi,
                      const WalkParams<double>& params,
                      GridBoundary boundary = GridBoundary::Periodic);

GridState evolve(GridState state, int steps, double chi,
                 const WalkParams<double>& params,
                 GridBoundary boundary = GridBoundary::Periodic);

/// Spin-summed position distribution with its diagonal mass and the
/// relative / centre-of-mass marginals.
struct ProbabilityField {
  Eigen::MatrixXd p;             // p(x1, x2), sums to 1
  double diagonal_mass;          // sum_x p(x, x)
  Eigen::VectorXd marginal_rel;  // over x1 - x2 in [-(L-1), L-1]
  Eigen::VectorXd marginal_com;  // over x1 + x2 in [0, 2L-2]
  double width_rel;              // std dev of the relative marginal
  double width_com;              // std dev of the centre-of-mass marginal
};

ProbabilityField probability(const GridState& state);

/// Distribution of the total momentum (p1 + p2 mod 2 pi, L bins); conserved
/// by the interacting evolution.
Eigen::VectorXd total_momentum_distribution(const GridState& state);

}  // namespace thirring
