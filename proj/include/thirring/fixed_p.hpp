#pragma once

#include <cassert>
#include <stdexcept>
#include <utility>

#include "thirring/two_particle.hpp"

namespace thirring {

namespace detail {

inline Eigen::Index wrap(Eigen::Index i, Eigen::Index n) {
  return ((i % n) + n) % n;
}

}  // namespace detail

/// Two-particle state at fixed total momentum p, restricted to the subspace
/// where the equal-spin components (1 and 4) live on odd relative sites
/// y = 2z+1 and the opposite-spin components (2 and 3) on even sites y = 2z.
/// Column z + halfwidth holds (psi1..psi4)(z) for z in [-Z, Z].
class FixedPState {
 public:
  using Data = Eigen::Matrix<Cxd, 4, Eigen::Dynamic>;

  FixedPState(double total_momentum, int halfwidth,
              Boundary boundary = Boundary::Ring)
      : total_momentum(total_momentum),
        boundary(boundary),
        data_(Data::Zero(4, 2 * halfwidth + 1)),
        halfwidth_(halfwidth) {
    if (halfwidth < 2)
      throw std::invalid_argument("FixedPState: halfwidth must be >= 2");
  }

  int halfwidth() const { return halfwidth_; }
  int sites() const { return 2 * halfwidth_ + 1; }

  Cxd& amp(int component, int z) { return data_(component, index(z)); }
  Cxd amp(int component, int z) const { return data_(component, index(z)); }

  Data& data() { return data_; }
  const Data& data() const { return data_; }

  double norm() const { return data_.norm(); }
  void normalize() { data_ /= norm(); }

  /// Max violation of psi1,4(-z) = -psi1,4(z-1) and psi2(-z) = -psi3(z).
  double antisymmetry_defect() const {
    double worst = 0;
    for (int z = -halfwidth_; z <= halfwidth_; ++z) {
      const int zm = mirror_odd(z);
      if (zm >= -halfwidth_ && zm <= halfwidth_) {
        worst = std::max(worst, std::abs(amp(0, z) + amp(0, zm)));
        worst = std::max(worst, std::abs(amp(3, z) + amp(3, zm)));
      }
      if (-z >= -halfwidth_ && -z <= halfwidth_)
        worst = std::max(worst, std::abs(amp(1, -z) + amp(2, z)));
    }
    return worst;
  }

  double total_momentum;
  Boundary boundary;

 private:
  Eigen::Index index(int z) const {
    assert(z >= -halfwidth_ && z <= halfwidth_);
    return z + halfwidth_;
  }
  // Exchange partner of z for the odd-site components.
  int mirror_odd(int z) const { return -z - 1; }

  Data data_;
  int halfwidth_;
};

/// General fixed-momentum state carrying all four coin components on every
/// relative site y in [-Y, Y-1].  The even site count keeps the even/odd
/// sublattice structure coherent around the ring; FixedPState embeds into
/// this space.
class RelativeState {
 public:
  using Data = Eigen::Matrix<Cxd, 4, Eigen::Dynamic>;

  RelativeState(double total_momentum, int halfwidth,
                Boundary boundary = Boundary::Ring)
      : total_momentum(total_momentum),
        boundary(boundary),
        data_(Data::Zero(4, 2 * halfwidth)),
        halfwidth_(halfwidth) {
    if (halfwidth < 4)
      throw std::invalid_argument("RelativeState: halfwidth must be >= 4");
  }

  int halfwidth() const { return halfwidth_; }
  int sites() const { return 2 * halfwidth_; }
  int min_site() const { return -halfwidth_; }
  int max_site() const { return halfwidth_ - 1; }

  Cxd& amp(int component, int y) { return data_(component, index(y)); }
  Cxd amp(int component, int y) const { return data_(component, index(y)); }

  Data& data() { return data_; }
  const Data& data() const { return data_; }

  double norm() const { return data_.norm(); }
  void normalize() { data_ /= norm(); }

  double total_momentum;
  Boundary boundary;

 private:
  Eigen::Index index(int y) const {
    assert(y >= -halfwidth_ && y < halfwidth_);
    return y + halfwidth_;
  }

  Data data_;
  int halfwidth_;
};

namespace detail {

// Row r of the state shifted so that out(z) = in(z - d); cyclic on a ring,
// zero-filled on a guarded window.
inline Eigen::Matrix<Cxd, 1, Eigen::Dynamic> shifted_component(
    const Eigen::Matrix<Cxd, 4, Eigen::Dynamic>& data, int r, int d,
    Boundary boundary) {
  const Eigen::Index n = data.cols();
  Eigen::Matrix<Cxd, 1, Eigen::Dynamic> out =
      Eigen::Matrix<Cxd, 1, Eigen::Dynamic>::Zero(1, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index src = j - d;
    if (boundary == Boundary::Ring)
      out(0, j) = data(r, wrap(src, n));
    else if (src >= 0 && src < n)
      out(0, j) = data(r, src);
  }
  return out;
}

// A cell counts as populated when it holds more than guard_tol of the state;
// exponentially small spillover from decaying profiles is tolerated.
inline double guard_tol(double norm) { return 1e-14 * std::max(1.0, norm); }

inline void guard_fixed_p(const FixedPState& s) {
  const int z = s.halfwidth();
  const double tol = guard_tol(s.norm());
  if (std::abs(s.amp(0, z)) > tol || std::abs(s.amp(1, z)) > tol ||
      std::abs(s.amp(3, z)) > tol || std::abs(s.amp(2, -z)) > tol)
    throw std::runtime_error(
        "fixed-p step: support reached the open window edge; enlarge the "
        "window or use Boundary::Ring");
}

inline void guard_relative(const RelativeState& s) {
  const int lo = s.min_site(), hi = s.max_site();
  const double tol = guard_tol(s.norm());
  bool leak = false;
  // The stencil reaches two sites, so anything within two cells of either
  // edge could cross it.
  for (int c = 0; c < 4; ++c)
    leak = leak || std::abs(s.amp(c, hi)) > tol ||
           std::abs(s.amp(c, hi - 1)) > tol || std::abs(s.amp(c, lo)) > tol ||
           std::abs(s.amp(c, lo + 1)) > tol;
  if (leak)
    throw std::runtime_error(
        "relative-coordinate step: support reached the open window edge");
}

}  // namespace detail

/// Interaction phase e^{i chi} on the opposite-spin components at relative
/// coordinate zero.
inline FixedPState apply_interaction(FixedPState s, double chi) {
  const Cxd phase = std::exp(Cxd(0, chi));
  s.amp(1, 0) *= phase;
  s.amp(2, 0) *= phase;
  return s;
}

inline RelativeState apply_interaction(RelativeState s, double chi) {
  const Cxd phase = std::exp(Cxd(0, chi));
  s.amp(1, 0) *= phase;
  s.amp(2, 0) *= phase;
  return s;
}

/// Free two-particle step at fixed total momentum on the even/odd sublattice
/// layout.  Norm-preserving on the ring; throws on support overflow on a
/// guarded window.
inline FixedPState free_step(const FixedPState& s, const WalkParams<double>& w) {
  if (s.boundary == Boundary::Guarded) detail::guard_fixed_p(s);
  const double p = s.total_momentum;
  const Cxd i(0, 1);
  const Cxd eip = std::exp(i * p), eim = std::exp(-i * p);
  const Cxd e2p = eip * eip, e2m = eim * eim;
  const double nu2 = w.nu * w.nu, mu2 = w.mu * w.mu;
  const Cxd hop_p = -i * w.mu * w.nu * eip;   // -i mu nu e^{+ip}
  const Cxd hop_m = -i * w.mu * w.nu * eim;   // -i mu nu e^{-ip}

  const auto& in = s.data();
  auto sh = [&](int r, int d) {
    return detail::shifted_component(in, r, d, s.boundary);
  };

  FixedPState out(p, s.halfwidth(), s.boundary);
  auto& o = out.data();
  o.row(0) = nu2 * e2p * in.row(0) + hop_p * in.row(1) + hop_p * sh(2, -1) -
             mu2 * in.row(3);
  o.row(1) = hop_p * sh(0, +1) + nu2 * sh(1, +1) - mu2 * in.row(2) +
             hop_m * sh(3, +1);
  o.row(2) = hop_p * in.row(0) - mu2 * in.row(1) + nu2 * sh(2, -1) +
             hop_m * in.row(3);
  o.row(3) = -mu2 * in.row(0) + hop_m * in.row(1) + hop_m * sh(2, -1) +
             nu2 * e2m * in.row(3);
  return out;
}

/// Full interacting step U2 = W2 V(chi): the interaction acts first.
inline FixedPState u2_step(const FixedPState& s, double chi,
                           const WalkParams<double>& w) {
  return free_step(apply_interaction(s, chi), w);
}

/// Free step on the general relative-coordinate layout; the restriction to
/// the even/odd sublattice reproduces free_step on FixedPState, and the
/// complementary sublattice carries an identical copy of the walk.
inline RelativeState free_step(const RelativeState& s,
                               const WalkParams<double>& w) {
  if (s.boundary == Boundary::Guarded) detail::guard_relative(s);
  const double p = s.total_momentum;
  const Cxd i(0, 1);
  const Cxd eip = std::exp(i * p), eim = std::exp(-i * p);
  const double nu2 = w.nu * w.nu, mu2 = w.mu * w.mu;
  const Cxd hop_p = -i * w.mu * w.nu * eip;
  const Cxd hop_m = -i * w.mu * w.nu * eim;

  const auto& in = s.data();
  auto sh = [&](int r, int d) {
    return detail::shifted_component(in, r, d, s.boundary);
  };

  RelativeState out(p, s.halfwidth(), s.boundary);
  auto& o = out.data();
  o.row(0) = nu2 * eip * eip * in.row(0) + hop_p * sh(1, +1) +
             hop_p * sh(2, -1) - mu2 * in.row(3);
  o.row(1) = hop_p * sh(0, +1) + nu2 * sh(1, +2) - mu2 * in.row(2) +
             hop_m * sh(3, +1);
  o.row(2) = hop_p * sh(0, -1) - mu2 * in.row(1) + nu2 * sh(2, -2) +
             hop_m * sh(3, -1);
  o.row(3) = -mu2 * in.row(0) + hop_m * sh(1, +1) + hop_m * sh(2, -1) +
             nu2 * eim * eim * in.row(3);
  return out;
}

inline RelativeState u2_step(const RelativeState& s, double chi,
                             const WalkParams<double>& w) {
  return free_step(apply_interaction(s, chi), w);
}

/// Projector P: keeps the equal-spin components on odd y and the
/// opposite-spin components on even y.
inline RelativeState project_even_odd(RelativeState s) {
  for (int y = s.min_site(); y <= s.max_site(); ++y) {
    const bool odd = (detail::wrap(y, 2) == 1);
    if (!odd) {
      s.amp(0, y) = 0;
      s.amp(3, y) = 0;
    } else {
      s.amp(1, y) = 0;
      s.amp(2, y) = 0;
    }
  }
  return s;
}

/// Embeds the P-subspace layout into the full relative-coordinate lattice:
/// components 1,4 of column z go to y = 2z+1, components 2,3 to y = 2z.
inline RelativeState to_relative(const FixedPState& s, int halfwidth_y) {
  RelativeState out(s.total_momentum, halfwidth_y, s.boundary);
  for (int z = -s.halfwidth(); z <= s.halfwidth(); ++z) {
    const int yo = 2 * z + 1, ye = 2 * z;
    if (yo >= out.min_site() && yo <= out.max_site()) {
      out.amp(0, yo) = s.amp(0, z);
      out.amp(3, yo) = s.amp(3, z);
    }
    if (ye >= out.min_site() && ye <= out.max_site()) {
      out.amp(1, ye) = s.amp(1, z);
      out.amp(2, ye) = s.amp(2, z);
    }
  }
  return out;
}

/// Extracts the P-subspace content of a relative-coordinate state.
inline FixedPState to_p_subspace(const RelativeState& s, int halfwidth_z) {
  FixedPState out(s.total_momentum, halfwidth_z, s.boundary);
  for (int z = -halfwidth_z; z <= halfwidth_z; ++z) {
    const int yo = 2 * z + 1, ye = 2 * z;
    if (yo >= s.min_site() && yo <= s.max_site()) {
      out.amp(0, z) = s.amp(0, yo);
      out.amp(3, z) = s.amp(3, yo);
    }
    if (ye >= s.min_site() && ye <= s.max_site()) {
      out.amp(1, z) = s.amp(1, ye);
      out.amp(2, z) = s.amp(2, ye);
    }
  }
  return out;
}

/// Projects onto the Fermionic sector, psi <- (psi - X psi)/2 with
/// (X psi)(y) = E psi(-y).  On a ring the mirror of the leftmost site wraps
/// onto itself; on a guarded window amplitudes beyond the edge count as
/// zero.  Throws if the input was purely symmetric.
inline RelativeState antisymmetrize(const RelativeState& s,
                                    bool renormalize = true) {
  RelativeState out(s.total_momentum, s.halfwidth(), s.boundary);
  auto mirrored = [&](int c, int y) -> Cxd {
    int m = -y;
    if (m > s.max_site()) {
      if (s.boundary == Boundary::Ring)
        m -= s.sites();
      else
        return Cxd(0);
    }
    return s.amp(c, m);
  };
  for (int y = s.min_site(); y <= s.max_site(); ++y) {
    out.amp(0, y) = 0.5 * (s.amp(0, y) - mirrored(0, y));
    out.amp(1, y) = 0.5 * (s.amp(1, y) - mirrored(2, y));
    out.amp(2, y) = 0.5 * (s.amp(2, y) - mirrored(1, y));
    out.amp(3, y) = 0.5 * (s.amp(3, y) - mirrored(3, y));
  }
  const double n = out.norm();
  if (n < 1e-14 * std::max(1.0, s.norm()))
    throw std::runtime_error(
        "antisymmetrize: input has no Fermionic component");
  if (renormalize) out.normalize();
  return out;
}

/// P-subspace plane wave with coin content from pair_eigenvector_raw:
/// components 1,4 carry e^{-i(2z+1)k}, components 2,3 carry e^{-i 2zk}.
/// An eigenvector of the free step with eigenvalue e^{-i w_{sr}(p,k)}.
inline FixedPState plane_wave(double p, Cxd k, int s, int r,
                              const WalkParams<double>& w, int halfwidth,
                              Boundary boundary = Boundary::Ring) {
  const Vec4cd v = pair_eigenvector_raw(Cxd(p), k, s, r, w);
  FixedPState out(p, halfwidth, boundary);
  const Cxd i(0, 1);
  for (int z = -halfwidth; z <= halfwidth; ++z) {
    const Cxd odd = std::exp(-i * k * double(2 * z + 1));
    const Cxd even = std::exp(-i * k * double(2 * z));
    out.amp(0, z) = v(0) * odd;
    out.amp(1, z) = v(1) * even;
    out.amp(2, z) = v(2) * even;
    out.amp(3, z) = v(3) * odd;
  }
  return out;
}

/// Deviations from the parity and momentum-shift conjugation identities of
/// the walk, evaluated on the momentum-space matrices over a k grid.
struct SymmetryReport {
  double single_parity_defect;  // W(p) vs sigma_x W(-p) sigma_x
  double pair_parity_defect;    // W2(-p,k) vs (sx(x)sx) E W2(p,k) E (sx(x)sx)
  double pair_shift_defect;     // W2(p+pi,k) vs (sz(x)sz) W2(p,k) (sz(x)sz)
  double max_defect() const {
    return std::max({single_parity_defect, pair_parity_defect,
                     pair_shift_defect});
  }
};

inline SymmetryReport symmetry_report(double p, const WalkParams<double>& w,
                                      int k_samples = 64) {
  Eigen::Matrix2cd sx;
  sx << 0, 1, 1, 0;
  Eigen::Matrix2cd sz;
  sz << 1, 0, 0, -1;
  const Mat4<double> sxx = kron2<double>(sx, sx), szz = kron2<double>(sz, sz);
  const Mat4<double> ex = exchange_matrix<double>();

  SymmetryReport rep{};
  rep.single_parity_defect =
      (walk_matrix(Cxd(p), w) - sx * walk_matrix(Cxd(-p), w) * sx).norm();
  for (int j = 0; j < k_samples; ++j) {
    const Cxd k(-pi + 2 * pi * (j + 0.5) / k_samples, 0.0);
    const Mat4<double> w2 = pair_walk_matrix(Cxd(p), k, w);
    rep.pair_parity_defect = std::max(
        rep.pair_parity_defect,
        (pair_walk_matrix(Cxd(-p), k, w) - sxx * ex * w2 * ex * sxx).norm());
    rep.pair_shift_defect = std::max(
        rep.pair_shift_defect,
        (pair_walk_matrix(Cxd(p + pi), k, w) - szz * w2 * szz).norm());
  }
  return rep;
}

}  // namespace thirring
