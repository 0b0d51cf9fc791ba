#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "thirring/fixed_p.hpp"

namespace thirring {

/// Transmission coefficient relating incoming and outgoing plane waves at
/// the interaction site.  branch = +1 is the equal-branch (even) sector,
/// branch = -1 the mixed (odd) sector:
///   T+ = (g+(p+k) + e^{-i chi} g+(p-k)) / (g+(p-k) + e^{-i chi} g+(p+k)),
///   T- = (g+(p+k) + e^{-i chi} g-(p-k)) / (g-(p-k) + e^{-i chi} g+(p+k)).
/// Unit modulus for real p, k.  A vanishing denominator is reported as a
/// resonance pole, not an error.
template <class Real = double>
struct TransmissionCoefficient {
  int branch;
  Complex<Real> value;
  Complex<Real> numerator;
  Complex<Real> denominator;
  bool pole;
};

template <class Real>
TransmissionCoefficient<Real> transmission(Complex<Real> p, Complex<Real> k,
                                           Real chi, int branch,
                                           const WalkParams<Real>& w,
                                           Real pole_tol = Real(1e-14)) {
  assert(branch == 1 || branch == -1);
  const Complex<Real> a = down_amplitude(p + k, +1, w);
  const Complex<Real> b = down_amplitude(p - k, branch, w);
  const Complex<Real> phase = std::exp(Complex<Real>(0, -chi));
  const Complex<Real> num = a + phase * b;
  const Complex<Real> den = b + phase * a;
  const bool pole = std::abs(den) <= pole_tol * (Real(1) + std::abs(num));
  return {branch, pole ? Complex<Real>(0) : num / den, num, den, pole};
}

enum class SolutionKind { Scattering, Bound, Localized, Stationary };

/// A closed-form eigensolution of the interacting fixed-momentum walk on the
/// even/odd sublattice.  amplitude(z) evaluates the profile at any relative
/// site; state(Z) materializes a window.
class EigenSolution {
 public:
  SolutionKind kind() const { return kind_; }
  double total_momentum() const { return p_; }
  double coupling() const { return chi_; }
  Cxd relative_momentum() const { return k_; }
  int branch() const { return branch_; }
  /// Real phase with e^{-i phase} the eigenvalue, reduced to (-pi, pi].
  double phase() const { return phase_; }
  Cxd eigenvalue() const { return eigenvalue_; }

  Vec4cd amplitude(int z) const { return gen_(z); }

  FixedPState state(int halfwidth, Boundary boundary = Boundary::Guarded) const {
    FixedPState out(p_, halfwidth, boundary);
    for (int z = -halfwidth; z <= halfwidth; ++z) {
      const Vec4cd a = gen_(z);
      for (int c = 0; c < 4; ++c) out.amp(c, z) = a(c);
    }
    return out;
  }

  EigenSolution(SolutionKind kind, double p, double chi, Cxd k, int branch,
                Cxd eigenvalue, std::function<Vec4cd(int)> gen)
      : kind_(kind),
        p_(p),
        chi_(chi),
        k_(k),
        branch_(branch),
        eigenvalue_(eigenvalue),
        phase_(reduce_to_zone(-std::arg(eigenvalue))),
        gen_(std::move(gen)) {}

 private:
  SolutionKind kind_;
  double p_, chi_;
  Cxd k_;
  int branch_;
  Cxd eigenvalue_;
  double phase_;
  std::function<Vec4cd(int)> gen_;
};

namespace detail {

// Profile of the scattering/bound family in the shorthand coin components
// (a, b, c, d) = pair_eigenvector_raw(p, k, +, branch):
//   psi1(z) = a (e^{-i(2z+1)k} - T e^{+i(2z+1)k})
//   psi2(z) = e^{-i chi [z==0]} (b e^{-i2zk} - T c e^{+i2zk})
//   psi3(z) = c e^{-i2zk} - T b e^{+i2zk}
//   psi4(z) = d (e^{-i(2z+1)k} - T e^{+i(2z+1)k})
// for z >= 0, antisymmetric continuation for z < 0.  T = 0 gives the bound
// profile.
inline std::function<Vec4cd(int)> scattering_generator(double p, Cxd k,
                                                       double chi, Cxd trans,
                                                       Vec4cd coin, Cxd scale) {
  return [=](int z) -> Vec4cd {
    auto direct = [&](int zz) -> Vec4cd {
      const Cxd i(0, 1);
      const Cxd odd_in = std::exp(-i * k * double(2 * zz + 1));
      const Cxd even_in = std::exp(-i * k * double(2 * zz));
      // For a vanishing outgoing coefficient skip the growing exponential
      // entirely: it overflows deep in the tail of bound profiles.
      const Cxd odd_out =
          trans == Cxd(0) ? Cxd(0)
                          : trans * std::exp(i * k * double(2 * zz + 1));
      const Cxd even_out =
          trans == Cxd(0) ? Cxd(0) : trans * std::exp(i * k * double(2 * zz));
      const Cxd vertex = zz == 0 ? std::exp(-i * chi) : Cxd(1);
      Vec4cd out;
      out(0) = coin(0) * (odd_in - odd_out);
      out(1) = vertex * (coin(1) * even_in - coin(2) * even_out);
      out(2) = coin(2) * even_in - coin(1) * even_out;
      out(3) = coin(3) * (odd_in - odd_out);
      return scale * out;
    };
    if (z >= 0) return direct(z);
    const Vec4cd odd = direct(-z - 1);
    const Vec4cd even = direct(-z);
    Vec4cd out;
    out(0) = -odd(0);
    out(1) = -even(2);
    out(2) = -even(1);
    out(3) = -odd(3);
    return out;
  };
}

inline void require_branch(int branch) {
  if (branch != 1 && branch != -1)
    throw std::invalid_argument("branch must be +1 or -1");
}

}  // namespace detail

/// Generalized (non-normalizable) eigenvector with real relative momentum k
/// and eigenvalue e^{-i w_{sr}(p,k)} in the continuous spectrum.
/// Rejects p in {0, pi/2} (handled by the stationary construction) and k in
/// {0, +-pi/2, pi} where the four-fold degeneracy collapses.
inline EigenSolution scattering_state(double p, double k, double chi,
                                      int branch, const WalkParams<double>& w) {
  detail::require_branch(branch);
  const double pr = reduce_to_zone(p);
  if (std::min(std::abs(std::remainder(pr, pi)),
               std::abs(std::remainder(pr - pi / 2, pi))) < 1e-9)
    throw std::domain_error(
        "scattering_state: p in {0, pi/2} (mod pi) is degenerate; use "
        "stationary_states");
  const double kr = reduce_to_zone(k);
  if (std::abs(std::remainder(kr, pi / 2)) < 1e-9) {
    std::ostringstream msg;
    msg << "scattering_state: k = " << k
        << " collapses the degeneracy quadruple (k in {0, +-pi/2, pi}); "
           "perturb k";
    throw std::domain_error(msg.str());
  }
  const auto t = transmission(Cxd(pr), Cxd(kr), chi, branch, w);
  if (t.pole)
    throw std::domain_error(
        "scattering_state: transmission resonance (denominator ~ 0)");
  const Vec4cd coin = pair_eigenvector_raw(Cxd(pr), Cxd(kr), +1, branch, w);
  const Cxd omega = pair_dispersion(Cxd(pr), Cxd(kr), +1, branch, w);
  const Cxd eigenvalue = std::exp(Cxd(0, -1) * omega);
  return EigenSolution(
      SolutionKind::Scattering, pr, chi, Cxd(kr), branch, eigenvalue,
      detail::scattering_generator(pr, Cxd(kr), chi, t.value, coin, Cxd(1)));
}

struct BoundMomentum {
  Cxd momentum;                  // k~ with Re in {0, +-pi/2, pi}, Im < 0
  int branch;                    // +1: T+ root, -1: T- root
  double transmission_residual;  // |T(k~)| after refinement
};

struct RootScanOptions {
  double max_imag = 20.0;  // scan depth in |Im k|
  int grid = 4000;         // indicator samples per line
  int bisection_steps = 200;
};

namespace detail {

struct LineSpec {
  double re;   // Re k on the line
  int branch;  // transmission branch that can vanish there
};

// The four lines carrying real two-particle phases.  On each line the T
// numerator equals, up to a nonzero constant phase, a real indicator:
//   Re k = 0:      Im(e^{i chi/2} g+(p + it))
//   Re k = pi:     Im(e^{i chi/2} g-(p + it))
//   Re k = +-pi/2: Re(e^{i chi/2} g+(p -+ pi/2 + it))   [note the sign swap]
inline double line_indicator(const LineSpec& line, double p, double chi,
                             double t, const WalkParams<double>& w) {
  const Cxd rot = std::exp(Cxd(0, chi / 2));
  if (line.re == 0.0) return (rot * down_amplitude(Cxd(p, t), +1, w)).imag();
  if (line.re == pi) return (rot * down_amplitude(Cxd(p, t), -1, w)).imag();
  return (rot * down_amplitude(Cxd(p + line.re, t), +1, w)).real();
}

}  // namespace detail

/// Scans all four lines Re k in {0, +-pi/2, pi} for roots of T+ = 0 or
/// T- = 0 with Im k < 0 and returns every root found.  The walk has exactly
/// one such root per (p, chi) with e^{i chi} not in {1, -1}.
inline std::vector<BoundMomentum> bound_momentum_scan(
    double p, double chi, const WalkParams<double>& w,
    const RootScanOptions& opt = {}) {
  const std::array<detail::LineSpec, 4> lines{{
      {0.0, +1}, {pi, +1}, {pi / 2, -1}, {-pi / 2, -1}}};
  std::vector<BoundMomentum> roots;
  for (const auto& line : lines) {
    const double t_lo = -opt.max_imag, t_hi = -1e-12;
    const double h = (t_hi - t_lo) / opt.grid;
    double prev_t = t_lo;
    double prev_f = detail::line_indicator(line, p, chi, prev_t, w);
    for (int j = 1; j <= opt.grid; ++j) {
      const double t = t_lo + j * h;
      const double f = detail::line_indicator(line, p, chi, t, w);
      if (prev_f == 0.0 || (prev_f < 0) != (f < 0)) {
        double lo = prev_t, hi = t, flo = prev_f;
        for (int it = 0; it < opt.bisection_steps; ++it) {
          const double mid = 0.5 * (lo + hi);
          const double fm = detail::line_indicator(line, p, chi, mid, w);
          if (fm == 0.0) {
            lo = hi = mid;
            break;
          }
          if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
          } else {
            hi = mid;
          }
        }
        const Cxd k(line.re, 0.5 * (lo + hi));
        const auto tc = transmission(Cxd(p), k, chi, line.branch, w);
        // A sign change of the indicator is a numerator root only if the
        // denominator stays away from zero there (else it is a resonance of
        // the opposite coupling sign, not an eigenvalue).
        const bool duplicate = std::any_of(
            roots.begin(), roots.end(), [&](const BoundMomentum& r) {
              return r.branch == line.branch &&
                     std::abs(r.momentum - k) < 1e-9;
            });
        if (!duplicate && !tc.pole && std::abs(tc.value) < 1e-8)
          roots.push_back({k, line.branch, std::abs(tc.value)});
      }
      prev_t = t;
      prev_f = f;
    }
  }
  return roots;
}

/// The unique decaying root of T+- = 0.  Throws when e^{i chi} is in
/// {1, -1} (no interaction / no decaying root) or when the scan does not
/// find exactly one root.
inline BoundMomentum bound_state_momentum(double p, double chi,
                                          const WalkParams<double>& w,
                                          const RootScanOptions& opt = {}) {
  const double chi_r = reduce_to_zone(chi);
  if (std::min(std::abs(chi_r), pi - std::abs(chi_r)) < 1e-12)
    throw std::domain_error(
        "bound_state_momentum: e^{i chi} in {1, -1}; the interaction phase "
        "is trivial and no decaying root exists");
  auto roots = bound_momentum_scan(p, chi_r, w, opt);
  if (roots.size() != 1) {
    std::ostringstream msg;
    msg << "bound_state_momentum: expected exactly one root, found "
        << roots.size() << " for p=" << p << " chi=" << chi << " (lines";
    for (const auto& r : roots)
      msg << " [Re k=" << r.momentum.real() << ", Im k=" << r.momentum.imag()
          << ", branch " << (r.branch > 0 ? "+" : "-") << "]";
    msg << "); if chi ~ +-2p the solution is the localized state";
    throw std::runtime_error(msg.str());
  }
  return roots.front();
}

/// Proper eigenvector decaying as e^{-2|Im k~| z} in the relative
/// coordinate, with eigenvalue in the gap between the continuous bands.
/// Normalized to unit l2 norm over the infinite lattice.
inline EigenSolution bound_state(double p, double chi,
                                 const WalkParams<double>& w,
                                 const RootScanOptions& opt = {}) {
  const BoundMomentum bm = bound_state_momentum(p, chi, w, opt);
  const Cxd k = bm.momentum;
  const Vec4cd coin = pair_eigenvector_raw(Cxd(p), k, +1, bm.branch, w);
  const Cxd omega = pair_dispersion(Cxd(p), k, +1, bm.branch, w);
  // The phase is real on the root lines; anything else is a solver bug.
  assert(std::abs(omega.imag()) < 1e-9);
  const Cxd eigenvalue = std::exp(Cxd(0, -omega.real()));

  // l2 norm from geometric sums: |psi(z)| decays as e^{2 z Im k}.
  const double decay = std::exp(4.0 * k.imag());  // per unit z, squared amps
  const double odd2 = std::norm(coin(0)) + std::norm(coin(3));
  const double even2 = std::norm(coin(1)) + std::norm(coin(2));
  const double norm2 = 2.0 * odd2 * std::exp(2.0 * k.imag()) / (1.0 - decay) +
                       2.0 * even2 * decay / (1.0 - decay) + even2;
  const Cxd scale(1.0 / std::sqrt(norm2));

  return EigenSolution(
      SolutionKind::Bound, reduce_to_zone(p), reduce_to_zone(chi), k,
      bm.branch, eigenvalue,
      detail::scattering_generator(p, k, chi, Cxd(0), coin, scale));
}

/// Perfectly localized eigenvector supported on relative sites y in
/// {-1, 0, 1}, existing iff e^{i chi} = e^{+-i 2p}; the eigenvalue is
/// e^{+-i 2p} accordingly.  In the even/odd layout the equal-spin
/// components sit at z in {-1, 0} and the opposite-spin ones at z = 0.
inline EigenSolution localized_state(double p, double chi,
                                     const WalkParams<double>& w,
                                     double condition_tol = 1e-9) {
  const Cxd phase = std::exp(Cxd(0, chi));
  const Cxd i(0, 1);
  int branch;
  if (std::abs(phase - std::exp(i * 2.0 * p)) <= condition_tol)
    branch = +1;
  else if (std::abs(phase - std::exp(-i * 2.0 * p)) <= condition_tol)
    branch = -1;
  else
    throw std::domain_error(
        "localized_state: requires e^{i chi} = e^{+-i 2p} (chi = +-2p mod "
        "2 pi); no three-site eigenvector exists otherwise");

  const Cxd equal_spin = -i * std::exp(i * double(branch) * p);
  const Cxd zeta = branch > 0 ? equal_spin : Cxd(0);
  const Cxd zeta_prime = branch > 0 ? Cxd(0) : equal_spin;
  const Cxd eta(w.mu / w.nu);
  const double norm =
      std::sqrt(2 * std::norm(zeta) + 2 * std::norm(zeta_prime) +
                2 * std::norm(eta));
  const Cxd eigenvalue = std::exp(i * 2.0 * double(branch) * p);

  auto gen = [=](int z) -> Vec4cd {
    Vec4cd out = Vec4cd::Zero();
    if (z == 0) {
      out(0) = zeta;
      out(1) = eta;
      out(2) = -eta;
      out(3) = zeta_prime;
    } else if (z == -1) {
      out(0) = -zeta;
      out(3) = -zeta_prime;
    }
    return out / norm;
  };
  return EigenSolution(SolutionKind::Localized, reduce_to_zone(p),
                       reduce_to_zone(chi), Cxd(0), branch, eigenvalue, gen);
}

/// Stationary eigenstate of the walk at zero total momentum: an
/// antisymmetrized mixed-branch plane wave projected onto the sublattice
/// where the interaction acts trivially.  Fixed by the interacting step for
/// every coupling, eigenvalue exactly 1.
struct StationarySolution {
  double relative_momentum;
  RelativeState state;
};

inline RelativeState stationary_plane_wave(double k,
                                           const WalkParams<double>& w,
                                           int halfwidth,
                                           Boundary boundary = Boundary::Ring) {
  RelativeState out(0.0, halfwidth, boundary);
  const Vec4cd vpm = pair_eigenvector(Cxd(0), Cxd(k), +1, -1, w).vec;
  const Vec4cd vmp = pair_eigenvector(Cxd(0), Cxd(-k), -1, +1, w).vec;
  const Cxd i(0, 1);
  for (int y = out.min_site(); y <= out.max_site(); ++y) {
    const Cxd in = std::exp(-i * k * double(y)), outw = std::exp(i * k * double(y));
    for (int c = 0; c < 4; ++c)
      out.amp(c, y) = 0.5 * (vpm(c) * in - vmp(c) * outw);
  }
  // Keep the complement of the even/odd projector: equal-spin components on
  // even y, opposite-spin components on odd y.
  for (int y = out.min_site(); y <= out.max_site(); ++y) {
    const bool odd = detail::wrap(y, 2) == 1;
    if (odd) {
      out.amp(0, y) = 0;
      out.amp(3, y) = 0;
    } else {
      out.amp(1, y) = 0;
      out.amp(2, y) = 0;
    }
  }
  out.normalize();
  return out;
}

/// The two independent stationary states at relative momenta +-k.
inline std::pair<StationarySolution, StationarySolution> stationary_states(
    double k, const WalkParams<double>& w, int halfwidth,
    Boundary boundary = Boundary::Ring) {
  return {StationarySolution{k, stationary_plane_wave(k, w, halfwidth, boundary)},
          StationarySolution{-k, stationary_plane_wave(-k, w, halfwidth, boundary)}};
}

/// Relative-coordinate probability profiles of the two stationary wave
/// packets at p = 0, integrating the mixed-branch eigenvectors over the
/// zone by the trapezoid rule (periodic integrand, so spectrally accurate).
/// sign = -1 gives the difference combination, +1 the sum.
inline Eigen::VectorXd stationary_packet_profile(const WalkParams<double>& w,
                                                 int halfwidth, int sign,
                                                 int nodes = 2048) {
  Eigen::VectorXd prob = Eigen::VectorXd::Zero(2 * halfwidth + 1);
  std::vector<Vec4cd> vpm(nodes), vmp(nodes);
  for (int j = 0; j < nodes; ++j) {
    const double k = -pi + 2 * pi * (j + 0.5) / nodes;
    vpm[j] = pair_eigenvector(Cxd(0), Cxd(k), +1, -1, w).vec;
    vmp[j] = pair_eigenvector(Cxd(0), Cxd(k), -1, +1, w).vec;
  }
  const Cxd i(0, 1);
  for (int y = -halfwidth; y <= halfwidth; ++y) {
    Vec4cd acc = Vec4cd::Zero();
    for (int j = 0; j < nodes; ++j) {
      const double k = -pi + 2 * pi * (j + 0.5) / nodes;
      acc += (vpm[j] + double(sign) * vmp[j]) * std::exp(-i * k * double(y));
    }
    prob(y + halfwidth) = acc.squaredNorm();
  }
  prob /= prob.sum();
  return prob;
}

/// Continuous-band structure at total momentum p.  The even sector sweeps
/// the phases +-[2 w(p), 2 pi - 2 w(p)] and the odd sector
/// [-W, W] with W = pi - 2 Arccos(nu sin p); the four band edges are
/// {+-2 w(p), +-W} and the two gaps between them contain the lines +-2p.
struct BandStructure {
  std::array<double, 4> edges;  // {+2w(p), -2w(p), +W, -W}
  double even_edge;             // 2 w(p), start of the even band arc
  double odd_edge;              // W, end of the odd band arc
  // Gap intervals (odd_edge, even_edge) and the mirror; both open.
  bool in_bands(double omega, double margin = 0.0) const {
    const double a = std::abs(reduce_to_zone(omega));
    return a <= odd_edge + margin || a >= even_edge - margin;
  }
  bool in_gap(double omega, double margin = 0.0) const {
    const double a = std::abs(reduce_to_zone(omega));
    return a > odd_edge + margin && a < even_edge - margin;
  }
  /// Distance from the phase omega to the nearest band point (0 inside).
  double distance_to_bands(double omega) const {
    const double a = std::abs(reduce_to_zone(omega));
    if (a <= odd_edge || a >= even_edge) return 0.0;
    return std::min(a - odd_edge, even_edge - a);
  }
};

inline BandStructure continuous_bands(double p, const WalkParams<double>& w) {
  // Band edges are symmetric under p -> -p and p -> pi - p; reduce to
  // [0, pi/2] first.
  double q = std::abs(reduce_to_zone(p));
  q = std::min(q, pi - q);
  const double even_edge = 2 * dispersion(q, w);
  const double odd_edge = pi - 2 * std::acos(w.nu * std::sin(q));
  BandStructure b;
  b.even_edge = even_edge;
  b.odd_edge = odd_edge;
  b.edges = {even_edge, -even_edge, odd_edge, -odd_edge};
  return b;
}

/// One member of a degeneracy class: the branch pair and real relative
/// momentum reproducing a given eigenvalue phase.
struct DegeneratePoint {
  int s, r;
  double k;
};

/// All real solutions of e^{-i w_{sr}(p,k)} = e^{-i omega} across the four
/// branch pairs; generically four points forming the degeneracy quadruple.
inline std::vector<DegeneratePoint> degeneracy_scan(
    double p, double omega, const WalkParams<double>& w, int grid = 8192) {
  std::vector<DegeneratePoint> out;
  const std::array<std::pair<int, int>, 4> sectors{
      {{+1, +1}, {-1, -1}, {+1, -1}, {-1, +1}}};
  for (auto [s, r] : sectors) {
    auto f = [&](double k) {
      return reduce_to_zone(
          pair_dispersion(Cxd(p), Cxd(k), s, r, w).real() - omega);
    };
    double prev_k = -pi, prev_f = f(prev_k);
    for (int j = 1; j <= grid; ++j) {
      const double k = -pi + 2 * pi * j / grid;
      const double fk = f(k);
      // A root bracket must not straddle the +-pi wrap of the phase
      // difference.
      const bool wraps = std::abs(prev_f) > pi / 2 || std::abs(fk) > pi / 2;
      if (!wraps && (prev_f == 0.0 || (prev_f < 0) != (fk < 0))) {
        double lo = prev_k, hi = k, flo = prev_f;
        for (int it = 0; it < 100; ++it) {
          const double mid = 0.5 * (lo + hi);
          const double fm = f(mid);
          if (fm == 0.0) {
            lo = hi = mid;
            break;
          }
          if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
          } else {
            hi = mid;
          }
        }
        double root = reduce_to_zone(0.5 * (lo + hi));
        const bool duplicate =
            std::any_of(out.begin(), out.end(), [&](const DegeneratePoint& d) {
              return d.s == s && d.r == r &&
                     std::abs(reduce_to_zone(d.k - root)) < 1e-7;
            });
        if (!duplicate) out.push_back({s, r, root});
      }
      prev_k = k;
      prev_f = fk;
    }
  }
  return out;
}

}  // namespace thirring
