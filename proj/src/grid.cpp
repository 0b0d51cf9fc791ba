#include "thirring/grid.hpp"

namespace thirring {

namespace {

// out(x) = in(x - d) along rows (particle 1) or columns (particle 2).
Eigen::MatrixXcd shift_rows(const Eigen::MatrixXcd& in, int d, bool periodic) {
  const Eigen::Index n = in.rows();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, in.cols());
  for (Eigen::Index x = 0; x < n; ++x) {
    Eigen::Index src = x - d;
    if (periodic) src = ((src % n) + n) % n;
    if (src >= 0 && src < n) out.row(x) = in.row(src);
  }
  return out;
}

Eigen::MatrixXcd shift_cols(const Eigen::MatrixXcd& in, int d, bool periodic) {
  return shift_rows(in.transpose(), d, periodic).transpose();
}

}  // namespace

double GridState::norm() const {
  double n2 = 0;
  for (const auto& c : comp_) n2 += c.squaredNorm();
  return std::sqrt(n2);
}

void GridState::normalize() {
  const double n = norm();
  for (auto& c : comp_) c /= n;
}

double GridState::antisymmetry_defect() const {
  double worst = 0;
  for (int a1 = 0; a1 < 2; ++a1)
    for (int a2 = 0; a2 < 2; ++a2) {
      // exchange maps component (a1,a2) at (x1,x2) to (a2,a1) at (x2,x1)
      const Eigen::MatrixXcd defect =
          comp_[2 * a1 + a2] + comp_[2 * a2 + a1].transpose();
      worst = std::max(worst, defect.cwiseAbs().maxCoeff());
    }
  return worst;
}

GridState singlet_at_origin(int size) {
  GridState s(size);
  const int x0 = size / 2;
  const double a = 1.0 / std::sqrt(2.0);
  s.amp(0, 1, x0, x0) = a;
  s.amp(1, 0, x0, x0) = -a;
  return s;
}

GridState antisymmetrized(const GridState& state, bool renormalize) {
  GridState out(state.size());
  for (int a1 = 0; a1 < 2; ++a1)
    for (int a2 = 0; a2 < 2; ++a2)
      out.components()[2 * a1 + a2] =
          0.5 * (state.components()[2 * a1 + a2] -
                 state.components()[2 * a2 + a1].transpose());
  const double n = out.norm();
  if (n < 1e-14 * std::max(1.0, state.norm()))
    throw std::runtime_error(
        "antisymmetrized: input has no Fermionic component");
  if (renormalize) out.normalize();
  return out;
}

namespace {

// Bound-state amplitudes over the unwrapped separation range of an L-grid,
// indexed y + L - 1.
std::array<Eigen::VectorXcd, 4> bound_profile(const EigenSolution& bound,
                                              int size, bool wrap) {
  std::array<Eigen::VectorXcd, 4> prof;
  for (auto& p : prof) p = Eigen::VectorXcd::Zero(2 * size - 1);
  for (int yraw = -(size - 1); yraw <= size - 1; ++yraw) {
    int y = yraw;
    if (wrap) {
      if (y >= size / 2) y -= size;
      if (y < -size / 2) y += size;
    }
    const Vec4cd a =
        bound.amplitude(((y % 2) + 2) % 2 == 1 ? (y - 1) / 2 : y / 2);
    if (((y % 2) + 2) % 2 == 1) {
      prof[0](yraw + size - 1) = a(0);
      prof[3](yraw + size - 1) = a(3);
    } else {
      prof[1](yraw + size - 1) = a(1);
      prof[2](yraw + size - 1) = a(2);
    }
  }
  return prof;
}

}  // namespace

GridState bound_state_packet(double total_momentum, double coupling,
                             const WalkParams<double>& params, double width,
                             int size, bool wrap_separation) {
  if (!(width > 0))
    throw std::invalid_argument("bound_state_packet: width must be positive");
  if (std::isfinite(width) && 8.0 * width > size)
    throw std::invalid_argument(
        "bound_state_packet: envelope does not fit the lattice (need "
        "8*width <= size)");

  const double w0 = static_cast<double>(size);  // centre of w = x1 + x2
  const Cxd i(0, 1);

  // Momentum nodes and Gaussian weights.  A single node reproduces the
  // exact fixed-momentum eigenstate; finite widths superpose the exact
  // bound profile at each node so that no momentum component carries a
  // scattering admixture.  The node spacing pi/(2 size) keeps both the
  // quadrature images and their Nyquist ghost (fed by the momentum
  // dependence of the bound profile) off the w range of the grid.
  std::vector<double> nodes;
  std::vector<Cxd> weights;
  if (std::isfinite(width)) {
    const double sigma_p = 1.0 / (2.0 * width);
    const double dp = pi / (2.0 * size);
    const int reach = static_cast<int>(std::ceil(12.0 * sigma_p / dp));
    for (int j = -reach; j <= reach; ++j) {
      const double p = total_momentum + j * dp;
      nodes.push_back(p);
      weights.push_back(std::exp(-width * width * (p - total_momentum) *
                                 (p - total_momentum)) *
                        std::exp(i * p * w0));
    }
  } else {
    nodes.push_back(total_momentum);
    weights.push_back(Cxd(1));
  }

  GridState out(size);
  auto& comp = out.components();
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    const auto profile = bound_profile(
        bound_state(nodes[n], coupling, params), size, wrap_separation);
    Eigen::VectorXcd phase(2 * size - 1);  // e^{-i p w} over w = x1 + x2
    for (int w = 0; w <= 2 * size - 2; ++w)
      phase(w) = weights[n] * std::exp(-i * nodes[n] * double(w));
    for (int c = 0; c < 4; ++c)
      for (int x1 = 0; x1 < size; ++x1)
        for (int x2 = 0; x2 < size; ++x2)
          comp[c](x1, x2) += profile[c](x1 - x2 + size - 1) * phase(x1 + x2);
  }
  // The packet carries faint centre-of-mass tails (the momentum dependence
  // of the bound profile limits how sharply w can be confined), so it has
  // no exactly-empty cells: evolve it on a periodic lattice.
  out = antisymmetrized(out, true);
  return out;
}

GridState evolve_step(const GridState& state, double chi,
                      const WalkParams<double>& params,
                      GridBoundary boundary) {
  const bool periodic = boundary == GridBoundary::Periodic;
  const int n = state.size();

  std::array<Eigen::MatrixXcd, 4> cur = state.components();

  // V_int: e^{i chi} on opposite spins at coinciding positions.
  const Cxd vertex = std::exp(Cxd(0, chi));
  for (int x = 0; x < n; ++x) {
    cur[1](x, x) *= vertex;
    cur[2](x, x) *= vertex;
  }

  if (!periodic) {
    // Leak cells: particle 1 spin-up exits at row n-1, spin-down at row 0;
    // particle 2 spin-up exits at column n-1, spin-down at column 0.
    const double tol = 1e-14 * std::max(1.0, state.norm());
    const bool leak =
        cur[0].row(n - 1).cwiseAbs().maxCoeff() > tol ||
        cur[1].row(n - 1).cwiseAbs().maxCoeff() > tol ||
        cur[2].row(0).cwiseAbs().maxCoeff() > tol ||
        cur[3].row(0).cwiseAbs().maxCoeff() > tol ||
        cur[0].col(n - 1).cwiseAbs().maxCoeff() > tol ||
        cur[2].col(n - 1).cwiseAbs().maxCoeff() > tol ||
        cur[1].col(0).cwiseAbs().maxCoeff() > tol ||
        cur[3].col(0).cwiseAbs().maxCoeff() > tol;
    if (leak)
      throw std::runtime_error(
          "evolve_step: support reached the open boundary; enlarge the "
          "lattice or reduce the step count");
  }

  const Cxd hop(0, -params.mu);
  // Particle 1 acts on a1 (rows = x1): pairs (up, down) = (0,2), (1,3).
  std::array<Eigen::MatrixXcd, 4> mid;
  for (int a2 = 0; a2 < 2; ++a2) {
    const auto& up = cur[a2];        // a1 = up
    const auto& down = cur[2 + a2];  // a1 = down
    mid[a2] = params.nu * shift_rows(up, +1, periodic) + hop * down;
    mid[2 + a2] = hop * up + params.nu * shift_rows(down, -1, periodic);
  }
  // Particle 2 acts on a2 (columns = x2): pairs (0,1), (2,3).
  GridState out(n);
  for (int a1 = 0; a1 < 2; ++a1) {
    const auto& up = mid[2 * a1];
    const auto& down = mid[2 * a1 + 1];
    out.components()[2 * a1] =
        params.nu * shift_cols(up, +1, periodic) + hop * down;
    out.components()[2 * a1 + 1] =
        hop * up + params.nu * shift_cols(down, -1, periodic);
  }
  return out;
}

GridState evolve(GridState state, int steps, double chi,
                 const WalkParams<double>& params, GridBoundary boundary) {
  for (int t = 0; t < steps; ++t)
    state = evolve_step(state, chi, params, boundary);
  return state;
}

ProbabilityField probability(const GridState& state) {
  const int n = state.size();
  ProbabilityField f;
  f.p = Eigen::MatrixXd::Zero(n, n);
  for (const auto& c : state.components()) f.p += c.cwiseAbs2();
  f.diagonal_mass = f.p.diagonal().sum();

  f.marginal_rel = Eigen::VectorXd::Zero(2 * n - 1);
  f.marginal_com = Eigen::VectorXd::Zero(2 * n - 1);
  for (int x1 = 0; x1 < n; ++x1)
    for (int x2 = 0; x2 < n; ++x2) {
      f.marginal_rel(x1 - x2 + n - 1) += f.p(x1, x2);
      f.marginal_com(x1 + x2) += f.p(x1, x2);
    }

  auto width = [](const Eigen::VectorXd& m) {
    const double total = m.sum();
    double mean = 0;
    for (Eigen::Index j = 0; j < m.size(); ++j) mean += j * m(j);
    mean /= total;
    double var = 0;
    for (Eigen::Index j = 0; j < m.size(); ++j)
      var += (j - mean) * (j - mean) * m(j);
    return std::sqrt(var / total);
  };
  f.width_rel = width(f.marginal_rel);
  f.width_com = width(f.marginal_com);
  return f;
}

Eigen::VectorXd total_momentum_distribution(const GridState& state) {
  const int n = state.size();
  // DFT matrix F(m, x) = e^{+i 2 pi m x / n} / sqrt(n); with the e^{-ipx}
  // plane-wave convention this maps amplitudes to momentum components.
  Eigen::MatrixXcd fourier(n, n);
  const Cxd i(0, 1);
  for (int m = 0; m < n; ++m)
    for (int x = 0; x < n; ++x)
      fourier(m, x) = std::exp(i * (2 * pi * m * x / n)) / std::sqrt(double(n));

  Eigen::VectorXd dist = Eigen::VectorXd::Zero(n);
  for (const auto& c : state.components()) {
    const Eigen::MatrixXcd hat = fourier * c * fourier.transpose();
    for (int m1 = 0; m1 < n; ++m1)
      for (int m2 = 0; m2 < n; ++m2)
        dist((m1 + m2) % n) += std::norm(hat(m1, m2));
  }
  return dist;
}

}  // namespace thirring
