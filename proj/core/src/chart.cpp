#include "slag/chart.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "slag/errors.hpp"

namespace slag {

namespace {

constexpr Complex kI{0.0, 1.0};

// e^{i theta} lambda^j: the factor carrying the normalized zeta to the ambient one.
Complex zeta_factor(const Chart& c) {
  return std::polar(1.0, c.frame.theta + std::numbers::pi * c.branch / c.n);
}

Complex w_factor(const Chart& c) { return std::polar(1.0, -c.n * c.frame.theta); }

void require_chart(const Chart& c) {
  if (c.n < 2) throw InvalidArgument("chart needs n >= 2");
  if (c.branch < 0 || c.branch >= c.n) throw InvalidArgument("chart branch must lie in [0, n)");
  if (c.phi.n() != c.n) throw ShapeError("chart series was built for a different n");
}

}  // namespace

ReducedJet reduced_jet(const Chart& c, double t, double sigma) {
  const SigmaPartials<double> p = sigma_eval_with_partials(c.phi, t, sigma);
  const Complex fw = w_factor(c);
  const Complex fz = zeta_factor(c);
  ReducedJet j;
  j.p.w = fw * (Complex{t, p.phi_t} - c.frame.a);
  j.p.zeta = fz * Complex{sigma, p.phi_s};
  j.w_t = fw * Complex{1.0, p.phi_tt};
  j.w_s = fw * (kI * p.phi_st);
  j.zeta_t = fz * (kI * p.phi_st);
  j.zeta_s = fz * Complex{1.0, p.phi_ss};
  return j;
}

ReducedPoint reduced_point(const Chart& c, double t, double sigma) {
  const SigmaPartials<double> p = sigma_eval_with_partials(c.phi, t, sigma);
  return {w_factor(c) * (Complex{t, p.phi_t} - c.frame.a), zeta_factor(c) * Complex{sigma, p.phi_s}};
}

AmbientPoint chart_point(const Chart& c, double t, double sigma, std::span<const double> u) {
  require_chart(c);
  if (static_cast<int>(u.size()) != c.n) throw ShapeError("u must have n components");
  const ReducedPoint r = reduced_point(c, t, sigma);
  return phi_map(r.w, r.zeta, u);
}

std::vector<CVector> chart_tangent_frame(const Chart& c, double t, double sigma, std::span<const double> u) {
  require_chart(c);
  if (static_cast<int>(u.size()) != c.n) throw ShapeError("u must have n components");
  const ReducedJet j = reduced_jet(c, t, sigma);
  const auto lift = [&](Complex dw, Complex dzeta) {
    CVector v(c.n + 1);
    v[0] = dw;
    for (int k = 0; k < c.n; ++k) v[k + 1] = dzeta * u[static_cast<std::size_t>(k)];
    return v;
  };
  std::vector<CVector> frame{lift(j.w_t, j.zeta_t), lift(j.w_s, j.zeta_s)};
  for (const Eigen::VectorXd& e : sphere_tangent_basis(u)) {
    CVector v = CVector::Zero(c.n + 1);
    for (int k = 0; k < c.n; ++k) v[k + 1] = j.p.zeta * e[k];
    frame.push_back(v);
  }
  return frame;
}

Chart make_chart(const ArcSpec& arc, double s0, int n, int branch, int K) {
  if (branch < 0 || branch >= n) throw InvalidArgument("branch must lie in [0, n)");
  const NormalizedArc na = normalize_at(arc, s0, n);
  Chart c;
  c.n = n;
  c.branch = branch;
  c.frame = na.frame;
  c.phi = extend_series(na.f0, n, K);
  if (K >= 4) c.radius = estimate_radius(c.phi);
  c.center = s0;
  return c;
}

std::vector<double> atlas_centers(const ArcSpec& arc, double spacing) {
  if (!(spacing > 0.0)) throw InvalidArgument("chart spacing must be positive");
  std::vector<double> out;
  if (arc.closed()) {
    const int m = std::max(1, static_cast<int>(std::ceil(arc.period() / spacing - 1e-9)));
    for (int i = 0; i < m; ++i) out.push_back(i * spacing);
    return out;
  }
  const auto [lo, hi] = arc.domain();
  const int m = static_cast<int>(std::floor((hi - lo) / spacing + 1e-9));
  for (int i = 0; i <= m; ++i) out.push_back(lo + i * spacing);
  return out;
}

std::vector<int> propagate_branch(std::span<const double> unwrapped_angles, std::span<const double> frame_thetas,
                                  int n, int branch) {
  if (unwrapped_angles.size() != frame_thetas.size()) throw ShapeError("angle and frame lists differ in length");
  if (branch < 0 || branch >= n) throw InvalidArgument("branch must lie in [0, n)");
  std::vector<int> out;
  for (std::size_t i = 0; i < frame_thetas.size(); ++i) {
    // theta_frame + alpha / n is a multiple of 2 pi / n; each unit shifts the local index by 2.
    const double turns = (frame_thetas[i] + unwrapped_angles[i] / n) * n / (2.0 * std::numbers::pi);
    const long m = std::lround(turns);
    out.push_back(static_cast<int>(((branch - 2 * m) % n + n) % n));
  }
  return out;
}

std::vector<Chart> build_atlas(const ArcSpec& arc, int n, int branch, double spacing, int K) {
  if (branch < 0 || branch >= n) throw InvalidArgument("branch must lie in [0, n)");
  const GateResult gate = existence_gate(arc, n);
  if (!gate.ok) {
    throw ObstructionError("closed arc carries branch holonomy " + std::to_string(gate.shift) + " for n = " +
                               std::to_string(n),
                           gate.shift);
  }
  const std::vector<double> centers = atlas_centers(arc, spacing);
  std::vector<Chart> charts;
  std::vector<double> thetas;
  for (double s : centers) {
    charts.push_back(make_chart(arc, s, n, 0, K));
    thetas.push_back(charts.back().frame.theta);
  }
  const std::vector<double> angles = unwrapped_tangent_angles(arc, centers);
  const std::vector<int> local = propagate_branch(angles, thetas, n, branch);
  for (std::size_t i = 0; i < charts.size(); ++i) {
    charts[i].branch = local[i];
    if (centers.size() > 1 && charts[i].radius.estimated) {
      const double reach = spacing * std::abs(arc.velocity(centers[i]));
      if (charts[i].radius.rho_t < reach) {
        throw CoverageError("chart at s = " + std::to_string(centers[i]) + " has t-radius " +
                            std::to_string(charts[i].radius.rho_t) + " below the spacing " + std::to_string(reach));
      }
    }
  }
  return charts;
}

ReducedPoint to_chart_frame(const Chart& c, const ReducedPoint& p) {
  return {frame_apply_z0(c.frame, c.n, p.w), std::conj(zeta_factor(c)) * p.zeta};
}

NearestPoint nearest_point(const Chart& c, const ReducedPoint& target, double t0, double sigma0) {
  require_chart(c);
  NearestPoint np{t0, sigma0, 0.0, 0};
  const auto residual = [&](const ReducedPoint& p) {
    return Eigen::Vector4d((p.w - target.w).real(), (p.w - target.w).imag(), (p.zeta - target.zeta).real(),
                           (p.zeta - target.zeta).imag());
  };
  for (int it = 0; it < 50; ++it) {
    const ReducedJet j = reduced_jet(c, np.t, np.sigma);
    const Eigen::Vector4d r = residual(j.p);
    Eigen::Matrix<double, 4, 2> J;
    J << j.w_t.real(), j.w_s.real(), j.w_t.imag(), j.w_s.imag(), j.zeta_t.real(), j.zeta_s.real(), j.zeta_t.imag(),
        j.zeta_s.imag();
    const Eigen::Vector2d step = (J.transpose() * J).ldlt().solve(-J.transpose() * r);
    np.t += step[0];
    np.sigma += step[1];
    np.iterations = it + 1;
    if (step.norm() <= 1e-15 * (1.0 + std::abs(np.t) + std::abs(np.sigma))) break;
  }
  np.distance = residual(reduced_point(c, np.t, np.sigma)).norm();
  return np;
}

double overlap_agreement(const Chart& c1, const Chart& c2, double sigma_max, int samples) {
  require_chart(c1);
  require_chart(c2);
  if (c1.n != c2.n) throw InvalidArgument("charts belong to different n");
  if (!(sigma_max >= 0.0)) throw InvalidArgument("sigma_max must be non-negative");
  if (samples < 1) throw InvalidArgument("samples must be positive");
  const double t_far = to_chart_frame(c1, reduced_point(c2, 0.0, 0.0)).w.real();
  if (c1.radius.estimated && std::abs(t_far) > c1.radius.rho_t) {
    throw DisjointDomainError("chart centers are farther apart than the fitted t-radius");
  }
  const int side = std::max(2, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(samples)))));
  const int nt = std::abs(t_far) < 1e-14 ? 1 : side;
  double worst = 0.0;
  for (int i = 0; i < nt; ++i) {
    const double t = nt == 1 ? 0.0 : t_far * i / (nt - 1);
    for (int k = 0; k < side; ++k) {
      const double sigma = sigma_max * k / (side - 1);
      const ReducedPoint target = reduced_point(c1, t, sigma);
      const ReducedPoint guess = to_chart_frame(c2, target);
      const NearestPoint np = nearest_point(c2, target, guess.w.real(), guess.zeta.real());
      worst = std::max(worst, np.distance);
    }
  }
  return worst;
}

ResidualReport chart_residual(const Chart& c, const ChartResidualOptions& opts) {
  require_chart(c);
  ResidualGrid grid{-opts.t_halfwidth, opts.t_halfwidth, 0.0, opts.sigma_max, opts.nt, opts.ns};
  ResidualReport report = pde_residual(c.phi, grid);
  const auto us = sphere_samples(c.n, opts.nu);
  int count = 0;
  for (int i = 0; i < opts.nt; ++i) {
    for (int k = 1; k <= opts.ns; ++k) {
      const double t = grid.t_at(i);
      const double sigma = opts.sigma_max * k / opts.ns;
      for (const auto& u : us) {
        const SlagResidual r = slag_residual(chart_tangent_frame(c, t, sigma, u));
        report.max_omega = std::max(report.max_omega, r.omega_res);
        report.max_upsilon = std::max(report.max_upsilon, r.upsilon_res);
        report.max_momentum =
            std::max(report.max_momentum, momentum_so_n(chart_point(c, t, sigma, u)).cwiseAbs().maxCoeff());
        ++count;
      }
    }
  }
  report.samples = std::max(report.samples, count);
  return report;
}

}  // namespace slag
