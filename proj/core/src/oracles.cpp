#include "slag/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "slag/errors.hpp"

namespace slag {

namespace {

constexpr double kPi = std::numbers::pi;

double halton(int index, int base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * (index % base);
    index /= base;
  }
  return r;
}

Parametrization cone_parametrization(int m, std::span<const double> u0, std::function<Complex(double)> zeta) {
  std::vector<double> u(u0.begin(), u0.end());
  const std::vector<Eigen::VectorXd> basis = sphere_tangent_basis(u);
  return [m, u, basis, zeta](std::span<const double> x) {
    const std::vector<double> uu = sphere_chart(u, basis, x.subspan(1));
    const Complex z = zeta(x[0]);
    AmbientPoint p{CVector(m)};
    for (int k = 0; k < m; ++k) p.z[k] = z * uu[static_cast<std::size_t>(k)];
    return p;
  };
}

}  // namespace

OracleResult harvey_lawson_sample(int m, double c, int count, double h, double tolerance) {
  if (m < 2) throw InvalidArgument("Harvey-Lawson sample needs m >= 2");
  if (count < 1) throw InvalidArgument("count must be positive");
  OracleResult res;
  res.name = "harvey-lawson";
  res.tolerance = tolerance;
  const auto us = sphere_samples(m, count);
  const std::vector<double> v0(static_cast<std::size_t>(m), 0.0);
  double worst_omega = 0.0, worst_upsilon = 0.0;
  for (int i = 0; i < count; ++i) {
    const int sector = i % m;
    const double frac = 0.15 + 0.7 * halton(i + 1, 2);
    Parametrization param;
    if (c == 0.0) {
      // L_0 is the union of the m planes zeta in R e^{i k pi / m}.
      const Complex dir = std::polar(1.0, sector * kPi / m);
      param = cone_parametrization(m, us[static_cast<std::size_t>(i)], [dir](double r) { return r * dir; });
      std::vector<double> at = v0;
      at[0] = 0.2 + 1.8 * frac;
      const SlagResidual r = slag_residual(param, at, h);
      worst_omega = std::max(worst_omega, r.omega_res);
      worst_upsilon = std::max(worst_upsilon, r.upsilon_res);
      continue;
    }
    // sin(m a) has the sign of c on (start, start + pi / m).
    const double start = (2.0 * sector + (c > 0.0 ? 0.0 : 1.0)) * kPi / m;
    param = cone_parametrization(m, us[static_cast<std::size_t>(i)], [m, c](double a) {
      const double r = std::pow(c / std::sin(m * a), 1.0 / m);
      return std::polar(r, a);
    });
    std::vector<double> at = v0;
    at[0] = start + frac * kPi / m;
    const SlagResidual r = slag_residual(param, at, h);
    worst_omega = std::max(worst_omega, r.omega_res);
    worst_upsilon = std::max(worst_upsilon, r.upsilon_res);
  }
  res.samples = count;
  res.max_residual = std::max(worst_omega, worst_upsilon);
  res.details = {{"max_omega", worst_omega}, {"max_upsilon", worst_upsilon}};
  res.finalize();
  return res;
}

ArcSpec unit_circle_arc(int degree_cap) {
  return ArcSpec::trigonometric({0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}, 2.0 * kPi, degree_cap);
}

OracleResult unit_circle_residual(int n, const Chart& chart, double sigma_max, int count, double t_halfwidth,
                                  double tolerance) {
  if (chart.n != n) throw InvalidArgument("chart was built for a different n");
  if (count < 1) throw InvalidArgument("count must be positive");
  const ReducedPoint base = reduced_point(chart, 0.0, 0.0);
  if (std::abs(std::abs(base.w) - 1.0) > 1e-8) throw InvalidArgument("chart is not centered on the unit circle");
  OracleResult res;
  res.name = "unit-circle";
  res.tolerance = tolerance;
  double f1max = 0.0, f2max = 0.0;
  for (int i = 0; i < count; ++i) {
    Chart c = chart;
    c.branch = (chart.branch + i) % n;
    const double t = -t_halfwidth + 2.0 * t_halfwidth * halton(i + 1, 2);
    const double sigma = sigma_max * halton(i + 1, 3);
    const ReducedPoint p = reduced_point(c, t, sigma);
    const double f1 = std::norm(p.zeta) - n * (std::norm(p.w) - 1.0);
    const double f2 = (p.w * std::pow(p.zeta, n)).real();
    f1max = std::max(f1max, std::abs(f1));
    f2max = std::max(f2max, std::abs(f2));
  }
  res.samples = count;
  res.max_residual = std::max(f1max, f2max);
  res.details = {{"max_F1", f1max}, {"max_F2", f2max}};
  res.finalize();
  return res;
}

OracleResult plane_oracle(int n, int trials, unsigned long long seed) {
  if (n < 2) throw InvalidArgument("plane oracle needs n >= 2");
  OracleResult res;
  res.name = "planes";
  res.tolerance = 1e-12;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, kPi);
  double worst = 0.0;
  double count_defect = 0.0, containment_defect = 0.0, disjoint_defect = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    const PlaneP plane = plane_P(angle(rng), n);
    const SlagResidual r = slag_residual(plane.basis);
    worst = std::max({worst, r.omega_res, r.upsilon_res});

    const double beta = 2.0 * angle(rng);
    const std::vector<PlaneP> planes = planes_containing_line(beta, n);
    // Independent count: sign changes of sin(n psi + beta) over [0, pi).
    int roots = 0;
    const int steps = 20000;
    double prev = std::sin(beta);
    for (int s = 1; s <= steps; ++s) {
      const double cur = std::sin(n * kPi * s / steps + beta);
      if ((prev < 0.0) != (cur < 0.0) || prev == 0.0) ++roots;
      prev = cur;
    }
    count_defect = std::max(count_defect, std::abs(static_cast<double>(roots - n)));
    count_defect = std::max(count_defect, std::abs(static_cast<double>(planes.size()) - n));
    for (const PlaneP& p : planes) {
      if (!plane_contains_line(p, beta)) containment_defect = 1.0;
    }
    for (std::size_t i = 0; i < planes.size(); ++i) {
      for (std::size_t j = i + 1; j < planes.size(); ++j) {
        disjoint_defect = std::max(disjoint_defect, static_cast<double>(projection_intersection_dim(planes[i], planes[j])));
      }
    }
  }
  res.samples = trials;
  res.max_residual = std::max({worst, count_defect, containment_defect, disjoint_defect});
  res.details = {{"max_slag_residual", worst},
                 {"plane_count_defect", count_defect},
                 {"containment_defect", containment_defect},
                 {"max_projection_intersection_dim", disjoint_defect}};
  res.finalize();
  return res;
}

OracleResult branch_separation(const ArcSpec& arc, int n, int K, const BranchSeparationOptions& opts) {
  const GateResult gate = existence_gate(arc, n);
  if (!gate.ok) throw ObstructionError("branch separation needs an unobstructed arc", gate.shift);
  if (opts.sigmas.empty()) throw InvalidArgument("branch separation needs sigma samples");
  std::vector<Chart> charts;
  for (int j = 0; j < n; ++j) charts.push_back(make_chart(arc, opts.s0, n, j, K));

  OracleResult res;
  res.name = "branches";
  res.tolerance = opts.coincidence_tol;
  double coincidence = 0.0;
  double c_min = std::numeric_limits<double>::infinity();
  int samples = 0;
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      double c_pair = std::numeric_limits<double>::infinity();
      for (int i = 0; i < opts.nt; ++i) {
        const double t = opts.nt == 1 ? 0.0 : -opts.t_halfwidth + 2.0 * opts.t_halfwidth * i / (opts.nt - 1);
        const ReducedPoint a0 = reduced_point(charts[static_cast<std::size_t>(j)], t, 0.0);
        const ReducedPoint b0 = reduced_point(charts[static_cast<std::size_t>(k)], t, 0.0);
        coincidence = std::max({coincidence, std::abs(a0.w - b0.w), std::abs(a0.zeta - b0.zeta)});
        for (double sigma : opts.sigmas) {
          const ReducedPoint target = reduced_point(charts[static_cast<std::size_t>(j)], t, sigma);
          const ReducedPoint guess = to_chart_frame(charts[static_cast<std::size_t>(k)], target);
          const NearestPoint np =
              nearest_point(charts[static_cast<std::size_t>(k)], target, guess.w.real(), guess.zeta.real());
          c_pair = std::min(c_pair, np.distance / sigma);
          ++samples;
        }
      }
      res.details.emplace_back("c_" + std::to_string(j) + std::to_string(k), c_pair);
      c_min = std::min(c_min, c_pair);
    }
  }
  res.details.emplace_back("c_min", c_min);
  res.details.emplace_back("coincidence", coincidence);
  res.samples = samples;
  res.max_residual = coincidence;
  res.pass = coincidence <= opts.coincidence_tol && c_min > opts.min_slope && std::isfinite(c_min);
  return res;
}

}  // namespace slag
