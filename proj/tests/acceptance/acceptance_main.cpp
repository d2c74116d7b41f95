// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "generators.hpp"
#include "slag/ambient.hpp"
#include "slag/arc.hpp"
#include "slag/chart.hpp"
#include "slag/errors.hpp"
#include "slag/extension.hpp"
#include "slag/io.hpp"
#include "slag/oracles.hpp"

using namespace slag;
using slag::testing::random_f0;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

ArcSpec parabola(int D = 24) {
  TaylorPoly g(D);
  g[2] = 1.0;
  return ArcSpec::graph(g);
}

Outcome f1_closed_form() {
  std::mt19937_64 rng(101);
  double worst = 0.0;
  for (int n = 2; n <= 6; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      const TaylorPoly f0 = random_f0(rng, 24);
      const TaylorPoly f1 = compute_f1(f0, n);
      for (double c : stage0_product(f0, f1, n).im.coeffs()) worst = std::max(worst, std::abs(c));
    }
  }
  return {worst <= 1e-13, fmt("max |Im((1+i f1)^n (1+i f0''))| = %.3e (tol 1e-13)", worst)};
}

Outcome gt_hypotheses() {
  std::mt19937_64 rng(202);
  bool ok = true;
  double worst_triple = 0.0, worst_vanish = 0.0, min_indicial = 1e300;
  for (int n = 2; n <= 8; ++n) {
    for (const TaylorPoly& f0 : {random_f0(rng, 24), normalize_at(parabola(), 0.0, n).f0}) {
      const GTReport r = gt_hypotheses_check(f0, n);
      ok = ok && r.pass;
      worst_triple = std::max({worst_triple, std::abs(r.dG_dZ20 - 1.0), std::abs(r.dG_dZ10 - (n + 3.0)),
                               std::abs(r.dG_dZ00 - 2.0 * n)});
      worst_vanish = std::max({worst_vanish, r.max_g0, r.max_cond2});
      min_indicial = std::min(min_indicial, r.min_indicial);
    }
  }
  ok = ok && worst_triple <= 1e-7 && worst_vanish <= 1e-9 && min_indicial > 0.0;
  return {ok, fmt("triple error %.3e (tol 1e-7), conditions (1),(2) %.3e (tol 1e-9), min indicial %.3g", worst_triple,
                  worst_vanish, min_indicial)};
}

Outcome flat_case() {
  bool ok = true;
  double worst = 0.0;
  for (int n = 2; n <= 6; ++n) {
    const SigmaExpansion phi = extend_series(TaylorPoly(24), n, 10);
    ok = ok && phi.is_zero();
    const Chart flat{n, 0, Frame{}, phi, RadiusEstimate{}, 0.0};
    const auto us = sphere_samples(n, 4);
    for (double t : {-0.1, 0.0, 0.2}) {
      for (double s : {0.01, 0.05, 0.3}) {
        for (const auto& u : us) {
          const SlagResidual r = slag_residual(chart_tangent_frame(flat, t, s, u));
          worst = std::max({worst, r.omega_res, r.upsilon_res});
        }
      }
    }
    worst = std::max(worst, pde_residual(phi, ResidualGrid::box(0.1)).max_pde);
  }
  ok = ok && worst == 0.0;
  return {ok, fmt("phi identically zero: %s, plane residual %.3e (must be exactly 0)", ok ? "yes" : "no", worst)};
}

Outcome linearity() {
  std::mt19937_64 rng(404);
  double worst = 0.0;
  for (int n : {2, 3, 5}) {
    const TaylorPoly f0 = random_f0(rng, 24);
    for (int k = 1; k <= 5; ++k) {
      for (double delta : {1e-2, 0.3}) {
        worst = std::max(worst, linearity_probe(f0, n, k, delta));
      }
    }
  }
  return {worst <= 1e-11, fmt("max linearity deviation %.3e (tol 1e-11)", worst)};
}

Outcome f2_oracle() {
  // Coefficients of t^0 .. t^10 from tests/oracles/f2_brute_force.py.
  const double expected[] = {0.0, -3.0 / 8.0, 0.0, 15.0 / 16.0, 0.0, -207.0 / 128.0,
                             0.0, 609.0 / 256.0, 0.0, -3279.0 / 1024.0, 0.0};
  TaylorPoly f0(24);
  f0[3] = 1.0 / 6.0;
  const SigmaExpansion phi = extend_series(f0, 2, 4);
  double worst = 0.0;
  for (int d = 0; d <= 10; ++d) worst = std::max(worst, std::abs(phi.f(2)[d] - expected[d]));
  return {worst <= 1e-12, fmt("max coefficient error of f2 = %.3e (tol 1e-12)", worst)};
}

Outcome residual_decay() {
  // Quad precision: at K = 8 and sigma_max = 0.025 the residual is far below double round-off.
  const BasicTaylorPoly<Quad> f0 = normalize_at(parabola(), 0.0, 2).f0.cast<Quad>();
  const std::vector<double> sigmas{0.025, 0.05, 0.1};
  bool ok = true;
  std::string detail;
  for (int K : {4, 6, 8}) {
    const BasicSigmaExpansion<Quad> phi = extend_series(f0, 2, K);
    std::vector<double> res;
    for (double s : sigmas) res.push_back(pde_residual(phi, ResidualGrid::box(s)).max_pde);
    const double p = fit_decay_exponent(sigmas, res);
    ok = ok && p >= 2.0 * K - 1.0;
    detail += fmt("K=%d exponent %.2f (>= %d); ", K, p, 2 * K - 1);
  }
  return {ok, detail};
}

Outcome harvey_lawson() {
  double worst = 0.0;
  bool ok = true;
  for (int m : {2, 3, 4}) {
    for (double c : {0.0, 1.0}) {
      const OracleResult r = harvey_lawson_sample(m, c, 200, 1e-5, 1e-9);
      ok = ok && r.pass;
      worst = std::max(worst, r.max_residual);
    }
  }
  return {ok, fmt("max omega/Upsilon residual %.3e (tol 1e-9)", worst)};
}

Outcome unit_circle() {
  double worst05 = 0.0, worst025 = 0.0;
  for (int n : {2, 3}) {
    const Chart c = make_chart(unit_circle_arc(24), 0.0, n, 0, 10);
    worst05 = std::max(worst05, unit_circle_residual(n, c, 0.05, 500, 0.25, 1e-8).max_residual);
    worst025 = std::max(worst025, unit_circle_residual(n, c, 0.025, 500, 0.25, 1e-10).max_residual);
  }
  return {worst05 <= 1e-8 && worst025 <= 1e-10,
          fmt("max(|F1|,|F2|) = %.3e at sigma 0.05 (tol 1e-8), %.3e at sigma 0.025 (tol 1e-10)", worst05, worst025)};
}

Outcome uniqueness_geometry() {
  const OracleResult sep = branch_separation(parabola(28), 3, 8);
  double c_min = 0.0;
  for (const auto& [name, value] : sep.details) {
    if (name == "c_min") c_min = value;
  }
  std::vector<double> overlaps;
  for (int K : {10, 11, 12}) {
    const auto atlas = build_atlas(unit_circle_arc(2 * K + 4), 2, 0, 2 * kPi / 12, K);
    double worst = 0.0;
    for (std::size_t i = 0; i < atlas.size(); ++i) {
      worst = std::max(worst, overlap_agreement(atlas[i], atlas[(i + 1) % atlas.size()], 0.05));
    }
    overlaps.push_back(worst);
  }
  const bool decreasing = overlaps[0] > overlaps[1] && overlaps[1] > overlaps[2];
  const bool ok = sep.pass && c_min > 0.0 && sep.max_residual <= 1e-13 && overlaps[0] <= 1e-6 && decreasing;
  return {ok, fmt("separation c_min %.3f, coincidence %.1e (tol 1e-13); overlap K=10,11,12: %.2e %.2e %.2e", c_min,
                  sep.max_residual, overlaps[0], overlaps[1], overlaps[2])};
}

Outcome topological_gates() {
  const GateResult g3 = existence_gate(unit_circle_arc(), 3);
  const GateResult g2 = existence_gate(unit_circle_arc(), 2);
  const int ccw = rotation_number(unit_circle_arc()).value;
  const int cw = rotation_number(unit_circle_arc().reversed()).value;
  const bool ok = !g3.ok && g3.shift == 2 && g2.ok && ccw == 1 && cw == -1;
  return {ok, fmt("n=3 gate %s shift %d, n=2 gate %s, rotation %+d / reversed %+d", g3.ok ? "ok" : "obstructed",
                  g3.shift, g2.ok ? "ok" : "obstructed", ccw, cw)};
}

Outcome momentum_invariance() {
  std::mt19937_64 rng(1111);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<Chart> charts;
  for (int n : {2, 3, 4}) {
    for (int b = 0; b < n; ++b) charts.push_back(make_chart(parabola(), 0.3, n, b, 8));
    charts.push_back(make_chart(unit_circle_arc(), 1.0, n, 0, 8));
  }
  double worst_mu = 0.0, worst_inv = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Chart& c = charts[static_cast<std::size_t>(i) % charts.size()];
    const double t = 0.05 * uni(rng), s = 0.05 * std::abs(uni(rng)) + 1e-3;
    const auto us = sphere_samples(c.n, 1 + i % 16);
    const std::vector<double>& u = us.back();
    worst_mu = std::max(worst_mu, momentum_so_n(chart_point(c, t, s, u)).cwiseAbs().maxCoeff());
    if (i % 10 == 0) {
      const std::vector<CVector> frame = chart_tangent_frame(c, t, s, u);
      const double theta = 2 * kPi * uni(rng);
      std::vector<CVector> moved;
      for (const CVector& v : frame) moved.push_back(group_motion_linear(v, theta, c.n));
      const SlagResidual a = slag_residual(frame), b = slag_residual(moved);
      worst_inv = std::max({worst_inv, std::abs(a.omega_res - b.omega_res), std::abs(a.upsilon_res - b.upsilon_res)});
    }
  }
  return {worst_mu <= 1e-14 && worst_inv <= 1e-12,
          fmt("max |mu| %.3e (tol 1e-14), residual change under Phi_{a,theta} %.3e (tol 1e-12)", worst_mu, worst_inv)};
}

Outcome j0_layer() {
  std::mt19937_64 rng(1212);
  std::uniform_real_distribution<double> uni(-1.0, 1.0), rad(0.5, 1.5), ang(0.0, 2 * kPi);
  double worst_c = 0.0, worst_f = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int n = 2 + i % 5;
    const Complex w{uni(rng), uni(rng)};
    const Complex zeta = std::polar(rad(rng), ang(rng));
    const M0Map c = c_map(n);
    const auto [cw, cz] = c.apply(w, zeta);
    worst_c = std::max(worst_c,
                       (pullback(c, w, zeta, j0_coframe(cw, cz, n)[0]) - conjugate(j0_coframe(w, zeta, n)[1])).norm());
    const M0Map f = f_map(n, Complex{uni(rng), uni(rng)}, std::polar(rad(rng), ang(rng)));
    const auto [fw, fz] = f.apply(w, zeta);
    const auto eta_image = eta_coframe(fw, fz, n);
    const auto eta = eta_coframe(w, zeta, n);
    for (int k = 0; k < 2; ++k) {
      worst_f = std::max(worst_f, (pullback(f, w, zeta, eta_image[static_cast<std::size_t>(k)]) -
                                   eta[static_cast<std::size_t>(k)])
                                      .norm());
    }
  }
  return {worst_c <= 1e-12 && worst_f <= 1e-12,
          fmt("C* omega1 - conj(omega2): %.3e, F* eta - eta: %.3e (tol 1e-12)", worst_c, worst_f)};
}

Outcome round_trip() {
  std::mt19937_64 rng(1313);
  int mismatches = 0;
  for (int i = 0; i < 50; ++i) {
    const Chart c = slag::testing::random_chart(rng);
    if (!(deserialize_chart(serialize_chart(c)) == c)) ++mismatches;
  }
  return {mismatches == 0, fmt("%d of 50 random charts differ after a round trip", mismatches)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"f1 closed form", f1_closed_form},
      {"GT hypotheses", gt_hypotheses},
      {"flat case", flat_case},
      {"recursion linearity", linearity},
      {"f2 symbolic oracle", f2_oracle},
      {"PDE residual decay", residual_decay},
      {"Harvey-Lawson oracle", harvey_lawson},
      {"unit-circle locus", unit_circle},
      {"n-uniqueness geometry", uniqueness_geometry},
      {"topological gates", topological_gates},
      {"momentum and invariance", momentum_invariance},
      {"J0 layer", j0_layer},
      {"round-trip I/O", round_trip},
  };
  int failures = 0;
  int index = 1;
  for (const Criterion& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", index++, c.name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
