#pragma once

// Closed-form ground truths: Harvey-Lawson cones, the extended unit circle,
// the invariant planes, and the separation of the n branches.

#include <string>
#include <vector>

#include "slag/chart.hpp"

namespace slag {

struct OracleResult {
  std::string name;
  double max_residual = 0.0;
  int samples = 0;
  double tolerance = 0.0;
  bool pass = false;
  std::vector<std::pair<std::string, double>> details;  ///< auxiliary measurements

  void finalize() { pass = max_residual <= tolerance; }
};

/// Samples L_c = {zeta u : Im(zeta^m) = c} with zeta = r(a) e^{ia},
/// r = (c / sin(m a))^{1/m}, over the sectors where sin(m a) has the sign of c
/// (rays a = k pi / m when c = 0), and reports the max of the omega and
/// Upsilon residuals of the parametrization (a or r, sphere chart) -> C^m.
OracleResult harvey_lawson_sample(int m, double c, int count, double h = 1e-5, double tolerance = 1e-9);

/// The extended unit circle satisfies |zeta|^2 = n(|z|^2 - 1), Re(z zeta^n) = 0.
/// Evaluates both defects at chart points with |t| <= t_halfwidth, 0 <= sigma <= sigma_max.
OracleResult unit_circle_residual(int n, const Chart& chart, double sigma_max, int count = 500,
                                  double t_halfwidth = 0.25, double tolerance = 1e-8);

/// Unit circle as a closed trigonometric arc of period 2 pi.
ArcSpec unit_circle_arc(int degree_cap = 24);

/// Random psi: residuals of P_psi; random lines: exactly n containing planes
/// with pairwise disjoint C^n-projections.
OracleResult plane_oracle(int n, int trials, unsigned long long seed = 1);

struct BranchSeparationOptions {
  double s0 = 0.0;  ///< arc parameter of the common base point
  std::vector<double> sigmas{0.01, 0.02, 0.03, 0.04, 0.05};
  double t_halfwidth = 0.05;
  int nt = 5;
  double coincidence_tol = 1e-13;
  double min_slope = 1e-6;  ///< separation slopes at or below this count as coincident
};

/// For every pair j < k of branch charts at one base point, the distance
/// d(sigma) from branch-j points to the branch-k sheet; fits the lower bound
/// d >= c sigma and checks that all branches coincide at sigma = 0.
/// max_residual is the sigma = 0 coincidence defect; pass also needs c > 0.
OracleResult branch_separation(const ArcSpec& arc, int n, int K, const BranchSeparationOptions& opts = {});

}  // namespace slag
