#pragma once

// Charts: one extension series together with the branch index and the rigid
// motion that places it in C^{n+1}; atlases of charts along an arc.

#include <span>
#include <vector>

#include "slag/ambient.hpp"
#include "slag/arc.hpp"
#include "slag/extension.hpp"

namespace slag {

/// The branch-j chart represents Phi_{frame}^{-1}(lambda^j * graph(phi)).
struct Chart {
  int n = 2;
  int branch = 0;
  Frame frame;
  SigmaExpansion phi;
  RadiusEstimate radius;
  double center = 0.0;  ///< arc parameter of the base point

  friend bool operator==(const Chart&, const Chart&) = default;
};

/// Image of (t, sigma) in the reduced space C^2: (w, zeta) with the chart point
/// equal to (w, zeta u).
struct ReducedPoint {
  Complex w;
  Complex zeta;
};

ReducedPoint reduced_point(const Chart& c, double t, double sigma);

/// Reduced point and its partials in t and sigma.
struct ReducedJet {
  ReducedPoint p;
  Complex w_t, w_s, zeta_t, zeta_s;
};

ReducedJet reduced_jet(const Chart& c, double t, double sigma);

AmbientPoint chart_point(const Chart& c, double t, double sigma, std::span<const double> u);

/// Exact tangent vectors d/dt, d/dsigma and d/dv_i (v the sphere_chart
/// coordinates around u) at (t, sigma, u).
std::vector<CVector> chart_tangent_frame(const Chart& c, double t, double sigma, std::span<const double> u);

/// Normalizes the arc at s0, extends to order K and fits a radius when K >= 4.
Chart make_chart(const ArcSpec& arc, double s0, int n, int branch, int K);

/// Parameters of chart centers: m * spacing over one period for closed arcs,
/// lo + m * spacing over the domain for open arcs.
std::vector<double> atlas_centers(const ArcSpec& arc, double spacing);

/// Local branch index of each chart so that the plane section
/// psi(s) = -alpha(s) / n + branch * pi / n is continuous, given the unwrapped
/// tangent angles alpha at the chart centers and the chart frame angles.
std::vector<int> propagate_branch(std::span<const double> unwrapped_angles, std::span<const double> frame_thetas,
                                  int n, int branch);

/// Charts covering the arc with a continuously propagated branch index.
/// Throws ObstructionError when the gate fails and CoverageError when a
/// fitted t-radius is smaller than the chart spacing.
std::vector<Chart> build_atlas(const ArcSpec& arc, int n, int branch, double spacing, int K);

/// Nearest point of c's sheet to the reduced point (w, zeta), identifying
/// zeta with -zeta (the u -> -u symmetry) by letting sigma change sign.
struct NearestPoint {
  double t = 0.0;
  double sigma = 0.0;
  double distance = 0.0;
  int iterations = 0;
};

NearestPoint nearest_point(const Chart& c, const ReducedPoint& target, double t0, double sigma0);

/// Coordinates of the ambient point (w, zeta) in the chart's normalized frame.
ReducedPoint to_chart_frame(const Chart& c, const ReducedPoint& p);

/// Max over an (nt x ns) grid of (t, sigma), t spanning c1's parameter interval
/// towards c2's center, 0 < sigma <= sigma_max, of the distance from the c1
/// point to the c2 sheet. The SO(n)-orbit structure reduces the distance to C^2.
double overlap_agreement(const Chart& c1, const Chart& c2, double sigma_max, int samples = 64);

struct ChartResidualOptions {
  double sigma_max = 0.05;
  double t_halfwidth = 0.05;
  int nt = 5;
  int ns = 5;
  int nu = 4;
};

/// PDE residual of the series plus omega, Upsilon and momentum residuals of the
/// chart surface using exact series tangents (sigma > 0 samples only).
ResidualReport chart_residual(const Chart& c, const ChartResidualOptions& opts = {});

}  // namespace slag
