#pragma once

// Analytic arcs A in the fixed complex line, their normalization at a base
// point by the commuting motions Phi_{a,theta}, and the topological gates on
// closed arcs.

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "slag/series.hpp"

namespace slag {

using Complex = std::complex<double>;

/// Parameters of the motion (z0, z1, .., zn) -> (e^{i n theta} z0 + a, e^{-i theta} z1, ..).
struct Frame {
  Complex a{0.0, 0.0};
  double theta = 0.0;

  friend bool operator==(const Frame&, const Frame&) = default;
};

/// e^{i n theta} z0 + a
Complex frame_apply_z0(const Frame& f, int n, Complex z0);
/// Inverse of frame_apply_z0.
Complex frame_invert_z0(const Frame& f, int n, Complex z0);

enum class ArcKind { Graph, Parametric };

/// Returns (x(s0 + h), y(s0 + h)) as series in h with the requested cap.
using LocalExpansionHook = std::function<std::pair<TaylorPoly, TaylorPoly>(double s0, int degree_cap)>;

class ArcSpec {
 public:
  /// The arc {x + i g(x)}, parametrized by x (orientation: increasing x).
  static ArcSpec graph(TaylorPoly g);
  /// Open arc s -> x(s) + i y(s) with Taylor data about s = 0.
  static ArcSpec parametric(TaylorPoly x, TaylorPoly y);
  /// Closed arc given by trigonometric coefficients with angular frequency
  /// w = 2 pi / period:  x(s) = c0 + sum_k (c_{2k-1} cos(k w s) + c_{2k} sin(k w s)).
  static ArcSpec trigonometric(std::vector<double> x_trig, std::vector<double> y_trig, double period,
                               int degree_cap = 24);
  /// Closed arc described only through its local re-expansion hook.
  static ArcSpec closed_from_hook(LocalExpansionHook hook, double period, int degree_cap);

  ArcKind kind() const noexcept { return kind_; }
  bool closed() const noexcept { return closed_; }
  double period() const noexcept { return period_; }
  int degree_cap() const noexcept { return degree_cap_; }
  bool is_trigonometric() const noexcept { return closed_ && !x_trig_.empty(); }

  /// Parameter interval used for regularity checks and open-arc atlases.
  std::pair<double, double> domain() const noexcept { return domain_; }
  ArcSpec with_domain(double lo, double hi) const;
  /// Same arc re-expanded with a different degree cap (polynomial data is
  /// truncated or zero-padded).
  ArcSpec with_degree_cap(int degree_cap) const;

  const TaylorPoly& g() const noexcept { return x_; }  // graph height function
  const TaylorPoly& x() const noexcept { return x_; }
  const TaylorPoly& y() const noexcept { return y_; }
  const std::vector<double>& x_trig() const noexcept { return x_trig_; }
  const std::vector<double>& y_trig() const noexcept { return y_trig_; }

  Complex point(double s) const;
  Complex velocity(double s) const;
  std::pair<TaylorPoly, TaylorPoly> local_expansion(double s0) const;

  /// Same curve traversed backwards (s -> -s).
  ArcSpec reversed() const;
  /// Throws RegularityError if |x'|^2 + |y'|^2 vanishes on the sampling grid.
  void check_regular(int samples = 512) const;

 private:
  ArcKind kind_ = ArcKind::Graph;
  bool closed_ = false;
  double period_ = 0.0;
  int degree_cap_ = 24;
  std::pair<double, double> domain_{0.0, 0.0};
  TaylorPoly x_;  // g for graph arcs
  TaylorPoly y_;
  std::vector<double> x_trig_;
  std::vector<double> y_trig_;
  LocalExpansionHook hook_;
};

/// Parses the arc JSON document (decimal-string coefficients) and validates it.
ArcSpec load_arc(std::string_view document);
/// Inverse of load_arc for graph, open parametric and trigonometric arcs.
std::string dump_arc(const ArcSpec& arc);

/// A local graph description of the arc after moving the base point to 0 with
/// horizontal tangent: the arc near 0 is {t + i f0'(t)}.
struct NormalizedArc {
  TaylorPoly f0;
  Frame frame;
  double base_param = 0.0;
  double speed = 1.0;  ///< |gamma'(base_param)|
  int n = 2;
};

/// Picks theta in [0, 2 pi / n) and a so that Phi_{a,theta} sends the arc point
/// at s0 to 0 and its tangent to the positive x0-axis, then re-expands the arc
/// as a graph t -> f0'(t) with f0(0) = f0'(0) = f0''(0) = 0.
NormalizedArc normalize_at(const ArcSpec& arc, double s0, int n);

struct RotationNumber {
  int value = 0;
  std::optional<std::string> warning;  ///< set when |value| != 1
};

/// Winding number of the tangent direction over one period.
RotationNumber rotation_number(const ArcSpec& arc, int samples = 4096);

/// Continuous tangent angle arg(gamma'(s)) at increasing parameters, unwrapped
/// starting from the principal value at params.front().
std::vector<double> unwrapped_tangent_angles(const ArcSpec& arc, std::span<const double> params,
                                             int substeps = 64);

struct GateResult {
  bool ok = true;
  int shift = 0;  ///< branch holonomy 2 * rotation_number mod n (closed arcs)
};

GateResult existence_gate(const ArcSpec& arc, int n);

}  // namespace slag
