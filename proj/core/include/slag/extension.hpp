#pragma once

// Formal even-in-sigma solution of the singular special Lagrangian equation
//
//   Im((sigma + i phi_s)^(n-1) ((1 + i phi_tt)(1 + i phi_ss) + phi_st^2)) = 0,
//   phi(t, 0) = f0(t),  phi_ss(0, 0) = 0,
//
// its convergence hypotheses in Gerard-Tahara form, and empirical radius fits.
//
// The numeric core is templated on the scalar so that residual decay can be
// measured in quad precision; double and Quad are instantiated in the library.

#include <array>
#include <limits>
#include <string>
#include <vector>

#include "slag/precision.hpp"
#include "slag/series.hpp"

namespace slag {

/// f1 = -tan(arctan(f0'') / n), the branch with f1(0) = 0.
template <class T>
BasicTaylorPoly<T> compute_f1(const BasicTaylorPoly<T>& f0, int n);

/// (1 + i f1)^n (1 + i f0''); its imaginary part vanishes for f1 = compute_f1(f0, n).
template <class T>
BasicComplexSeries<T> stage0_product(const BasicTaylorPoly<T>& f0, const BasicTaylorPoly<T>& f1, int n);

/// R = Re((1 + i f1)^n (1 + i f0'')), R(0) = 1.
template <class T>
BasicTaylorPoly<T> compute_R(const BasicTaylorPoly<T>& f0, const BasicTaylorPoly<T>& f1, int n);

/// sigma^(2j) coefficients, j = 0..order, of
///   Im((1 + i phi_s/sigma)^(n-1) ((1 + i phi_tt)(1 + i phi_ss) + phi_st^2))
/// for the truncated expansion (terms beyond phi.K() are zero).
template <class T>
std::vector<BasicTaylorPoly<T>> pde_lhs_coefficients(const BasicSigmaExpansion<T>& phi, int order);

/// Largest t-degree at which f_k is exact when f0 is exact to degree D.
inline int valid_degree(int D, int k) { return k <= 1 ? D : D - 2 * (k - 1); }

/// The unique even formal solution [f0, .., f_K]. For k = 1..K-1 the sigma^(2k)
/// coefficient E_k of the left side (with f_{k+1} = 0) fixes
///   f_{k+1} = -E_k (1 + f1^2) / R * (2k+1)! / (2k+n).
/// Coefficients of f_k above valid_degree(D, k) are zeroed.
template <class T>
BasicSigmaExpansion<T> extend_series(const BasicTaylorPoly<T>& f0, int n, int K);

/// Max coefficient deviation of
///   [coef_{sigma^2k} with f_{k+1} = delta] - [coef with f_{k+1} = 0]
/// from delta * R / (1 + f1^2) * (2k+n) / (2k+1)!.
template <class T>
T linearity_probe(const BasicTaylorPoly<T>& f0, int n, int k, T delta);

/// Left side of the undivided equation at (t, sigma), using
/// (sigma + i phi_s)^(n-1) = sigma^(n-1) (1 + i phi_s/sigma)^(n-1).
template <class T>
T pde_lhs_at(const BasicSigmaExpansion<T>& phi, const T& t, const T& sigma);

/// Tensor sampling grid on [t_lo, t_hi] x [sigma_lo, sigma_hi], endpoints included.
struct ResidualGrid {
  double t_lo = -0.05;
  double t_hi = 0.05;
  double sigma_lo = 0.0;
  double sigma_hi = 0.05;
  int nt = 11;
  int ns = 11;

  /// Square box |t| <= sigma_max, 0 <= sigma <= sigma_max.
  static ResidualGrid box(double sigma_max, int nt = 11, int ns = 11);
  int samples() const { return nt * ns; }
  double t_at(int i) const { return nt == 1 ? t_lo : t_lo + (t_hi - t_lo) * i / (nt - 1); }
  double sigma_at(int j) const { return ns == 1 ? sigma_lo : sigma_lo + (sigma_hi - sigma_lo) * j / (ns - 1); }
  std::string describe() const;
};

struct ResidualReport {
  double max_pde = 0.0;
  double max_omega = 0.0;
  double max_upsilon = 0.0;
  double max_momentum = 0.0;
  int samples = 0;
  std::string grid;
};

template <class T>
ResidualReport pde_residual(const BasicSigmaExpansion<T>& phi, const ResidualGrid& grid);

/// Least-squares slope of log(residual) against log(sigma_max).
double fit_decay_exponent(const std::vector<double>& sigma_max, const std::vector<double>& residual);

// ---- Gerard-Tahara hypotheses -------------------------------------------------

/// Argument order of G(t, sigma, Z00, Z01, Z10, Z02, Z11, Z20).
enum GTVar { Z00 = 0, Z01 = 1, Z10 = 2, Z02 = 3, Z11 = 4, Z20 = 5 };

/// G obtained by writing phi = f0 + f1 sigma^2 / 2 + u sigma^2 in the divided equation.
class GTFunction {
 public:
  GTFunction(const TaylorPoly& f0, int n);
  double operator()(double t, double sigma, const std::array<double, 6>& Z) const;
  /// Central difference in variable `var` at (t, sigma, Z), Richardson-combined over h and h/10.
  double partial(GTVar var, double t, double sigma, const std::array<double, 6>& Z, double h) const;
  int n() const { return n_; }

 private:
  int n_;
  TaylorPoly f0pp_, f1_, f1p_, f1pp_;
};

struct GTOptions {
  double t_halfwidth = 0.1;
  int t_points = 21;
  std::array<double, 3> steps{1e-4, 1e-5, 1e-6};
  double vanish_tol = 1e-9;
  double partial_tol = 1e-7;
  int indicial_kmax = 1000;
};

struct GTReport {
  int n = 0;
  double max_g0 = 0.0;        ///< sup |G(t, 0)| on the t-grid
  double max_cond2 = 0.0;     ///< sup of |dG/dZ01|, |dG/dZ11|, |dG/dZ02| at (t, 0)
  double dG_dZ20 = 0.0;       ///< at (0, 0)
  double dG_dZ10 = 0.0;
  double dG_dZ00 = 0.0;
  double fd_spread = 0.0;     ///< disagreement between the two Richardson estimates
  double min_indicial = 0.0;  ///< min_k |dZ20 k^2 + dZ10 k + dZ00|, k = 1..kmax
  bool cond1 = false, cond2 = false, cond3 = false, cond4 = false;
  bool partials_match = false;  ///< triple equals (1, n+3, 2n) within partial_tol
  bool pass = false;
};

GTReport gt_hypotheses_check(const TaylorPoly& f0, int n, const GTOptions& opts = {});

// ---- radius fits ----------------------------------------------------------------

struct RadiusEstimate {
  static constexpr double kInf = std::numeric_limits<double>::infinity();
  double C = 0.0;
  double M = kInf;
  double rho_sigma = kInf;
  double fit_quality = 1.0;
  double rho_t = kInf;  ///< t-radius from the coefficient tails of f0' and f1
  bool estimated = false;

  bool infinite() const { return rho_sigma == kInf; }
  friend bool operator==(const RadiusEstimate&, const RadiusEstimate&) = default;
};

/// Fits log(|f_k|_tau / (2k)!) against k (|p|_tau = sum_d |p_d| tau^d); needs K >= 4.
RadiusEstimate estimate_radius(const SigmaExpansion& phi, double tau = 0.1);

/// Root-test estimate of the t-radius of the expansion's coefficient functions.
double estimate_t_radius(const SigmaExpansion& phi);

}  // namespace slag
