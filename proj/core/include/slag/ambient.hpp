#pragma once

// Maps into C^{n+1}, the symmetry actions, the SO(n)-invariant special
// Lagrangian planes, the momentum map, and numeric residuals of the Kahler
// form omega and of Upsilon = Im(dz0 ^ .. ^ dzn) on parametrized (n+1)-folds.
// The J0 layer on M0 = {(w, zeta) : zeta != 0} lives at the end.

#include <array>
#include <complex>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "slag/arc.hpp"

namespace slag {

using CVector = Eigen::VectorXcd;

/// (z0, z1, .., zn) in C^{n+1}.
struct AmbientPoint {
  CVector z;

  int n() const { return static_cast<int>(z.size()) - 1; }
  double distance(const AmbientPoint& other) const { return (z - other.z).norm(); }
};

/// (w, zeta u1, .., zeta un); u must be a unit vector within 1e-12.
AmbientPoint phi_map(Complex w, Complex zeta, std::span<const double> u);

/// (z0, lambda^j z1, .., lambda^j zn) with lambda = e^{i pi / n}.
AmbientPoint lambda_star(const AmbientPoint& p, int j, int n);

/// Phi_{a,theta}: (e^{i n theta} z0 + a, e^{-i theta} z1, .., e^{-i theta} zn).
AmbientPoint group_motion(const AmbientPoint& p, Complex a, double theta, int n);
/// Phi_{a,theta}^{-1}.
AmbientPoint group_motion_inverse(const AmbientPoint& p, Complex a, double theta, int n);
/// Linear part of Phi_{a,theta} applied to a tangent vector.
CVector group_motion_linear(const CVector& v, double theta, int n);

/// mu_ij = x_i y_j - y_i x_j for 1 <= i, j <= n.
Eigen::MatrixXd momentum_so_n(const AmbientPoint& p);

/// omega(u, v) = sum_k x_k(u) y_k(v) - y_k(u) x_k(v) = Im(sum_k conj(u_k) v_k).
double omega_form(const CVector& u, const CVector& v);

struct SlagResidual {
  double omega_res = 0.0;    ///< max_{i<j} |omega(v_i, v_j)|
  double upsilon_res = 0.0;  ///< |Im det[v0 .. vn]|
  double phase = 1.0;        ///< Re det / |det|
};

/// Residuals of a tangent frame of n+1 vectors in C^{n+1}. Throws RankError
/// when |det| is below 1e-12 times the product of the vector norms.
SlagResidual slag_residual(const std::vector<CVector>& frame);

using Parametrization = std::function<AmbientPoint(std::span<const double>)>;

/// Tangent vectors by central differences with step h, Richardson-combined with h/2.
std::vector<CVector> fd_tangent_frame(const Parametrization& param, std::span<const double> at, double h);

/// Residuals of param at `at` using fd_tangent_frame.
SlagResidual slag_residual(const Parametrization& param, std::span<const double> at, double h = 1e-5);

// ---- invariant planes ---------------------------------------------------------------

/// P_psi: 0 = cos(n psi) dy0 + sin(n psi) dx0 = cos(psi) dyk - sin(psi) dxk.
struct PlaneP {
  double psi = 0.0;
  int n = 2;
  /// Real-orthonormal basis: e^{-i n psi} e0 and e^{i psi} ek, k = 1..n.
  std::vector<CVector> basis;
};

PlaneP plane_P(double psi, int n);

/// Orthogonal projector onto the plane, as a real 2(n+1) x 2(n+1) matrix
/// in coordinates (x0, y0, .., xn, yn).
Eigen::MatrixXd plane_projector(const PlaneP& plane);

/// Linear parametrization x -> sum_i x_i basis_i.
Parametrization plane_parametrization(const PlaneP& plane);

/// Whether the line R e^{i beta} in the fixed C lies in the plane.
bool plane_contains_line(const PlaneP& plane, double beta, double tol = 1e-12);

/// The n planes P_psi, psi in [0, pi), containing the line R e^{i beta}.
std::vector<PlaneP> planes_containing_line(double beta, int n);

/// Real dimension of the intersection of the C^n-projections of two planes.
int projection_intersection_dim(const PlaneP& a, const PlaneP& b, double tol = 1e-10);

// ---- sphere helpers ------------------------------------------------------------------

/// Orthonormal basis of the tangent space of S^{n-1} at u.
std::vector<Eigen::VectorXd> sphere_tangent_basis(std::span<const double> u);

/// Local chart v -> (u + sum v_i e_i) / |u + sum v_i e_i| around u.
std::vector<double> sphere_chart(std::span<const double> u, const std::vector<Eigen::VectorXd>& basis,
                                 std::span<const double> v);

/// Deterministic points on S^{n-1}: the coordinate axes first, then a Halton
/// sequence pushed through the Box-Muller map.
std::vector<std::vector<double>> sphere_samples(int n, int count);

// ---- the almost complex structure J0 on M0 ----------------------------------------------

/// A complex covector on M0 = C^2 \ {zeta = 0} in the basis (dw, dw-bar, dzeta, dzeta-bar).
using Covector = Eigen::Vector4cd;

/// omega1 = dw + i conj(zeta)^{n-1} dconj(zeta) / |zeta|^{n-1};
/// omega2 = dconj(w) + i zeta^{n-1} dzeta / |zeta|^{n-1}.
std::array<Covector, 2> j0_coframe(Complex w, Complex zeta, int n);

/// eta1 = |zeta|^{n-1} / conj(zeta)^n dw + i dconj(zeta) / conj(zeta);
/// eta2 = |zeta|^{n-1} / zeta^n dconj(w) + i dzeta / zeta.
std::array<Covector, 2> eta_coframe(Complex w, Complex zeta, int n);

/// Entry-wise conjugate of the form: conj(a dw + b dw-bar + ..) = conj(b) dw + conj(a) dw-bar + ..
Covector conjugate(const Covector& c);

/// A self-map of M0 with its real Jacobian in coordinates (Re w, Im w, Re zeta, Im zeta).
struct M0Map {
  std::function<std::pair<Complex, Complex>(Complex, Complex)> apply;
  std::function<Eigen::Matrix4d(Complex, Complex)> jacobian;
};

/// C(w, zeta) = (w, e^{i pi / n} zeta).
M0Map c_map(int n);
/// F_{a,b}(w, zeta) = (conj(b)^n / |b|^{n-1} w + a, b zeta).
M0Map f_map(int n, Complex a, Complex b);

/// G^* alpha at (w, zeta), where alpha is the covector field evaluated at G(w, zeta).
Covector pullback(const M0Map& g, Complex w, Complex zeta, const Covector& alpha_at_image);

/// Distance from c to span{b1, b2} (least squares in C^4).
double span_distance(const Covector& c, const Covector& b1, const Covector& b2);

}  // namespace slag
