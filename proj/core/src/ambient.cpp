#include "slag/ambient.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "slag/errors.hpp"

namespace slag {

namespace {

constexpr Complex kI{0.0, 1.0};

Eigen::Matrix2d complex_mul_matrix(Complex c) {
  Eigen::Matrix2d m;
  m << c.real(), -c.imag(), c.imag(), c.real();
  return m;
}

double radical_inverse(int index, int base) {
  double inv = 1.0 / base;
  double f = inv;
  double r = 0.0;
  while (index > 0) {
    r += f * (index % base);
    index /= base;
    f *= inv;
  }
  return r;
}

constexpr std::array<int, 16> kPrimes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

}  // namespace

AmbientPoint phi_map(Complex w, Complex zeta, std::span<const double> u) {
  if (u.empty()) throw InvalidArgument("phi_map needs n >= 1 components of u");
  double norm2 = 0.0;
  for (double c : u) norm2 += c * c;
  if (std::abs(std::sqrt(norm2) - 1.0) > 1e-12) throw InvalidArgument("phi_map needs a unit vector u");
  AmbientPoint p;
  p.z.resize(static_cast<Eigen::Index>(u.size()) + 1);
  p.z[0] = w;
  for (std::size_t k = 0; k < u.size(); ++k) p.z[static_cast<Eigen::Index>(k) + 1] = zeta * u[k];
  return p;
}

AmbientPoint lambda_star(const AmbientPoint& p, int j, int n) {
  const int jj = ((j % (2 * n)) + 2 * n) % (2 * n);
  if (jj == 0) return p;
  const Complex lam = std::polar(1.0, std::numbers::pi * jj / n);
  AmbientPoint q = p;
  q.z.tail(q.z.size() - 1) *= lam;
  return q;
}

CVector group_motion_linear(const CVector& v, double theta, int n) {
  CVector out = v;
  out[0] *= std::polar(1.0, n * theta);
  out.tail(out.size() - 1) *= std::polar(1.0, -theta);
  return out;
}

AmbientPoint group_motion(const AmbientPoint& p, Complex a, double theta, int n) {
  AmbientPoint q{group_motion_linear(p.z, theta, n)};
  q.z[0] += a;
  return q;
}

AmbientPoint group_motion_inverse(const AmbientPoint& p, Complex a, double theta, int n) {
  AmbientPoint q = p;
  q.z[0] -= a;
  return AmbientPoint{group_motion_linear(q.z, -theta, n)};
}

Eigen::MatrixXd momentum_so_n(const AmbientPoint& p) {
  const int n = p.n();
  Eigen::MatrixXd mu = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Complex zi = p.z[i + 1];
      const Complex zj = p.z[j + 1];
      mu(i, j) = zi.real() * zj.imag() - zi.imag() * zj.real();
    }
  }
  return mu;
}

double omega_form(const CVector& u, const CVector& v) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < u.size(); ++k) s += u[k].real() * v[k].imag() - u[k].imag() * v[k].real();
  return s;
}

SlagResidual slag_residual(const std::vector<CVector>& frame) {
  const auto m = static_cast<Eigen::Index>(frame.size());
  if (m == 0 || frame.front().size() != m) {
    throw ShapeError("slag_residual needs n+1 tangent vectors in C^{n+1}");
  }
  Eigen::MatrixXcd V(m, m);
  double scale = 1.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (frame[static_cast<std::size_t>(i)].size() != m) throw ShapeError("tangent vectors differ in length");
    V.col(i) = frame[static_cast<std::size_t>(i)];
    scale *= frame[static_cast<std::size_t>(i)].norm();
  }
  const Complex det = V.determinant();
  if (!(std::abs(det) > 1e-12 * scale)) throw RankError("degenerate tangent frame (det ~ 0)");
  SlagResidual r;
  for (std::size_t i = 0; i < frame.size(); ++i) {
    for (std::size_t j = i + 1; j < frame.size(); ++j) {
      r.omega_res = std::max(r.omega_res, std::abs(omega_form(frame[i], frame[j])));
    }
  }
  r.upsilon_res = std::abs(det.imag());
  r.phase = det.real() / std::abs(det);
  return r;
}

std::vector<CVector> fd_tangent_frame(const Parametrization& param, std::span<const double> at, double h) {
  if (!(h > 0.0)) throw InvalidArgument("finite-difference step must be positive");
  std::vector<double> x(at.begin(), at.end());
  const auto central = [&](std::size_t i, double step) {
    const double x0 = x[i];
    x[i] = x0 + step;
    const CVector plus = param(x).z;
    x[i] = x0 - step;
    const CVector minus = param(x).z;
    x[i] = x0;
    return CVector((plus - minus) / (2.0 * step));
  };
  std::vector<CVector> frame;
  frame.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const CVector coarse = central(i, h);
    const CVector fine = central(i, h / 2.0);
    frame.push_back((4.0 * fine - coarse) / 3.0);
  }
  return frame;
}

SlagResidual slag_residual(const Parametrization& param, std::span<const double> at, double h) {
  return slag_residual(fd_tangent_frame(param, at, h));
}

PlaneP plane_P(double psi, int n) {
  if (n < 1) throw InvalidArgument("plane_P needs n >= 1");
  PlaneP p;
  p.psi = psi;
  p.n = n;
  for (int k = 0; k <= n; ++k) {
    CVector b = CVector::Zero(n + 1);
    b[k] = k == 0 ? std::polar(1.0, -n * psi) : std::polar(1.0, psi);
    p.basis.push_back(b);
  }
  return p;
}

Eigen::MatrixXd plane_projector(const PlaneP& plane) {
  const int dim = 2 * (plane.n + 1);
  Eigen::MatrixXd B(dim, plane.n + 1);
  for (int i = 0; i <= plane.n; ++i) {
    for (int k = 0; k <= plane.n; ++k) {
      B(2 * k, i) = plane.basis[static_cast<std::size_t>(i)][k].real();
      B(2 * k + 1, i) = plane.basis[static_cast<std::size_t>(i)][k].imag();
    }
  }
  return B * B.transpose();
}

Parametrization plane_parametrization(const PlaneP& plane) {
  return [plane](std::span<const double> x) {
    AmbientPoint p{CVector::Zero(plane.n + 1)};
    for (std::size_t i = 0; i < x.size() && i < plane.basis.size(); ++i) p.z += x[i] * plane.basis[i];
    return p;
  };
}

bool plane_contains_line(const PlaneP& plane, double beta, double tol) {
  const Eigen::MatrixXd P = plane_projector(plane);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(2 * (plane.n + 1));
  v[0] = std::cos(beta);
  v[1] = std::sin(beta);
  return (P * v - v).norm() <= tol;
}

std::vector<PlaneP> planes_containing_line(double beta, int n) {
  std::vector<PlaneP> out;
  for (int m = 0; m < n; ++m) {
    double psi = std::fmod(-beta / n + m * std::numbers::pi / n, std::numbers::pi);
    if (psi < 0.0) psi += std::numbers::pi;
    out.push_back(plane_P(psi, n));
  }
  std::sort(out.begin(), out.end(), [](const PlaneP& a, const PlaneP& b) { return a.psi < b.psi; });
  return out;
}

int projection_intersection_dim(const PlaneP& a, const PlaneP& b, double tol) {
  if (a.n != b.n) throw ShapeError("planes live in different dimensions");
  const int n = a.n;
  Eigen::MatrixXd M(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const Complex ca = a.basis[static_cast<std::size_t>(i) + 1][k + 1];
      const Complex cb = b.basis[static_cast<std::size_t>(i) + 1][k + 1];
      M(2 * k, i) = ca.real();
      M(2 * k + 1, i) = ca.imag();
      M(2 * k, n + i) = cb.real();
      M(2 * k + 1, n + i) = cb.imag();
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
  lu.setThreshold(tol);
  return 2 * n - static_cast<int>(lu.rank());
}

std::vector<Eigen::VectorXd> sphere_tangent_basis(std::span<const double> u) {
  const auto n = static_cast<Eigen::Index>(u.size());
  Eigen::VectorXd uu(n);
  for (Eigen::Index i = 0; i < n; ++i) uu[i] = u[static_cast<std::size_t>(i)];
  std::vector<Eigen::VectorXd> basis;
  for (Eigen::Index axis = 0; axis < n && static_cast<Eigen::Index>(basis.size()) < n - 1; ++axis) {
    Eigen::VectorXd v = Eigen::VectorXd::Unit(n, axis);
    v -= v.dot(uu) * uu;
    for (const auto& b : basis) v -= v.dot(b) * b;
    if (v.norm() > 1e-6) basis.push_back(v.normalized());
  }
  return basis;
}

std::vector<double> sphere_chart(std::span<const double> u, const std::vector<Eigen::VectorXd>& basis,
                                 std::span<const double> v) {
  std::vector<double> out(u.begin(), u.end());
  for (std::size_t i = 0; i < basis.size() && i < v.size(); ++i) {
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += v[i] * basis[i][static_cast<Eigen::Index>(k)];
  }
  double norm = 0.0;
  for (double c : out) norm += c * c;
  norm = std::sqrt(norm);
  for (double& c : out) c /= norm;
  return out;
}

std::vector<std::vector<double>> sphere_samples(int n, int count) {
  if (n < 1) throw InvalidArgument("sphere_samples needs n >= 1");
  if (2 * ((n + 1) / 2) > static_cast<int>(kPrimes.size())) throw InvalidArgument("sphere dimension too large");
  std::vector<std::vector<double>> out;
  for (int k = 0; k < n && static_cast<int>(out.size()) < count; ++k) {
    std::vector<double> e(static_cast<std::size_t>(n), 0.0);
    e[static_cast<std::size_t>(k)] = 1.0;
    out.push_back(e);
  }
  for (int index = 1; static_cast<int>(out.size()) < count; ++index) {
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int pair = 0; 2 * pair < n; ++pair) {
      const double u1 = 1.0 - radical_inverse(index, kPrimes[static_cast<std::size_t>(2 * pair)]);
      const double u2 = radical_inverse(index, kPrimes[static_cast<std::size_t>(2 * pair + 1)]);
      const double r = std::sqrt(-2.0 * std::log(u1));
      g[static_cast<std::size_t>(2 * pair)] = r * std::cos(2.0 * std::numbers::pi * u2);
      if (2 * pair + 1 < n) g[static_cast<std::size_t>(2 * pair + 1)] = r * std::sin(2.0 * std::numbers::pi * u2);
    }
    double norm = 0.0;
    for (double c : g) norm += c * c;
    norm = std::sqrt(norm);
    if (norm < 1e-8) continue;
    for (double& c : g) c /= norm;
    out.push_back(std::move(g));
  }
  return out;
}

std::array<Covector, 2> j0_coframe(Complex /*w*/, Complex zeta, int n) {
  const double r = std::abs(zeta);
  if (r == 0.0) throw SingularLocusError("J0 is undefined on the line zeta = 0");
  const double scale = std::pow(r, n - 1);
  Covector w1(1.0, 0.0, 0.0, kI * std::pow(std::conj(zeta), n - 1) / scale);
  Covector w2(0.0, 1.0, kI * std::pow(zeta, n - 1) / scale, 0.0);
  return {w1, w2};
}

std::array<Covector, 2> eta_coframe(Complex /*w*/, Complex zeta, int n) {
  const double r = std::abs(zeta);
  if (r == 0.0) throw SingularLocusError("J0 is undefined on the line zeta = 0");
  const double scale = std::pow(r, n - 1);
  Covector e1(scale / std::pow(std::conj(zeta), n), 0.0, 0.0, kI / std::conj(zeta));
  Covector e2(0.0, scale / std::pow(zeta, n), kI / zeta, 0.0);
  return {e1, e2};
}

Covector conjugate(const Covector& c) {
  return Covector(std::conj(c[1]), std::conj(c[0]), std::conj(c[3]), std::conj(c[2]));
}

M0Map c_map(int n) {
  const Complex lam = std::polar(1.0, std::numbers::pi / n);
  M0Map m;
  m.apply = [lam](Complex w, Complex zeta) { return std::pair{w, lam * zeta}; };
  m.jacobian = [lam](Complex, Complex) {
    Eigen::Matrix4d J = Eigen::Matrix4d::Zero();
    J.block<2, 2>(0, 0) = Eigen::Matrix2d::Identity();
    J.block<2, 2>(2, 2) = complex_mul_matrix(lam);
    return J;
  };
  return m;
}

M0Map f_map(int n, Complex a, Complex b) {
  if (b == Complex(0.0, 0.0)) throw InvalidArgument("F_{a,b} needs b != 0");
  const Complex c = std::pow(std::conj(b), n) / std::pow(std::abs(b), n - 1);
  M0Map m;
  m.apply = [a, b, c](Complex w, Complex zeta) { return std::pair{c * w + a, b * zeta}; };
  m.jacobian = [b, c](Complex, Complex) {
    Eigen::Matrix4d J = Eigen::Matrix4d::Zero();
    J.block<2, 2>(0, 0) = complex_mul_matrix(c);
    J.block<2, 2>(2, 2) = complex_mul_matrix(b);
    return J;
  };
  return m;
}

Covector pullback(const M0Map& g, Complex w, Complex zeta, const Covector& alpha) {
  // Real components on (dRe w, dIm w, dRe zeta, dIm zeta): dw = dx + i dy, dw-bar = dx - i dy.
  Eigen::Vector4cd real_form(alpha[0] + alpha[1], kI * (alpha[0] - alpha[1]), alpha[2] + alpha[3],
                             kI * (alpha[2] - alpha[3]));
  const Eigen::Vector4cd pulled = g.jacobian(w, zeta).cast<Complex>().transpose() * real_form;
  return Covector((pulled[0] - kI * pulled[1]) / 2.0, (pulled[0] + kI * pulled[1]) / 2.0,
                  (pulled[2] - kI * pulled[3]) / 2.0, (pulled[2] + kI * pulled[3]) / 2.0);
}

double span_distance(const Covector& c, const Covector& b1, const Covector& b2) {
  Eigen::Matrix<Complex, 4, 2> B;
  B.col(0) = b1;
  B.col(1) = b2;
  const Eigen::Vector2cd coef = B.colPivHouseholderQr().solve(c);
  return (B * coef - c).norm();
}

}  // namespace slag
