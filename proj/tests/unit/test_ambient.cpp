#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "slag/ambient.hpp"
#include "slag/errors.hpp"

using namespace slag;

namespace {

constexpr double kPi = std::numbers::pi;

AmbientPoint random_point(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  AmbientPoint p{CVector(n + 1)};
  for (int k = 0; k <= n; ++k) p.z[k] = Complex{g(rng), g(rng)};
  return p;
}

std::vector<double> unit(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  std::vector<double> u(static_cast<std::size_t>(n));
  double norm = 0.0;
  for (double& x : u) {
    x = g(rng);
    norm += x * x;
  }
  for (double& x : u) x /= std::sqrt(norm);
  return u;
}

// Finite-difference pullback of a covector field under g, in the
// (dw, dw-bar, dzeta, dzeta-bar) basis.
Covector fd_pullback(const M0Map& g, Complex w, Complex zeta, const Covector& alpha) {
  const double h = 1e-6;
  const std::array<std::pair<Complex, Complex>, 4> dirs{{{Complex{1, 0}, 0.0},
                                                         {Complex{0, 1}, 0.0},
                                                         {0.0, Complex{1, 0}},
                                                         {0.0, Complex{0, 1}}}};
  std::array<Complex, 4> real_components{};
  for (std::size_t k = 0; k < 4; ++k) {
    const auto [dw, dz] = dirs[k];
    const auto plus = g.apply(w + h * dw, zeta + h * dz);
    const auto minus = g.apply(w - h * dw, zeta - h * dz);
    const Complex Dw = (plus.first - minus.first) / (2 * h);
    const Complex Dz = (plus.second - minus.second) / (2 * h);
    real_components[k] = alpha[0] * Dw + alpha[1] * std::conj(Dw) + alpha[2] * Dz + alpha[3] * std::conj(Dz);
  }
  // a dx + b dy = (a - i b)/2 dw + (a + i b)/2 dw-bar.
  const Complex I{0, 1};
  return Covector{(real_components[0] - I * real_components[1]) / 2.0,
                  (real_components[0] + I * real_components[1]) / 2.0,
                  (real_components[2] - I * real_components[3]) / 2.0,
                  (real_components[2] + I * real_components[3]) / 2.0};
}

}  // namespace

TEST(PhiMap, EmbedsReducedPoint) {
  const std::vector<double> u{0.6, 0.0, 0.8};
  const AmbientPoint p = phi_map(Complex{1, 2}, Complex{0.5, -1}, u);
  EXPECT_EQ(p.n(), 3);
  EXPECT_EQ(p.z[0], Complex(1, 2));
  EXPECT_NEAR(std::abs(p.z[3] - Complex{0.4, -0.8}), 0.0, 1e-15);
  const std::vector<double> not_unit{1.0, 1.0};
  EXPECT_THROW(phi_map(0.0, 1.0, not_unit), InvalidArgument);
}

TEST(LambdaStar, HasOrderTwoN) {
  std::mt19937_64 rng(3);
  for (int n : {2, 3, 5}) {
    const AmbientPoint p = random_point(rng, n);
    EXPECT_LT(lambda_star(p, 2 * n, n).distance(p), 1e-14);
    EXPECT_GT(lambda_star(p, n, n).distance(p), 1e-3);
    EXPECT_LT(lambda_star(lambda_star(p, 1, n), 2, n).distance(lambda_star(p, 3, n)), 1e-14);
  }
}

TEST(GroupMotion, InverseAndComposition) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int n : {2, 4}) {
    const AmbientPoint p = random_point(rng, n);
    const Complex a{u(rng), u(rng)}, b{u(rng), u(rng)};
    const double s = u(rng), t = u(rng);
    EXPECT_LT(group_motion_inverse(group_motion(p, a, s, n), a, s, n).distance(p), 1e-13);
    // Phi_{a,s} o Phi_{b,t} = Phi_{e^{ins} b + a, s + t}.
    const AmbientPoint lhs = group_motion(group_motion(p, b, t, n), a, s, n);
    const AmbientPoint rhs = group_motion(p, std::polar(1.0, n * s) * b + a, s + t, n);
    EXPECT_LT(lhs.distance(rhs), 1e-13);
  }
}

TEST(GroupMotion, PreservesOmegaAndUpsilonOfPlanes) {
  for (int n : {2, 3}) {
    const PlaneP plane = plane_P(0.37, n);
    std::vector<CVector> moved;
    for (const CVector& v : plane.basis) moved.push_back(group_motion_linear(v, 1.1, n));
    const SlagResidual r = slag_residual(moved);
    EXPECT_LT(r.omega_res, 1e-15);
    EXPECT_LT(r.upsilon_res, 1e-15);
  }
}

TEST(MomentumMap, VanishesOnRealMultiplesAndIsAntisymmetric) {
  const std::vector<double> u{0.0, 0.6, 0.8};
  EXPECT_LT(momentum_so_n(phi_map(Complex{1, 1}, Complex{0.3, -2.0}, u)).cwiseAbs().maxCoeff(), 1e-15);
  std::mt19937_64 rng(5);
  const Eigen::MatrixXd mu = momentum_so_n(random_point(rng, 4));
  EXPECT_LT((mu + mu.transpose()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_GT(mu.cwiseAbs().maxCoeff(), 1e-3);
}

TEST(OmegaForm, StandardPairing) {
  CVector a = CVector::Zero(2), b = CVector::Zero(2);
  a[1] = 1.0;
  b[1] = Complex{0, 1};
  EXPECT_DOUBLE_EQ(omega_form(a, b), 1.0);
  EXPECT_DOUBLE_EQ(omega_form(b, a), -1.0);
}

TEST(SlagResidual, RealPlaneHasUnitPhase) {
  std::vector<CVector> frame;
  for (int k = 0; k < 3; ++k) frame.push_back(CVector::Unit(3, k));
  const SlagResidual r = slag_residual(frame);
  EXPECT_EQ(r.omega_res, 0.0);
  EXPECT_EQ(r.upsilon_res, 0.0);
  EXPECT_DOUBLE_EQ(r.phase, 1.0);
}

TEST(SlagResidual, DegenerateFrameIsRankError) {
  std::vector<CVector> frame{CVector::Unit(2, 0), CVector::Unit(2, 0)};
  EXPECT_THROW(slag_residual(frame), RankError);
}

TEST(PlaneP, ResidualsVanishAcrossPsi) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 2 * kPi);
  for (int n = 2; n <= 7; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      const SlagResidual r = slag_residual(plane_P(u(rng), n).basis);
      EXPECT_LT(r.omega_res, 1e-14);
      EXPECT_LT(r.upsilon_res, 1e-14);
    }
  }
}

TEST(PlaneP, PeriodPi) {
  for (int n : {2, 3, 6}) {
    const Eigen::MatrixXd a = plane_projector(plane_P(0.4, n));
    const Eigen::MatrixXd b = plane_projector(plane_P(0.4 + kPi, n));
    EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(PlaneP, FdResidualOfLinearParametrization) {
  const Parametrization p = plane_parametrization(plane_P(1.2, 3));
  const std::vector<double> at{0.1, -0.2, 0.3, 0.4};
  const SlagResidual r = slag_residual(p, at);
  EXPECT_LT(r.omega_res, 1e-9);
  EXPECT_LT(r.upsilon_res, 1e-9);
}

TEST(PlaneP, ExactlyNPlanesContainALine) {
  for (int n = 2; n <= 6; ++n) {
    const double beta = 0.7;
    const std::vector<PlaneP> planes = planes_containing_line(beta, n);
    ASSERT_EQ(static_cast<int>(planes.size()), n);
    for (std::size_t i = 0; i < planes.size(); ++i) {
      EXPECT_TRUE(plane_contains_line(planes[i], beta));
      EXPECT_GE(planes[i].psi, 0.0);
      EXPECT_LT(planes[i].psi, kPi);
      for (std::size_t j = i + 1; j < planes.size(); ++j) {
        EXPECT_EQ(projection_intersection_dim(planes[i], planes[j]), 0);
      }
    }
    EXPECT_FALSE(plane_contains_line(planes[0], beta + 0.1));
  }
}

TEST(Sphere, TangentBasisIsOrthonormalAndChartHitsSphere) {
  std::mt19937_64 rng(7);
  const std::vector<double> u = unit(rng, 4);
  const auto basis = sphere_tangent_basis(u);
  ASSERT_EQ(basis.size(), 3u);
  const Eigen::Map<const Eigen::VectorXd> uv(u.data(), 4);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    EXPECT_NEAR(basis[i].dot(uv), 0.0, 1e-15);
    for (std::size_t j = 0; j < basis.size(); ++j) EXPECT_NEAR(basis[i].dot(basis[j]), i == j ? 1.0 : 0.0, 1e-15);
  }
  const std::vector<double> v{0.1, -0.2, 0.05};
  const std::vector<double> x = sphere_chart(u, basis, v);
  double norm = 0.0;
  for (double c : x) norm += c * c;
  EXPECT_NEAR(norm, 1.0, 1e-15);
}

TEST(Sphere, SamplesStartWithAxes) {
  const auto s = sphere_samples(3, 10);
  ASSERT_EQ(s.size(), 10u);
  EXPECT_EQ(s[0], (std::vector<double>{1.0, 0.0, 0.0}));
  EXPECT_EQ(s[2], (std::vector<double>{0.0, 0.0, 1.0}));
  for (const auto& u : s) {
    double norm = 0.0;
    for (double c : u) norm += c * c;
    EXPECT_NEAR(norm, 1.0, 1e-14);
  }
}

TEST(J0, CoframeAtUnitZeta) {
  const auto w = j0_coframe(Complex{0.3, 0.1}, 1.0, 3);
  EXPECT_EQ(w[0], Covector(1.0, 0.0, 0.0, Complex(0, 1)));
  EXPECT_EQ(w[1], Covector(0.0, 1.0, Complex(0, 1), 0.0));
  EXPECT_THROW(eta_coframe(1.0, 0.0, 2), SingularLocusError);
}

TEST(J0, ConjugateSwapsBarredSlots) {
  const Covector c(Complex{1, 2}, Complex{3, 4}, Complex{5, 6}, Complex{7, 8});
  EXPECT_EQ(conjugate(c), Covector(Complex(3, -4), Complex(1, -2), Complex(7, -8), Complex(5, -6)));
}

TEST(J0, PullbackAgreesWithFiniteDifferences) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  const int n = 3;
  const M0Map f = f_map(n, Complex{0.2, -0.4}, Complex{0.7, 0.9});
  for (int trial = 0; trial < 10; ++trial) {
    const Complex w{u(rng), u(rng)}, zeta{u(rng), u(rng)};
    const auto [w2, z2] = f.apply(w, zeta);
    const Covector alpha = j0_coframe(w2, z2, n)[0];
    EXPECT_LT((pullback(f, w, zeta, alpha) - fd_pullback(f, w, zeta, alpha)).norm(), 1e-8);
  }
}

TEST(J0, RotationIdentityAndEtaInvariance) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int n = 2; n <= 5; ++n) {
    const M0Map c = c_map(n);
    const M0Map f = f_map(n, Complex{u(rng), u(rng)}, Complex{u(rng), u(rng)});
    for (int trial = 0; trial < 10; ++trial) {
      const Complex w{u(rng), u(rng)}, zeta{u(rng), u(rng)};
      const auto [cw, cz] = c.apply(w, zeta);
      const auto at_c = j0_coframe(cw, cz, n);
      const auto here = j0_coframe(w, zeta, n);
      EXPECT_LT((pullback(c, w, zeta, at_c[0]) - conjugate(here[1])).norm(), 1e-12);
      const auto [fw, fz] = f.apply(w, zeta);
      const auto eta_f = eta_coframe(fw, fz, n);
      const auto eta = eta_coframe(w, zeta, n);
      EXPECT_LT((pullback(f, w, zeta, eta_f[0]) - eta[0]).norm(), 1e-12 * (1.0 + eta[0].norm()));
      EXPECT_LT((pullback(f, w, zeta, eta_f[1]) - eta[1]).norm(), 1e-12 * (1.0 + eta[1].norm()));
    }
  }
}

TEST(J0, SpanDistance) {
  const Covector a(1.0, 0.0, 0.0, 0.0), b(0.0, 1.0, 0.0, 0.0);
  EXPECT_NEAR(span_distance(Covector(2.0, Complex(0, 3), 0.0, 0.0), a, b), 0.0, 1e-15);
  EXPECT_NEAR(span_distance(Covector(0.0, 0.0, 1.0, 0.0), a, b), 1.0, 1e-15);
}
