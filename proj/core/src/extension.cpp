#include "slag/extension.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace slag {

namespace {

template <class T>
T tabs(const T& x) {
  using std::abs;
  return abs(x);
}

template <class T>
struct Cplx {
  T re{0};
  T im{0};
  friend Cplx operator*(const Cplx& a, const Cplx& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
};

template <class T>
Cplx<T> cpow(Cplx<T> z, int m) {
  Cplx<T> r{T(1), T(0)};
  while (m > 0) {
    if (m & 1) r = r * z;
    m >>= 1;
    if (m > 0) z = z * z;
  }
  return r;
}

// Series in s = sigma^2 whose coefficients are t-series; index = power of s.
template <class T>
using BiSeries = std::vector<BasicTaylorPoly<T>>;

template <class T>
struct ComplexBi {
  BiSeries<T> re;
  BiSeries<T> im;
};

template <class T>
BiSeries<T> bi_mul(const BiSeries<T>& a, const BiSeries<T>& b, int order) {
  const int D = a.front().degree_cap();
  BiSeries<T> out(static_cast<std::size_t>(order) + 1, BasicTaylorPoly<T>(D));
  for (int i = 0; i <= order && i < static_cast<int>(a.size()); ++i) {
    if (a[static_cast<std::size_t>(i)].is_zero()) continue;
    for (int j = 0; i + j <= order && j < static_cast<int>(b.size()); ++j) {
      out[static_cast<std::size_t>(i + j)] +=
          poly_mul(a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(j)]);
    }
  }
  return out;
}

template <class T>
BiSeries<T> bi_add(BiSeries<T> a, const BiSeries<T>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

template <class T>
BiSeries<T> bi_sub(BiSeries<T> a, const BiSeries<T>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

template <class T>
ComplexBi<T> cbi_mul(const ComplexBi<T>& a, const ComplexBi<T>& b, int order) {
  return {bi_sub(bi_mul(a.re, b.re, order), bi_mul(a.im, b.im, order)),
          bi_add(bi_mul(a.re, b.im, order), bi_mul(a.im, b.re, order))};
}

template <class T>
ComplexBi<T> cbi_pow(ComplexBi<T> z, int m, int order) {
  const int D = z.re.front().degree_cap();
  ComplexBi<T> r{BiSeries<T>(static_cast<std::size_t>(order) + 1, BasicTaylorPoly<T>(D)),
                 BiSeries<T>(static_cast<std::size_t>(order) + 1, BasicTaylorPoly<T>(D))};
  r.re[0][0] = T(1);
  while (m > 0) {
    if (m & 1) r = cbi_mul(r, z, order);
    m >>= 1;
    if (m > 0) z = cbi_mul(z, z, order);
  }
  return r;
}

// 1 + i * x for a real bi-series x.
template <class T>
ComplexBi<T> one_plus_i(const BiSeries<T>& x) {
  const int D = x.front().degree_cap();
  ComplexBi<T> z{BiSeries<T>(x.size(), BasicTaylorPoly<T>(D)), x};
  z.re[0][0] = T(1);
  return z;
}

template <class T>
void require_normalized(const BasicTaylorPoly<T>& f0) {
  const T tol(1e-13);
  if (f0.degree_cap() < 2) throw TruncationError("f0 needs degree cap >= 2");
  for (int d = 0; d <= 2; ++d) {
    if (tabs(f0[d]) > tol) {
      throw NormalizationError("f0 must satisfy f0(0) = f0'(0) = f0''(0) = 0");
    }
  }
}

}  // namespace

template <class T>
BasicTaylorPoly<T> compute_f1(const BasicTaylorPoly<T>& f0, int n) {
  if (n < 2) throw InvalidArgument("n must be >= 2");
  BasicTaylorPoly<T> f0pp = poly_derivative(poly_derivative(f0));
  if (tabs(f0pp[0]) > T(1e-13)) throw NormalizationError("compute_f1 needs f0''(0) = 0");
  f0pp[0] = T(0);
  BasicTaylorPoly<T> angle = analytic_compose(Kernel::Arctan, f0pp) * (T(1) / T(n));
  return -analytic_compose(Kernel::Tan, angle);
}

template <class T>
BasicComplexSeries<T> stage0_product(const BasicTaylorPoly<T>& f0, const BasicTaylorPoly<T>& f1, int n) {
  const BasicTaylorPoly<T> f0pp = poly_derivative(poly_derivative(f0));
  return complex_int_pow(BasicComplexSeries<T>::one_plus_i(f1), n) * BasicComplexSeries<T>::one_plus_i(f0pp);
}

template <class T>
BasicTaylorPoly<T> compute_R(const BasicTaylorPoly<T>& f0, const BasicTaylorPoly<T>& f1, int n) {
  return stage0_product(f0, f1, n).re;
}

template <class T>
std::vector<BasicTaylorPoly<T>> pde_lhs_coefficients(const BasicSigmaExpansion<T>& phi, int order) {
  if (order < 0) throw InvalidArgument("order must be >= 0");
  const int D = phi.D();
  const int n = phi.n();
  const auto fk = [&](int k) -> BasicTaylorPoly<T> {
    return k <= phi.K() ? phi.f(k) : BasicTaylorPoly<T>(D);
  };
  const std::size_t len = static_cast<std::size_t>(order) + 1;
  BiSeries<T> A(len, BasicTaylorPoly<T>(D));  // phi_s / sigma
  BiSeries<T> B(len, BasicTaylorPoly<T>(D));  // phi_tt
  BiSeries<T> C(len, BasicTaylorPoly<T>(D));  // phi_ss
  BiSeries<T> P(len, BasicTaylorPoly<T>(D));  // phi_st / sigma
  for (int j = 0; j <= order; ++j) {
    const T f2j = factorial<T>(2 * j);
    const T f2j1 = f2j * T(2 * j + 1);
    const BasicTaylorPoly<T> next = fk(j + 1);
    const auto u = static_cast<std::size_t>(j);
    A[u] = next * (T(1) / f2j1);
    B[u] = poly_derivative(poly_derivative(fk(j))) * (T(1) / f2j);
    C[u] = next * (T(1) / f2j);
    P[u] = poly_derivative(next) * (T(1) / f2j1);
  }
  // phi_st^2 = sigma^2 * P^2: shift by one power of s.
  const BiSeries<T> P2 = bi_mul(P, P, order);
  ComplexBi<T> Q = cbi_mul(one_plus_i(B), one_plus_i(C), order);
  for (int j = order; j >= 1; --j) Q.re[static_cast<std::size_t>(j)] += P2[static_cast<std::size_t>(j - 1)];
  const ComplexBi<T> lhs = cbi_mul(cbi_pow(one_plus_i(A), n - 1, order), Q, order);
  return lhs.im;
}

template <class T>
BasicSigmaExpansion<T> extend_series(const BasicTaylorPoly<T>& f0, int n, int K) {
  if (n < 2) throw InvalidArgument("n must be >= 2");
  if (K < 1) throw InvalidArgument("K must be >= 1");
  require_normalized(f0);
  const int D = f0.degree_cap();
  if (D < 2 * K) {
    throw TruncationError("degree cap D = " + std::to_string(D) + " is too small for K = " + std::to_string(K) +
                          " (need D >= 2K)");
  }
  BasicTaylorPoly<T> f0n = f0;
  for (int d = 0; d <= 2; ++d) f0n[d] = T(0);

  const BasicTaylorPoly<T> f1 = compute_f1(f0n, n);
  const BasicTaylorPoly<T> R = compute_R(f0n, f1, n);
  BasicTaylorPoly<T> one_plus_f1sq = poly_mul(f1, f1);
  one_plus_f1sq[0] += T(1);
  const BasicTaylorPoly<T> weight = poly_div(one_plus_f1sq, R);

  std::vector<BasicTaylorPoly<T>> terms{f0n, f1};
  for (int k = 1; k <= K - 1; ++k) {
    const BasicSigmaExpansion<T> partial(n, terms);
    const BasicTaylorPoly<T> E = pde_lhs_coefficients(partial, k)[static_cast<std::size_t>(k)];
    const T scale = factorial<T>(2 * k + 1) / T(2 * k + n);
    BasicTaylorPoly<T> next = poly_mul(E, weight) * (-scale);
    terms.push_back(next.zeroed_above(valid_degree(D, k + 1)));
  }
  return BasicSigmaExpansion<T>(n, std::move(terms));
}

template <class T>
T linearity_probe(const BasicTaylorPoly<T>& f0, int n, int k, T delta) {
  if (k < 1) throw InvalidArgument("linearity_probe needs k >= 1");
  if (delta == T(0)) throw InvalidArgument("linearity_probe needs delta != 0");
  const BasicSigmaExpansion<T> base = extend_series(f0, n, k);
  const int D = base.D();
  std::vector<BasicTaylorPoly<T>> with_zero = base.terms();
  with_zero.push_back(BasicTaylorPoly<T>(D));
  std::vector<BasicTaylorPoly<T>> with_delta = base.terms();
  with_delta.push_back(BasicTaylorPoly<T>::constant(delta, D));

  const auto ek = static_cast<std::size_t>(k);
  const BasicTaylorPoly<T> e0 = pde_lhs_coefficients(BasicSigmaExpansion<T>(n, with_zero), k)[ek];
  const BasicTaylorPoly<T> ed = pde_lhs_coefficients(BasicSigmaExpansion<T>(n, with_delta), k)[ek];

  const BasicTaylorPoly<T>& f1 = base.f(1);
  const BasicTaylorPoly<T> R = compute_R(base.f(0), f1, n);
  BasicTaylorPoly<T> one_plus_f1sq = poly_mul(f1, f1);
  one_plus_f1sq[0] += T(1);
  const T scale = delta * T(2 * k + n) / factorial<T>(2 * k + 1);
  const BasicTaylorPoly<T> expected = poly_div(R, one_plus_f1sq) * scale;

  T worst(0);
  for (int d = 0; d <= D; ++d) worst = std::max(worst, tabs(T(ed[d] - e0[d] - expected[d])));
  return worst;
}

template <class T>
T pde_lhs_at(const BasicSigmaExpansion<T>& phi, const T& t, const T& sigma) {
  const SigmaPartials<T> p = sigma_eval_with_partials(phi, t, sigma);
  const int n = phi.n();
  const Cplx<T> a = cpow(Cplx<T>{T(1), p.phi_s_over_s}, n - 1);
  Cplx<T> q = Cplx<T>{T(1), p.phi_tt} * Cplx<T>{T(1), p.phi_ss};
  q.re += p.phi_st * p.phi_st;
  T s_pow(1);
  for (int i = 0; i < n - 1; ++i) s_pow *= sigma;
  return (a * q).im * s_pow;
}

ResidualGrid ResidualGrid::box(double sigma_max, int nt, int ns) {
  return ResidualGrid{-sigma_max, sigma_max, 0.0, sigma_max, nt, ns};
}

std::string ResidualGrid::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "t in [" << t_lo << ", " << t_hi << "] x " << nt << ", sigma in [" << sigma_lo << ", " << sigma_hi
     << "] x " << ns;
  return os.str();
}

template <class T>
ResidualReport pde_residual(const BasicSigmaExpansion<T>& phi, const ResidualGrid& grid) {
  ResidualReport r;
  T worst(0);
  for (int i = 0; i < grid.nt; ++i) {
    for (int j = 0; j < grid.ns; ++j) {
      worst = std::max(worst, tabs(pde_lhs_at(phi, T(grid.t_at(i)), T(grid.sigma_at(j)))));
    }
  }
  r.max_pde = static_cast<double>(worst);
  r.samples = grid.samples();
  r.grid = grid.describe();
  return r;
}

double fit_decay_exponent(const std::vector<double>& sigma_max, const std::vector<double>& residual) {
  if (sigma_max.size() != residual.size() || sigma_max.size() < 2) {
    throw InvalidArgument("decay fit needs at least two matching samples");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(sigma_max.size());
  for (std::size_t i = 0; i < sigma_max.size(); ++i) {
    if (!(residual[i] > 0.0)) return std::numeric_limits<double>::infinity();
    const double x = std::log(sigma_max[i]);
    const double y = std::log(residual[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

#define SLAG_INSTANTIATE(T)                                                                              \
  template BasicTaylorPoly<T> compute_f1<T>(const BasicTaylorPoly<T>&, int);                              \
  template BasicComplexSeries<T> stage0_product<T>(const BasicTaylorPoly<T>&, const BasicTaylorPoly<T>&, \
                                                   int);                                                  \
  template BasicTaylorPoly<T> compute_R<T>(const BasicTaylorPoly<T>&, const BasicTaylorPoly<T>&, int);    \
  template std::vector<BasicTaylorPoly<T>> pde_lhs_coefficients<T>(const BasicSigmaExpansion<T>&, int);  \
  template BasicSigmaExpansion<T> extend_series<T>(const BasicTaylorPoly<T>&, int, int);                  \
  template T linearity_probe<T>(const BasicTaylorPoly<T>&, int, int, T);                                  \
  template T pde_lhs_at<T>(const BasicSigmaExpansion<T>&, const T&, const T&);                            \
  template ResidualReport pde_residual<T>(const BasicSigmaExpansion<T>&, const ResidualGrid&);

SLAG_INSTANTIATE(double)
SLAG_INSTANTIATE(Quad)

#undef SLAG_INSTANTIATE

// ---- Gerard-Tahara ------------------------------------------------------------

GTFunction::GTFunction(const TaylorPoly& f0, int n) : n_(n) {
  if (n < 2) throw InvalidArgument("n must be >= 2");
  f0pp_ = poly_derivative(poly_derivative(f0));
  f1_ = compute_f1(f0, n);
  f1p_ = poly_derivative(f1_);
  f1pp_ = poly_derivative(f1p_);
}

double GTFunction::operator()(double t, double sigma, const std::array<double, 6>& Z) const {
  const double f1 = f1_(t);
  const double s2 = sigma * sigma;
  const Cplx<double> a = cpow(Cplx<double>{1.0, f1 + 2.0 * Z[Z00] + Z[Z10]}, n_ - 1);
  const double mixed = f1p_(t) + 2.0 * Z[Z01] + Z[Z11];
  const Cplx<double> b{1.0, f0pp_(t) + 0.5 * (f1pp_(t) + Z[Z02]) * s2};
  const Cplx<double> c{1.0, f1 + 2.0 * Z[Z00] + 4.0 * Z[Z10] + Z[Z20]};
  Cplx<double> q = b * c;
  q.re += s2 * mixed * mixed;
  return (a * q).im;
}

double GTFunction::partial(GTVar var, double t, double sigma, const std::array<double, 6>& Z, double h) const {
  const auto central = [&](double step) {
    std::array<double, 6> zp = Z, zm = Z;
    zp[var] += step;
    zm[var] -= step;
    return ((*this)(t, sigma, zp) - (*this)(t, sigma, zm)) / (2.0 * step);
  };
  const double coarse = central(h);
  const double fine = central(h / 10.0);
  return (100.0 * fine - coarse) / 99.0;
}

GTReport gt_hypotheses_check(const TaylorPoly& f0, int n, const GTOptions& opts) {
  const GTFunction G(f0, n);
  GTReport r;
  r.n = n;
  const std::array<double, 6> zero{};
  for (int i = 0; i < opts.t_points; ++i) {
    const double t = opts.t_points == 1 ? 0.0
                                        : -opts.t_halfwidth + 2.0 * opts.t_halfwidth * i / (opts.t_points - 1);
    r.max_g0 = std::max(r.max_g0, std::abs(G(t, 0.0, zero)));
    for (GTVar v : {Z01, Z11, Z02}) {
      r.max_cond2 = std::max(r.max_cond2, std::abs(G.partial(v, t, 0.0, zero, opts.steps[0])));
    }
  }
  const auto triple = [&](double h) {
    return std::array<double, 3>{G.partial(Z20, 0.0, 0.0, zero, h), G.partial(Z10, 0.0, 0.0, zero, h),
                                 G.partial(Z00, 0.0, 0.0, zero, h)};
  };
  const auto coarse = triple(opts.steps[0]);
  const auto fine = triple(opts.steps[1]);
  r.dG_dZ20 = coarse[0];
  r.dG_dZ10 = coarse[1];
  r.dG_dZ00 = coarse[2];
  for (int i = 0; i < 3; ++i) r.fd_spread = std::max(r.fd_spread, std::abs(coarse[i] - fine[i]));

  r.min_indicial = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= opts.indicial_kmax; ++k) {
    const double kk = k;
    r.min_indicial = std::min(r.min_indicial, std::abs(r.dG_dZ20 * kk * kk + r.dG_dZ10 * kk + r.dG_dZ00));
  }
  r.cond1 = r.max_g0 <= opts.vanish_tol;
  r.cond2 = r.max_cond2 <= opts.vanish_tol;
  r.cond3 = std::abs(r.dG_dZ20) > opts.partial_tol;
  r.cond4 = r.min_indicial > opts.partial_tol;
  r.partials_match = std::abs(r.dG_dZ20 - 1.0) <= opts.partial_tol &&
                     std::abs(r.dG_dZ10 - (n + 3)) <= opts.partial_tol &&
                     std::abs(r.dG_dZ00 - 2.0 * n) <= opts.partial_tol;
  r.pass = r.cond1 && r.cond2 && r.cond3 && r.cond4 && r.partials_match;
  return r;
}

// ---- radius fits ----------------------------------------------------------------

namespace {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 1.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double m = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    syy += y[i] * y[i];
  }
  LineFit f;
  const double den = m * sxx - sx * sx;
  f.slope = (m * sxy - sx * sy) / den;
  f.intercept = (sy - f.slope * sx) / m;
  const double ss_tot = syy - sy * sy / m;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (f.intercept + f.slope * x[i]);
    ss_res += e * e;
  }
  f.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return f;
}

double tail_radius(const TaylorPoly& p, int valid) {
  std::vector<double> xs, ys;
  for (int d = std::max(1, valid / 2); d <= valid; ++d) {
    if (p[d] != 0.0 && std::abs(p[d]) > 1e-300) {
      xs.push_back(d);
      ys.push_back(std::log(std::abs(p[d])));
    }
  }
  if (xs.size() < 2) return RadiusEstimate::kInf;
  return std::exp(-fit_line(xs, ys).slope);
}

}  // namespace

double estimate_t_radius(const SigmaExpansion& phi) {
  const int D = phi.D();
  double rho = tail_radius(poly_derivative(phi.f(0)), D - 1);
  if (phi.K() >= 1) rho = std::min(rho, tail_radius(phi.f(1), D));
  return rho;
}

RadiusEstimate estimate_radius(const SigmaExpansion& phi, double tau) {
  if (phi.K() < 4) throw InvalidArgument("estimate_radius needs K >= 4");
  RadiusEstimate est;
  est.estimated = true;
  est.rho_t = estimate_t_radius(phi);
  std::vector<double> ks, log_scaled, log_raw;
  for (int k = 1; k <= phi.K(); ++k) {
    double norm = 0.0;
    double tp = 1.0;
    for (int d = 0; d <= phi.D(); ++d) {
      norm += std::abs(phi.f(k)[d]) * tp;
      tp *= tau;
    }
    if (norm > 0.0) {
      ks.push_back(k);
      log_raw.push_back(std::log(norm));
      log_scaled.push_back(std::log(norm) - std::lgamma(2.0 * k + 1.0));
    }
  }
  if (ks.size() < 2) {
    // Zero (or a single nonzero) correction term: no finite radius is detectable.
    if (!ks.empty()) est.C = std::exp(log_raw.front());
    return est;
  }
  const LineFit scaled = fit_line(ks, log_scaled);
  est.fit_quality = scaled.r2;
  est.rho_sigma = std::exp(-0.5 * scaled.slope);
  const LineFit raw = fit_line(ks, log_raw);
  const double log_m = -raw.slope;
  double log_c = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ks.size(); ++i) log_c = std::max(log_c, log_raw[i] + ks[i] * log_m);
  est.M = std::exp(log_m);
  est.C = std::exp(log_c) * (1.0 + 1e-12);
  return est;
}

}  // namespace slag
