#pragma once

// Truncated power series in one variable t, complex pairs of them, and the
// even-in-sigma expansion phi(t, sigma) = sum_k f_k(t) sigma^(2k) / (2k)!.
//
// All arithmetic is exact modulo t^(D+1): coefficient d of a result depends
// only on coefficients 0..d of the operands. Values are immutable once built;
// every operation returns a fresh value.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "slag/errors.hpp"

namespace slag {

template <class T>
class BasicTaylorPoly {
 public:
  using value_type = T;

  /// The zero series with degree cap 0.
  BasicTaylorPoly() : coeffs_(1, T(0)) {}

  /// The zero series with degree cap D.
  explicit BasicTaylorPoly(int degree_cap) : coeffs_(checked_size(degree_cap), T(0)) {}

  /// Takes ownership of c_0..c_D; D = coeffs.size() - 1.
  explicit BasicTaylorPoly(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw ShapeError("TaylorPoly needs at least one coefficient");
  }

  static BasicTaylorPoly constant(T c, int degree_cap) {
    BasicTaylorPoly p(degree_cap);
    p.coeffs_[0] = c;
    return p;
  }

  /// The series t (or the constant 0 when D = 0).
  static BasicTaylorPoly variable(int degree_cap) {
    BasicTaylorPoly p(degree_cap);
    if (degree_cap >= 1) p.coeffs_[1] = T(1);
    return p;
  }

  int degree_cap() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<T>& coeffs() const noexcept { return coeffs_; }
  std::vector<T>& mutable_coeffs() noexcept { return coeffs_; }

  const T& operator[](int d) const { return coeffs_[static_cast<std::size_t>(d)]; }
  T& operator[](int d) { return coeffs_[static_cast<std::size_t>(d)]; }

  /// Horner evaluation of the truncated polynomial.
  T operator()(const T& t) const {
    T acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

  /// Value, first and second derivative at t in one Horner pass.
  void eval3(const T& t, T& v, T& d1, T& d2) const {
    v = T(0);
    d1 = T(0);
    d2 = T(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      d2 = d2 * t + d1 * T(2);
      d1 = d1 * t + v;
      v = v * t + *it;
    }
  }

  /// Same series with a different cap (pads with zeros or truncates).
  BasicTaylorPoly with_cap(int degree_cap) const {
    std::vector<T> c(checked_size(degree_cap), T(0));
    std::copy_n(coeffs_.begin(), std::min(c.size(), coeffs_.size()), c.begin());
    return BasicTaylorPoly(std::move(c));
  }

  /// Zeroes every coefficient above `degree`.
  BasicTaylorPoly zeroed_above(int degree) const {
    BasicTaylorPoly out = *this;
    for (int d = std::max(degree + 1, 0); d <= degree_cap(); ++d) out[d] = T(0);
    return out;
  }

  template <class U>
  BasicTaylorPoly<U> cast() const {
    std::vector<U> c;
    c.reserve(coeffs_.size());
    for (const T& x : coeffs_) c.push_back(static_cast<U>(x));
    return BasicTaylorPoly<U>(std::move(c));
  }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const T& x) { return x == T(0); });
  }

  BasicTaylorPoly& operator+=(const BasicTaylorPoly& o) {
    require_same_cap(*this, o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  BasicTaylorPoly& operator-=(const BasicTaylorPoly& o) {
    require_same_cap(*this, o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  BasicTaylorPoly& operator*=(const T& s) {
    for (T& x : coeffs_) x *= s;
    return *this;
  }

  friend BasicTaylorPoly operator+(BasicTaylorPoly a, const BasicTaylorPoly& b) { return a += b; }
  friend BasicTaylorPoly operator-(BasicTaylorPoly a, const BasicTaylorPoly& b) { return a -= b; }
  friend BasicTaylorPoly operator-(BasicTaylorPoly a) { return a *= T(-1); }
  friend BasicTaylorPoly operator*(BasicTaylorPoly a, const T& s) { return a *= s; }
  friend BasicTaylorPoly operator*(const T& s, BasicTaylorPoly a) { return a *= s; }
  friend BasicTaylorPoly operator*(const BasicTaylorPoly& a, const BasicTaylorPoly& b) {
    return poly_mul(a, b);
  }
  friend bool operator==(const BasicTaylorPoly& a, const BasicTaylorPoly& b) {
    return a.coeffs_ == b.coeffs_;
  }

  static void require_same_cap(const BasicTaylorPoly& a, const BasicTaylorPoly& b) {
    if (a.degree_cap() != b.degree_cap()) {
      throw ShapeError("degree cap mismatch: " + std::to_string(a.degree_cap()) + " vs " +
                       std::to_string(b.degree_cap()));
    }
  }

 private:
  static std::size_t checked_size(int degree_cap) {
    if (degree_cap < 0) throw ShapeError("degree cap must be >= 0");
    return static_cast<std::size_t>(degree_cap) + 1;
  }

  std::vector<T> coeffs_;
};

using TaylorPoly = BasicTaylorPoly<double>;

/// Cauchy product truncated at the common degree cap.
template <class T>
BasicTaylorPoly<T> poly_mul(const BasicTaylorPoly<T>& a, const BasicTaylorPoly<T>& b) {
  BasicTaylorPoly<T>::require_same_cap(a, b);
  const int D = a.degree_cap();
  BasicTaylorPoly<T> out(D);
  for (int i = 0; i <= D; ++i) {
    if (a[i] == T(0)) continue;
    for (int j = 0; j + i <= D; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

template <class T>
BasicTaylorPoly<T> poly_reciprocal(const BasicTaylorPoly<T>& a) {
  if (a[0] == T(0)) throw SingularDivisionError("reciprocal of a series with zero constant term");
  const int D = a.degree_cap();
  BasicTaylorPoly<T> out(D);
  const T inv0 = T(1) / a[0];
  out[0] = inv0;
  for (int d = 1; d <= D; ++d) {
    T acc(0);
    for (int j = 1; j <= d; ++j) acc += a[j] * out[d - j];
    out[d] = -acc * inv0;
  }
  return out;
}

/// a / b, b(0) != 0.
template <class T>
BasicTaylorPoly<T> poly_div(const BasicTaylorPoly<T>& a, const BasicTaylorPoly<T>& b) {
  return poly_mul(a, poly_reciprocal(b));
}

/// d/dt; the cap is kept and the top coefficient becomes 0.
template <class T>
BasicTaylorPoly<T> poly_derivative(const BasicTaylorPoly<T>& a) {
  const int D = a.degree_cap();
  BasicTaylorPoly<T> out(D);
  for (int d = 0; d < D; ++d) out[d] = a[d + 1] * T(d + 1);
  return out;
}

/// Antiderivative with zero constant term; a_D is dropped by truncation.
template <class T>
BasicTaylorPoly<T> poly_antiderivative(const BasicTaylorPoly<T>& a) {
  const int D = a.degree_cap();
  BasicTaylorPoly<T> out(D);
  for (int d = 0; d < D; ++d) out[d + 1] = a[d] / T(d + 1);
  return out;
}

/// outer(inner(t)) for inner(0) = 0, by Horner's scheme on truncated products.
template <class T>
BasicTaylorPoly<T> poly_compose(const BasicTaylorPoly<T>& outer, const BasicTaylorPoly<T>& inner) {
  if (inner[0] != T(0)) throw CompositionDomainError("inner series must vanish at 0");
  const int D = inner.degree_cap();
  BasicTaylorPoly<T> outer_d = outer.with_cap(D);
  BasicTaylorPoly<T> acc = BasicTaylorPoly<T>::constant(outer_d[D], D);
  for (int d = D - 1; d >= 0; --d) {
    acc = poly_mul(acc, inner);
    acc[0] += outer_d[d];
  }
  return acc;
}

/// Compositional inverse of a with a(0) = 0, a'(0) != 0.
template <class T>
BasicTaylorPoly<T> poly_revert(const BasicTaylorPoly<T>& a) {
  if (a[0] != T(0)) throw CompositionDomainError("series reversion needs a(0) = 0");
  const int D = a.degree_cap();
  if (D < 1 || a[1] == T(0)) throw SingularDivisionError("series reversion needs a'(0) != 0");
  // Fixed point h = (t - (a(h) - a_1 h)) / a_1; each sweep fixes one more order.
  BasicTaylorPoly<T> nonlinear = a;
  nonlinear[1] = T(0);
  const T inv1 = T(1) / a[1];
  BasicTaylorPoly<T> h = BasicTaylorPoly<T>::variable(D) * inv1;
  for (int it = 1; it < D; ++it) {
    BasicTaylorPoly<T> next = BasicTaylorPoly<T>::variable(D) - poly_compose(nonlinear, h);
    h = next * inv1;
  }
  return h;
}

/// Re-expands the polynomial a(x) about x0: returns b with b(h) = a(x0 + h).
template <class T>
BasicTaylorPoly<T> poly_taylor_shift(const BasicTaylorPoly<T>& a, const T& x0) {
  std::vector<T> c = a.coeffs();
  const int D = a.degree_cap();
  // Repeated synthetic division.
  for (int i = 0; i < D; ++i) {
    for (int j = D - 1; j >= i; --j) c[static_cast<std::size_t>(j)] += x0 * c[static_cast<std::size_t>(j) + 1];
  }
  return BasicTaylorPoly<T>(std::move(c));
}

enum class Kernel { Arctan, Tan };

/// Taylor expansion of kernel(inner(t)), inner(0) = 0, obtained by propagating
/// the kernel's defining ODE coefficient by coefficient:
///   arctan: y' = inner' / (1 + inner^2)
///   tan:    y' = (1 + y^2) inner'
template <class T>
BasicTaylorPoly<T> analytic_compose(Kernel kernel, const BasicTaylorPoly<T>& inner) {
  if (inner[0] != T(0)) throw CompositionDomainError("analytic_compose needs inner(0) = 0");
  const int D = inner.degree_cap();
  const BasicTaylorPoly<T> dinner = poly_derivative(inner);
  if (kernel == Kernel::Arctan) {
    BasicTaylorPoly<T> denom = poly_mul(inner, inner);
    denom[0] += T(1);
    return poly_antiderivative(poly_div(dinner, denom));
  }
  // y_{d+1} = 1/(d+1) * sum_j [(1 + y^2)]_j * inner'_{d-j}; [(1+y^2)]_j needs y_0..y_j.
  BasicTaylorPoly<T> y(D);
  std::vector<T> one_plus_y2(static_cast<std::size_t>(D) + 1, T(0));
  for (int d = 0; d < D; ++d) {
    T sq(0);
    for (int i = 0; i <= d; ++i) sq += y[i] * y[d - i];
    one_plus_y2[static_cast<std::size_t>(d)] = sq + (d == 0 ? T(1) : T(0));
    T acc(0);
    for (int j = 0; j <= d; ++j) acc += one_plus_y2[static_cast<std::size_t>(j)] * dinner[d - j];
    y[d + 1] = acc / T(d + 1);
  }
  return y;
}

/// Pair of real series (re, im) sharing a degree cap.
template <class T>
struct BasicComplexSeries {
  BasicTaylorPoly<T> re;
  BasicTaylorPoly<T> im;

  BasicComplexSeries() = default;
  explicit BasicComplexSeries(int degree_cap) : re(degree_cap), im(degree_cap) {}
  BasicComplexSeries(BasicTaylorPoly<T> r, BasicTaylorPoly<T> i) : re(std::move(r)), im(std::move(i)) {
    BasicTaylorPoly<T>::require_same_cap(re, im);
  }

  static BasicComplexSeries one(int degree_cap) {
    return {BasicTaylorPoly<T>::constant(T(1), degree_cap), BasicTaylorPoly<T>(degree_cap)};
  }

  /// 1 + i * x
  static BasicComplexSeries one_plus_i(const BasicTaylorPoly<T>& x) {
    return {BasicTaylorPoly<T>::constant(T(1), x.degree_cap()), x};
  }

  int degree_cap() const noexcept { return re.degree_cap(); }

  friend BasicComplexSeries operator+(const BasicComplexSeries& a, const BasicComplexSeries& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend BasicComplexSeries operator-(const BasicComplexSeries& a, const BasicComplexSeries& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend BasicComplexSeries operator*(const BasicComplexSeries& a, const BasicComplexSeries& b) {
    return {poly_mul(a.re, b.re) - poly_mul(a.im, b.im), poly_mul(a.re, b.im) + poly_mul(a.im, b.re)};
  }
};

using ComplexSeries = BasicComplexSeries<double>;

/// z^m by repeated squaring, m >= 0.
template <class T>
BasicComplexSeries<T> complex_int_pow(const BasicComplexSeries<T>& z, int m) {
  if (m < 0) throw ShapeError("complex_int_pow needs m >= 0");
  BasicComplexSeries<T> result = BasicComplexSeries<T>::one(z.degree_cap());
  BasicComplexSeries<T> base = z;
  while (m > 0) {
    if (m & 1) result = result * base;
    m >>= 1;
    if (m > 0) base = base * base;
  }
  return result;
}

/// (2k)! style factorials as T; exact in double up to 22!.
template <class T>
T factorial(int k) {
  T f(1);
  for (int i = 2; i <= k; ++i) f *= T(i);
  return f;
}

/// phi(t, sigma) = sum_{k=0}^{K} f_k(t) sigma^(2k) / (2k)!, stored as [f_0 .. f_K].
template <class T>
class BasicSigmaExpansion {
 public:
  BasicSigmaExpansion() = default;
  BasicSigmaExpansion(int n, std::vector<BasicTaylorPoly<T>> terms) : n_(n), terms_(std::move(terms)) {
    if (n_ < 2) throw ShapeError("SigmaExpansion needs n >= 2");
    if (terms_.empty()) throw ShapeError("SigmaExpansion needs at least f_0");
    for (const auto& f : terms_) BasicTaylorPoly<T>::require_same_cap(f, terms_.front());
  }

  int n() const noexcept { return n_; }
  int K() const noexcept { return static_cast<int>(terms_.size()) - 1; }
  int D() const noexcept { return terms_.front().degree_cap(); }
  const std::vector<BasicTaylorPoly<T>>& terms() const noexcept { return terms_; }
  const BasicTaylorPoly<T>& f(int k) const { return terms_[static_cast<std::size_t>(k)]; }

  bool is_zero() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& p) { return p.is_zero(); });
  }

  template <class U>
  BasicSigmaExpansion<U> cast() const {
    std::vector<BasicTaylorPoly<U>> t;
    t.reserve(terms_.size());
    for (const auto& p : terms_) t.push_back(p.template cast<U>());
    return BasicSigmaExpansion<U>(n_, std::move(t));
  }

  friend bool operator==(const BasicSigmaExpansion& a, const BasicSigmaExpansion& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

 private:
  int n_ = 2;
  std::vector<BasicTaylorPoly<T>> terms_;
};

using SigmaExpansion = BasicSigmaExpansion<double>;

template <class T>
struct SigmaPartials {
  T phi{0};
  T phi_t{0};
  T phi_s{0};
  T phi_tt{0};
  T phi_st{0};
  T phi_ss{0};
  T phi_s_over_s{0};  ///< phi_sigma / sigma, regular at sigma = 0
};

/// Term-wise partials of the truncated expansion at (t, sigma).
template <class T>
SigmaPartials<T> sigma_eval_with_partials(const BasicSigmaExpansion<T>& phi, const T& t, const T& sigma) {
  SigmaPartials<T> out;
  const T s2 = sigma * sigma;
  // pow_even = sigma^(2k-2) as k advances; factorials tracked incrementally.
  T pow_even(1);           // sigma^(2k-2) for k >= 1, sigma^0 for k = 0
  T fact_2k(1);            // (2k)!
  T fact_2k_minus_1(1);    // (2k-1)!
  T fact_2k_minus_2(1);    // (2k-2)!
  for (int k = 0; k <= phi.K(); ++k) {
    T v, d1, d2;
    phi.f(k).eval3(t, v, d1, d2);
    if (k == 0) {
      out.phi += v;
      out.phi_t += d1;
      out.phi_tt += d2;
      continue;
    }
    fact_2k_minus_2 = fact_2k;                       // (2(k-1))!
    fact_2k_minus_1 = fact_2k_minus_2 * T(2 * k - 1);
    fact_2k = fact_2k_minus_1 * T(2 * k);
    if (k > 1) pow_even *= s2;
    const T pow_2k = pow_even * s2;  // sigma^(2k)
    out.phi += v * pow_2k / fact_2k;
    out.phi_t += d1 * pow_2k / fact_2k;
    out.phi_tt += d2 * pow_2k / fact_2k;
    out.phi_s_over_s += v * pow_even / fact_2k_minus_1;
    out.phi_ss += v * pow_even / fact_2k_minus_2;
    out.phi_st += d1 * pow_even * sigma / fact_2k_minus_1;
  }
  out.phi_s = out.phi_s_over_s * sigma;
  return out;
}

}  // namespace slag
