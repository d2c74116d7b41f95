#include "slag/arc.hpp"

#include <cmath>
#include <numbers>

#include "decimal.hpp"
#include "json.hpp"

namespace slag {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_to_pi(double x) {
  x = std::remainder(x, kTwoPi);
  return x;
}

// Taylor coefficients in h of c*cos(w(s0+h)) + s*sin(w(s0+h)) added into (out).
void add_trig_term(double c, double s, double w, double s0, TaylorPoly& out) {
  const double cw = std::cos(w * s0);
  const double sw = std::sin(w * s0);
  // d-th derivative of cos(w s) at s0 is w^d cos(w s0 + d pi/2); cycle exactly.
  double scale = 1.0;  // w^d / d!
  for (int d = 0; d <= out.degree_cap(); ++d) {
    double cosd = 0.0, sind = 0.0;
    switch (d % 4) {
      case 0: cosd = cw; sind = sw; break;
      case 1: cosd = -sw; sind = cw; break;
      case 2: cosd = -cw; sind = -sw; break;
      default: cosd = sw; sind = -cw; break;
    }
    out[d] += (c * cosd + s * sind) * scale;
    scale *= w / static_cast<double>(d + 1);
  }
}

TaylorPoly trig_local(const std::vector<double>& coeffs, double w, double s0, int cap) {
  TaylorPoly out(cap);
  if (!coeffs.empty()) out[0] += coeffs[0];
  for (std::size_t i = 1; i < coeffs.size(); i += 2) {
    const double k = static_cast<double>((i + 1) / 2);
    const double c = coeffs[i];
    const double s = i + 1 < coeffs.size() ? coeffs[i + 1] : 0.0;
    add_trig_term(c, s, k * w, s0, out);
  }
  return out;
}

TaylorPoly flip_parameter(const TaylorPoly& p) {
  TaylorPoly out = p;
  for (int d = 1; d <= out.degree_cap(); d += 2) out[d] = -out[d];
  return out;
}

}  // namespace

Complex frame_apply_z0(const Frame& f, int n, Complex z0) {
  return std::polar(1.0, n * f.theta) * z0 + f.a;
}

Complex frame_invert_z0(const Frame& f, int n, Complex z0) {
  return std::polar(1.0, -n * f.theta) * (z0 - f.a);
}

ArcSpec ArcSpec::graph(TaylorPoly g) {
  ArcSpec arc;
  arc.kind_ = ArcKind::Graph;
  arc.degree_cap_ = g.degree_cap();
  arc.x_ = std::move(g);
  arc.y_ = TaylorPoly(arc.degree_cap_);
  return arc;
}

ArcSpec ArcSpec::parametric(TaylorPoly x, TaylorPoly y) {
  const int cap = std::max(x.degree_cap(), y.degree_cap());
  ArcSpec arc;
  arc.kind_ = ArcKind::Parametric;
  arc.degree_cap_ = cap;
  arc.x_ = x.with_cap(cap);
  arc.y_ = y.with_cap(cap);
  return arc;
}

ArcSpec ArcSpec::trigonometric(std::vector<double> x_trig, std::vector<double> y_trig, double period,
                               int degree_cap) {
  if (!(period > 0.0)) throw InvalidArgument("closed arc needs a positive period");
  if (x_trig.empty() || y_trig.empty()) throw InvalidArgument("closed arc needs trigonometric coefficients");
  ArcSpec arc;
  arc.kind_ = ArcKind::Parametric;
  arc.closed_ = true;
  arc.period_ = period;
  arc.degree_cap_ = degree_cap;
  arc.domain_ = {0.0, period};
  arc.x_trig_ = std::move(x_trig);
  arc.y_trig_ = std::move(y_trig);
  return arc;
}

ArcSpec ArcSpec::closed_from_hook(LocalExpansionHook hook, double period, int degree_cap) {
  if (!hook) throw InvalidArgument("closed arc hook is empty");
  if (!(period > 0.0)) throw InvalidArgument("closed arc needs a positive period");
  ArcSpec arc;
  arc.kind_ = ArcKind::Parametric;
  arc.closed_ = true;
  arc.period_ = period;
  arc.degree_cap_ = degree_cap;
  arc.domain_ = {0.0, period};
  arc.hook_ = std::move(hook);
  return arc;
}

ArcSpec ArcSpec::with_domain(double lo, double hi) const {
  if (hi < lo) throw InvalidArgument("arc domain must satisfy lo <= hi");
  ArcSpec out = *this;
  out.domain_ = {lo, hi};
  return out;
}

ArcSpec ArcSpec::with_degree_cap(int degree_cap) const {
  if (degree_cap < 2) throw InvalidArgument("arc degree cap must be >= 2");
  ArcSpec out = *this;
  out.degree_cap_ = degree_cap;
  if (!closed_) {
    out.x_ = x_.with_cap(degree_cap);
    out.y_ = y_.with_cap(degree_cap);
  }
  return out;
}

std::pair<TaylorPoly, TaylorPoly> ArcSpec::local_expansion(double s0) const {
  if (kind_ == ArcKind::Graph) {
    TaylorPoly x = TaylorPoly::variable(degree_cap_);
    x[0] = s0;
    return {x, poly_taylor_shift(x_, s0)};
  }
  if (!closed_) return {poly_taylor_shift(x_, s0), poly_taylor_shift(y_, s0)};
  if (hook_) {
    auto [x, y] = hook_(s0, degree_cap_);
    return {x.with_cap(degree_cap_), y.with_cap(degree_cap_)};
  }
  const double w = kTwoPi / period_;
  return {trig_local(x_trig_, w, s0, degree_cap_), trig_local(y_trig_, w, s0, degree_cap_)};
}

Complex ArcSpec::point(double s) const {
  if (kind_ == ArcKind::Graph) return {s, x_(s)};
  if (!closed_) return {x_(s), y_(s)};
  auto [x, y] = local_expansion(s);
  return {x[0], y[0]};
}

Complex ArcSpec::velocity(double s) const {
  if (kind_ == ArcKind::Graph) return {1.0, poly_derivative(x_)(s)};
  if (!closed_) return {poly_derivative(x_)(s), poly_derivative(y_)(s)};
  auto [x, y] = local_expansion(s);
  return {x[1], y[1]};
}

ArcSpec ArcSpec::reversed() const {
  ArcSpec out = *this;
  if (kind_ == ArcKind::Graph) {
    TaylorPoly x(degree_cap_);
    if (degree_cap_ >= 1) x[1] = -1.0;
    out = parametric(x, flip_parameter(x_));
    out.domain_ = {-domain_.second, -domain_.first};
    return out;
  }
  if (!closed_) {
    out.x_ = flip_parameter(x_);
    out.y_ = flip_parameter(y_);
    out.domain_ = {-domain_.second, -domain_.first};
    return out;
  }
  if (hook_) {
    LocalExpansionHook inner = hook_;
    out.hook_ = [inner](double s0, int cap) {
      auto [x, y] = inner(-s0, cap);
      return std::pair{flip_parameter(x), flip_parameter(y)};
    };
    return out;
  }
  for (std::size_t i = 2; i < out.x_trig_.size(); i += 2) out.x_trig_[i] = -out.x_trig_[i];
  for (std::size_t i = 2; i < out.y_trig_.size(); i += 2) out.y_trig_[i] = -out.y_trig_[i];
  return out;
}

void ArcSpec::check_regular(int samples) const {
  const auto [lo, hi] = closed_ ? std::pair{0.0, period_} : domain_;
  const int count = (hi > lo) ? std::max(samples, 2) : 1;
  for (int i = 0; i < count; ++i) {
    const double s = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
    if (std::norm(velocity(s)) <= 1e-20) {
      throw RegularityError("arc is singular (x' = y' = 0) at s = " + detail::format_decimal(s));
    }
  }
}

ArcSpec load_arc(std::string_view document) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(document);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("malformed arc document: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw SchemaError("arc document needs a string field 'kind'");
  }
  const std::string kind = j.at("kind").get<std::string>();
  if (j.contains("degree_cap") && !j.at("degree_cap").is_number_integer()) {
    throw SchemaError("degree_cap must be an integer");
  }
  const int cap = j.contains("degree_cap") ? j.at("degree_cap").get<int>() : 24;
  if (cap < 2) throw SchemaError("degree_cap must be >= 2");

  ArcSpec arc;
  if (kind == "graph") {
    arc = ArcSpec::graph(TaylorPoly(detail::decimal_array(j, "g_coeffs")).with_cap(cap));
  } else if (kind == "parametric") {
    const bool closed = j.value("closed", false);
    auto xs = detail::decimal_array(j, "x_coeffs");
    auto ys = detail::decimal_array(j, "y_coeffs");
    if (xs.empty() || ys.empty()) throw SchemaError("coefficient arrays must be non-empty");
    if (closed) {
      arc = ArcSpec::trigonometric(std::move(xs), std::move(ys), detail::number_field(j, "period"), cap);
    } else {
      arc = ArcSpec::parametric(TaylorPoly(std::move(xs)).with_cap(cap), TaylorPoly(std::move(ys)).with_cap(cap));
    }
  } else {
    throw SchemaError("unknown arc kind '" + kind + "'");
  }
  if (j.contains("domain") && !arc.closed()) {
    const auto d = detail::decimal_array(j, "domain");
    if (d.size() != 2) throw SchemaError("domain must have two entries");
    arc = arc.with_domain(d[0], d[1]);
  }
  arc.check_regular();
  return arc;
}

std::string dump_arc(const ArcSpec& arc) {
  nlohmann::json j;
  j["degree_cap"] = arc.degree_cap();
  if (arc.kind() == ArcKind::Graph) {
    j["kind"] = "graph";
    j["g_coeffs"] = detail::decimal_json(arc.g().coeffs());
  } else if (!arc.closed()) {
    j["kind"] = "parametric";
    j["closed"] = false;
    j["x_coeffs"] = detail::decimal_json(arc.x().coeffs());
    j["y_coeffs"] = detail::decimal_json(arc.y().coeffs());
  } else if (arc.is_trigonometric()) {
    j["kind"] = "parametric";
    j["closed"] = true;
    j["period"] = detail::format_decimal(arc.period());
    j["x_coeffs"] = detail::decimal_json(arc.x_trig());
    j["y_coeffs"] = detail::decimal_json(arc.y_trig());
  } else {
    throw SchemaError("arcs defined by a local expansion hook cannot be serialized");
  }
  if (!arc.closed()) {
    j["domain"] = detail::decimal_json({arc.domain().first, arc.domain().second});
  }
  return j.dump(2);
}

NormalizedArc normalize_at(const ArcSpec& arc, double s0, int n) {
  if (n < 2) throw InvalidArgument("n must be >= 2");
  auto [X, Y] = arc.local_expansion(s0);
  const int D = X.degree_cap();
  if (D < 2) throw TruncationError("arc degree cap must be >= 2");
  const Complex z0{X[0], Y[0]};
  const Complex v{X[1], Y[1]};
  const double speed = std::abs(v);
  if (!(speed > 1e-12)) throw RegularityError("tangent undefined at s0 = " + detail::format_decimal(s0));

  const double alpha = std::arg(v);
  const double period = kTwoPi / n;
  double theta = std::fmod(-alpha / n, period);
  if (theta < 0.0) theta += period;
  if (theta >= period) theta -= period;
  const Complex rot = std::polar(1.0, n * theta);

  TaylorPoly xr(D), yr(D);
  for (int d = 1; d <= D; ++d) {
    const Complex c = rot * Complex{X[d], Y[d]};
    xr[d] = c.real();
    yr[d] = c.imag();
  }
  yr[1] = 0.0;
  TaylorPoly gt = poly_compose(yr, poly_revert(xr));
  gt[0] = 0.0;
  gt[1] = 0.0;
  if (!std::all_of(gt.coeffs().begin(), gt.coeffs().end(), [](double c) { return std::isfinite(c); })) {
    throw NormalizationError("local graph re-expansion failed at s0 = " + detail::format_decimal(s0));
  }

  NormalizedArc out;
  out.f0 = poly_antiderivative(gt);
  out.frame = Frame{-rot * z0, theta};
  out.base_param = s0;
  out.speed = speed;
  out.n = n;
  return out;
}

RotationNumber rotation_number(const ArcSpec& arc, int samples) {
  if (!arc.closed()) throw NotApplicableError("rotation number is defined for closed arcs only");
  if (samples < 8) throw ResolutionError("rotation number needs at least 8 samples");
  const double T = arc.period();
  double prev = std::arg(arc.velocity(0.0));
  double total = 0.0;
  for (int i = 1; i <= samples; ++i) {
    const double s = T * i / samples;
    const Complex v = arc.velocity(s);
    if (std::norm(v) <= 1e-20) throw RegularityError("arc is singular at s = " + detail::format_decimal(s));
    const double cur = std::arg(v);
    const double step = wrap_to_pi(cur - prev);
    if (std::abs(step) > std::numbers::pi / 2) {
      throw ResolutionError("tangent angle jumps by more than pi/2 between samples; refine the grid");
    }
    total += step;
    prev = cur;
  }
  const double turns = total / kTwoPi;
  const double rounded = std::round(turns);
  if (std::abs(turns - rounded) > 1e-6) throw ResolutionError("tangent winding is not an integer");
  RotationNumber out;
  out.value = static_cast<int>(rounded);
  if (std::abs(out.value) != 1) {
    out.warning = "rotation number " + std::to_string(out.value) +
                  " != +-1: the closed arc is not embedded";
  }
  return out;
}

std::vector<double> unwrapped_tangent_angles(const ArcSpec& arc, std::span<const double> params,
                                             int substeps) {
  std::vector<double> out;
  if (params.empty()) return out;
  double prev = std::arg(arc.velocity(params.front()));
  double acc = prev;
  out.push_back(acc);
  for (std::size_t i = 1; i < params.size(); ++i) {
    const double a = params[i - 1];
    const double b = params[i];
    for (int k = 1; k <= substeps; ++k) {
      const double cur = std::arg(arc.velocity(a + (b - a) * k / substeps));
      const double step = wrap_to_pi(cur - prev);
      if (std::abs(step) > std::numbers::pi / 2) {
        throw ResolutionError("tangent angle unwrap is ambiguous; increase substeps");
      }
      acc += step;
      prev = cur;
    }
    out.push_back(acc);
  }
  return out;
}

GateResult existence_gate(const ArcSpec& arc, int n) {
  if (n < 2) throw InvalidArgument("n must be >= 2");
  if (!arc.closed()) return {};
  const int rot = rotation_number(arc).value;
  const int shift = ((2 * rot) % n + n) % n;
  return {shift == 0, shift};
}

}  // namespace slag
