// slag: build and verify SO(n)-invariant special Lagrangian extensions of analytic arcs.

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "slag/errors.hpp"
#include "slag/io.hpp"
#include "slag/oracles.hpp"

using nlohmann::json;
using namespace slag;

namespace {

std::string dec(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

/// Machine-readable run report: config echo, checks and results.
class Report {
 public:
  explicit Report(std::string command) { doc_["command"] = std::move(command); }

  json& config() { return doc_["config"]; }
  json& results() { return doc_["results"]; }

  void check(const std::string& name, double value, double tolerance) {
    const bool ok = value <= tolerance;
    doc_["checks"].push_back({{"name", name}, {"value", dec(value)}, {"tolerance", dec(tolerance)}, {"pass", ok}});
    pass_ = pass_ && ok;
  }
  void check_flag(const std::string& name, bool ok) {
    doc_["checks"].push_back({{"name", name}, {"pass", ok}});
    pass_ = pass_ && ok;
  }
  bool pass() const { return pass_; }

  void emit(const std::string& path) {
    doc_["pass"] = pass_;
    if (!doc_.contains("checks")) doc_["checks"] = json::array();
    const std::string text = doc_.dump(2) + "\n";
    if (path.empty()) {
      std::cout << text;
    } else {
      write_file_atomic(path, text);
    }
  }

 private:
  json doc_;
  bool pass_ = true;
};

ArcSpec load_arc_arg(const std::string& arg) {
  if (arg == "builtin:circle") return unit_circle_arc();
  if (arg == "builtin:parabola") {
    TaylorPoly g(24);
    g[2] = 1.0;
    return ArcSpec::graph(g);
  }
  if (arg == "builtin:line") return ArcSpec::graph(TaylorPoly(24));
  return load_arc(read_file(arg));
}

json radius_json(const RadiusEstimate& r) {
  return {{"C", dec(r.C)},
          {"M", dec(r.M)},
          {"rho_sigma", dec(r.rho_sigma)},
          {"rho_t", dec(r.rho_t)},
          {"fit_quality", dec(r.fit_quality)},
          {"estimated", r.estimated}};
}

json residual_json(const ResidualReport& r) {
  return {{"max_pde", dec(r.max_pde)},
          {"max_omega", dec(r.max_omega)},
          {"max_upsilon", dec(r.max_upsilon)},
          {"max_momentum", dec(r.max_momentum)},
          {"samples", r.samples},
          {"grid", r.grid}};
}

json oracle_json(const OracleResult& r) {
  json j = {{"name", r.name},
            {"max_residual", dec(r.max_residual)},
            {"samples", r.samples},
            {"tolerance", dec(r.tolerance)},
            {"pass", r.pass}};
  for (const auto& [k, v] : r.details) j["details"][k] = dec(v);
  return j;
}

void echo_config(Report& rep, const RunConfig& cfg) {
  rep.config() = {{"n", cfg.n},
                  {"K", cfg.K},
                  {"D", cfg.D},
                  {"sigma_max", dec(cfg.sigma_max)},
                  {"branch", cfg.branch},
                  {"spacing", dec(cfg.spacing)},
                  {"seed", cfg.seed},
                  {"precision", to_string(cfg.precision)}};
}

/// PDE residual of the series re-derived from f0 in the requested precision.
double pde_residual_in(Precision p, const Chart& c, const ResidualGrid& grid) {
  if (p == Precision::Extended) {
    const BasicSigmaExpansion<Quad> q = extend_series(c.phi.f(0).cast<Quad>(), c.n, c.phi.K());
    return pde_residual(q, grid).max_pde;
  }
  return pde_residual(c.phi, grid).max_pde;
}

/// max |Im coefficient| of the stage-0 product relative to max(1, max |Re coefficient|).
double stage0_residual(const Chart& c) {
  const TaylorPoly f1 = compute_f1(c.phi.f(0), c.n);
  const auto prod = stage0_product(c.phi.f(0), f1, c.n);
  double worst = 0.0, scale = 1.0;
  for (double x : prod.im.coeffs()) worst = std::max(worst, std::abs(x));
  for (double x : prod.re.coeffs()) scale = std::max(scale, std::abs(x));
  return worst / scale;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Construct and verify SO(n)-invariant special Lagrangian extensions of analytic arcs"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string arc_path, chart_path, report_path, mode = "reduced";
  double s0 = 0.0, c_level = 1.0;
  int m = 3, count = 200, trials = 50, nt = 21, ns = 11, nu = 8;
  std::optional<double> spacing;
  bool D_given = false;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "SO(n) symmetry order (n >= 2)");
    sub->add_option("--K", cfg.K, "sigma truncation order");
    sub->add_option_function<int>("--D", [&](int d) { cfg.D = d; D_given = true; }, "t degree cap");
    sub->add_option("--sigma-max", cfg.sigma_max, "largest sigma sampled");
    sub->add_option("--branch", cfg.branch, "branch index in [0, n)");
    sub->add_option("--seed", cfg.seed, "sampling seed");
    sub->add_option("--out", cfg.out, "output file");
    sub->add_option("--report", report_path, "write the JSON report here instead of stdout");
  };

  auto* extend = app.add_subcommand("extend", "normalize an arc and extend it to a chart or an atlas");
  common(extend);
  extend->add_option("--arc", arc_path, "arc JSON file or builtin:{circle,parabola,line}")->required();
  extend->add_option("--s0", s0, "arc parameter of the base point");
  extend->add_option("--spacing", spacing, "build an atlas with this chart spacing");

  auto* residual = app.add_subcommand("residual", "PDE / omega / Upsilon / momentum report for charts");
  common(residual);
  residual->add_option("--chart", chart_path, "chart or atlas JSON")->required();

  auto* gt = app.add_subcommand("gt-check", "check the Gerard-Tahara hypotheses at a base point");
  common(gt);
  gt->add_option("--arc", arc_path, "arc JSON file or builtin:{circle,parabola,line}")->required();
  gt->add_option("--s0", s0, "arc parameter of the base point");

  auto* oracle = app.add_subcommand("oracle", "closed-form oracles");
  oracle->require_subcommand(1);
  auto* hl = oracle->add_subcommand("harvey-lawson", "Harvey-Lawson cones Im(zeta^m) = c");
  common(hl);
  hl->add_option("--m", m, "ambient complex dimension");
  hl->add_option("--c", c_level, "level c");
  hl->add_option("--count", count, "samples");
  auto* circle = oracle->add_subcommand("circle", "implicit locus of the extended unit circle");
  common(circle);
  circle->add_option("--count", count, "chart points");
  auto* planes = oracle->add_subcommand("planes", "invariant special Lagrangian planes");
  common(planes);
  planes->add_option("--trials", trials, "random trials");
  auto* branches = oracle->add_subcommand("branches", "separation of the n branches");
  common(branches);
  branches->add_option("--arc", arc_path, "arc JSON file or builtin:{circle,parabola,line}")->required();
  branches->add_option("--s0", s0, "arc parameter of the base point");

  auto* atlas = app.add_subcommand("atlas", "multi-chart atlas with overlap report");
  common(atlas);
  atlas->add_option("--arc", arc_path, "arc JSON file or builtin:{circle,parabola,line}")->required();
  atlas->add_option("--spacing", cfg.spacing, "chart spacing in the arc parameter");

  auto* mesh = app.add_subcommand("mesh", "export charts as an OBJ mesh or a CSV point cloud");
  common(mesh);
  mesh->add_option("--chart", chart_path, "chart or atlas JSON")->required();
  mesh->add_option("--mode", mode, "reduced | embedded");
  mesh->add_option("--nt", nt, "t samples");
  mesh->add_option("--ns", ns, "sigma samples");
  mesh->add_option("--nu", nu, "sphere samples (embedded mode)");

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.precision = precision_from_env();
    if (spacing) cfg.spacing = *spacing;

    if (extend->parsed() || atlas->parsed()) {
      ArcSpec arc = load_arc_arg(arc_path);
      if (D_given) arc = arc.with_degree_cap(cfg.D);
      cfg.D = arc.degree_cap();
      cfg.validate();
      const bool multi = atlas->parsed() || spacing.has_value();
      Report rep(extend->parsed() ? "extend" : "atlas");
      echo_config(rep, cfg);
      std::vector<Chart> charts;
      if (multi) {
        charts = build_atlas(arc, cfg.n, cfg.branch, cfg.spacing, cfg.K);
      } else {
        if (!(existence_gate(arc, cfg.n).ok)) {
          rep.results()["warning"] = "closed arc is obstructed for this n; the chart is local only";
        }
        charts.push_back(make_chart(arc, s0, cfg.n, cfg.branch, cfg.K));
      }
      const ResidualGrid grid = ResidualGrid::box(cfg.sigma_max);
      double worst_pde = 0.0, worst_stage0 = 0.0, worst_overlap = 0.0;
      for (const Chart& c : charts) {
        worst_pde = std::max(worst_pde, pde_residual_in(cfg.precision, c, grid));
        worst_stage0 = std::max(worst_stage0, stage0_residual(c));
        json cj = {{"center", dec(c.center)}, {"branch", c.branch}, {"radius", radius_json(c.radius)}};
        rep.results()["charts"].push_back(cj);
      }
      const std::size_t pairs = charts.size() < 2 ? 0 : (arc.closed() ? charts.size() : charts.size() - 1);
      for (std::size_t i = 0; i < pairs; ++i) {
        worst_overlap = std::max(worst_overlap,
                                 overlap_agreement(charts[i], charts[(i + 1) % charts.size()], cfg.sigma_max));
      }
      rep.results()["max_pde"] = dec(worst_pde);
      rep.results()["max_overlap"] = dec(worst_overlap);
      rep.check("stage0_identity_relative", worst_stage0, 1e-13);
      if (atlas->parsed()) rep.check("overlap_agreement", worst_overlap, 1e-6);
      if (!cfg.out.empty()) {
        write_file_atomic(cfg.out, multi ? serialize_atlas(charts) : serialize_chart(charts.front()));
        rep.results()["written"] = cfg.out;
      }
      rep.emit(report_path);
      return rep.pass() ? 0 : 1;
    }

    if (residual->parsed()) {
      const std::vector<Chart> charts = deserialize_atlas(read_file(chart_path));
      cfg.n = charts.front().n;
      cfg.K = charts.front().phi.K();
      cfg.D = charts.front().phi.D();
      cfg.branch = charts.front().branch;
      cfg.validate();
      Report rep("residual");
      echo_config(rep, cfg);
      ChartResidualOptions opts;
      opts.sigma_max = cfg.sigma_max;
      opts.t_halfwidth = cfg.sigma_max;
      ResidualReport worst;
      for (const Chart& c : charts) {
        ResidualReport r = chart_residual(c, opts);
        r.max_pde = pde_residual_in(cfg.precision, c, ResidualGrid::box(cfg.sigma_max, opts.nt, opts.ns));
        rep.results()["charts"].push_back(residual_json(r));
        worst.max_pde = std::max(worst.max_pde, r.max_pde);
        worst.max_omega = std::max(worst.max_omega, r.max_omega);
        worst.max_upsilon = std::max(worst.max_upsilon, r.max_upsilon);
        worst.max_momentum = std::max(worst.max_momentum, r.max_momentum);
        worst.samples += r.samples;
        worst.grid = r.grid;
      }
      rep.results()["worst"] = residual_json(worst);
      rep.check("momentum", worst.max_momentum, 1e-14);
      rep.emit(report_path);
      return rep.pass() ? 0 : 1;
    }

    if (gt->parsed()) {
      const ArcSpec arc = load_arc_arg(arc_path);
      cfg.D = arc.degree_cap();
      Report rep("gt-check");
      echo_config(rep, cfg);
      const GTReport g = gt_hypotheses_check(normalize_at(arc, s0, cfg.n).f0, cfg.n);
      rep.results() = {{"dG_dZ20", dec(g.dG_dZ20)},       {"dG_dZ10", dec(g.dG_dZ10)},
                       {"dG_dZ00", dec(g.dG_dZ00)},       {"max_G0", dec(g.max_g0)},
                       {"max_cond2", dec(g.max_cond2)},   {"min_indicial", dec(g.min_indicial)},
                       {"fd_spread", dec(g.fd_spread)}};
      rep.check_flag("condition_1", g.cond1);
      rep.check_flag("condition_2", g.cond2);
      rep.check_flag("condition_3", g.cond3);
      rep.check_flag("condition_4", g.cond4);
      rep.check_flag("partials_1_n+3_2n", g.partials_match);
      rep.emit(report_path);
      return rep.pass() ? 0 : 1;
    }

    if (oracle->parsed()) {
      OracleResult r;
      Report rep("oracle");
      if (hl->parsed()) {
        r = harvey_lawson_sample(m, c_level, count);
        rep.config() = {{"m", m}, {"c", dec(c_level)}, {"count", count}};
      } else if (circle->parsed()) {
        if (!D_given) cfg.D = std::max(cfg.D, 2 * cfg.K + 4);
        cfg.validate();
        echo_config(rep, cfg);
        const Chart ch = make_chart(unit_circle_arc(cfg.D), 0.0, cfg.n, cfg.branch, cfg.K);
        r = unit_circle_residual(cfg.n, ch, cfg.sigma_max, count);
      } else if (planes->parsed()) {
        echo_config(rep, cfg);
        r = plane_oracle(cfg.n, trials, cfg.seed);
      } else {
        ArcSpec arc = load_arc_arg(arc_path);
        if (D_given) arc = arc.with_degree_cap(cfg.D);
        cfg.D = arc.degree_cap();
        cfg.validate();
        echo_config(rep, cfg);
        BranchSeparationOptions opts;
        opts.s0 = s0;
        r = branch_separation(arc, cfg.n, cfg.K, opts);
      }
      rep.results() = oracle_json(r);
      rep.check_flag(r.name, r.pass);
      rep.emit(report_path);
      return rep.pass() ? 0 : 1;
    }

    if (mesh->parsed()) {
      const std::vector<Chart> charts = deserialize_atlas(read_file(chart_path));
      if (cfg.out.empty()) throw InvalidArgument("mesh needs --out");
      Report rep("mesh");
      MeshOptions opts;
      opts.nt = nt;
      opts.ns = ns;
      opts.nu = nu;
      opts.sigma_max = cfg.sigma_max;
      const MeshStats s = export_mesh(charts, parse_mesh_mode(mode), opts, cfg.out);
      rep.config() = {{"mode", mode}, {"nt", nt}, {"ns", ns}, {"nu", nu}, {"sigma_max", dec(cfg.sigma_max)}};
      rep.results() = {{"vertices", s.vertices}, {"faces", s.faces}, {"rows", s.rows}, {"written", cfg.out}};
      rep.emit(report_path);
      return 0;
    }
  } catch (const ObstructionError& e) {
    std::cerr << json({{"error", "obstruction"}, {"message", e.what()}, {"shift", e.shift()}}).dump() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << json({{"error", "failure"}, {"message", e.what()}}).dump() << "\n";
    return 2;
  }
  return 0;
}
