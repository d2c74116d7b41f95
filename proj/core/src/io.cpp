#include "slag/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "decimal.hpp"

namespace slag {

using nlohmann::json;
using detail::decimal_array;
using detail::decimal_json;
using detail::format_decimal;
using detail::number_field;

void RunConfig::validate() const {
  if (n < 2) throw InvalidArgument("n must be >= 2");
  if (K < 1) throw InvalidArgument("K must be >= 1");
  if (D < 2 * K) throw InvalidArgument("D must be >= 2K");
  if (branch < 0 || branch >= n) throw InvalidArgument("branch must lie in [0, n)");
  if (!(sigma_max >= 0.0)) throw InvalidArgument("sigma_max must be non-negative");
  if (!(spacing > 0.0)) throw InvalidArgument("spacing must be positive");
}

namespace {

int int_field(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    throw SchemaError(std::string("missing integer field '") + key + "'");
  }
  return j.at(key).get<int>();
}

const json& object_field(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_object()) throw SchemaError(std::string("missing object '") + key + "'");
  return j.at(key);
}

void check_header(const json& j, std::string_view schema) {
  if (!j.is_object()) throw SchemaError("document must be a JSON object");
  if (!j.contains("schema") || !j.at("schema").is_string() || j.at("schema").get<std::string>() != schema) {
    throw SchemaError("expected schema '" + std::string(schema) + "'");
  }
  const int version = int_field(j, "version");
  if (version != kSchemaVersion) throw VersionError("unsupported schema version " + std::to_string(version));
}

json chart_json(const Chart& c) {
  json j;
  j["schema"] = kChartSchema;
  j["version"] = kSchemaVersion;
  j["n"] = c.n;
  j["branch"] = c.branch;
  j["frame"] = {{"a_re", format_decimal(c.frame.a.real())},
                {"a_im", format_decimal(c.frame.a.imag())},
                {"theta", format_decimal(c.frame.theta)}};
  j["center"] = format_decimal(c.center);
  j["K"] = c.phi.K();
  j["D"] = c.phi.D();
  json terms = json::array();
  for (const TaylorPoly& f : c.phi.terms()) terms.push_back(decimal_json(f.coeffs()));
  j["terms"] = terms;
  j["radius"] = {{"C", format_decimal(c.radius.C)},
                 {"M", format_decimal(c.radius.M)},
                 {"rho", format_decimal(c.radius.rho_sigma)},
                 {"fit", format_decimal(c.radius.fit_quality)},
                 {"rho_t", format_decimal(c.radius.rho_t)},
                 {"estimated", c.radius.estimated}};
  return j;
}

Chart chart_from_json(const json& j) {
  check_header(j, kChartSchema);
  Chart c;
  c.n = int_field(j, "n");
  c.branch = int_field(j, "branch");
  if (c.n < 2 || c.branch < 0 || c.branch >= c.n) throw SchemaError("chart n/branch out of range");
  const json& frame = object_field(j, "frame");
  c.frame.a = Complex{number_field(frame, "a_re"), number_field(frame, "a_im")};
  c.frame.theta = number_field(frame, "theta");
  c.center = number_field(j, "center");
  const int K = int_field(j, "K");
  const int D = int_field(j, "D");
  if (!j.contains("terms") || !j.at("terms").is_array()) throw SchemaError("missing array 'terms'");
  const json& terms = j.at("terms");
  if (static_cast<int>(terms.size()) != K + 1) throw SchemaError("terms must hold K + 1 coefficient lists");
  std::vector<TaylorPoly> polys;
  for (const json& t : terms) {
    json wrapper = {{"c", t}};
    std::vector<double> coeffs = decimal_array(wrapper, "c");
    if (static_cast<int>(coeffs.size()) != D + 1) throw SchemaError("each term must hold D + 1 coefficients");
    polys.emplace_back(std::move(coeffs));
  }
  c.phi = SigmaExpansion(c.n, std::move(polys));
  const json& radius = object_field(j, "radius");
  c.radius.C = number_field(radius, "C");
  c.radius.M = number_field(radius, "M");
  c.radius.rho_sigma = number_field(radius, "rho");
  c.radius.fit_quality = number_field(radius, "fit");
  c.radius.rho_t = radius.contains("rho_t") ? number_field(radius, "rho_t") : RadiusEstimate::kInf;
  c.radius.estimated = radius.value("estimated", false);
  return c;
}

json parse_json(std::string_view document) {
  try {
    return json::parse(document);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

std::string serialize_chart(const Chart& c) { return chart_json(c).dump(2); }

Chart deserialize_chart(std::string_view document) { return chart_from_json(parse_json(document)); }

std::string serialize_atlas(const std::vector<Chart>& charts) {
  json j;
  j["schema"] = kAtlasSchema;
  j["version"] = kSchemaVersion;
  json list = json::array();
  for (const Chart& c : charts) list.push_back(chart_json(c));
  j["charts"] = list;
  return j.dump(2);
}

std::vector<Chart> deserialize_atlas(std::string_view document) {
  const json j = parse_json(document);
  if (j.is_object() && j.contains("schema") && j.at("schema") == kChartSchema) return {chart_from_json(j)};
  check_header(j, kAtlasSchema);
  if (!j.contains("charts") || !j.at("charts").is_array()) throw SchemaError("missing array 'charts'");
  std::vector<Chart> out;
  for (const json& c : j.at("charts")) out.push_back(chart_from_json(c));
  return out;
}

MeshMode parse_mesh_mode(std::string_view text) {
  if (text == "reduced") return MeshMode::Reduced;
  if (text == "embedded") return MeshMode::Embedded;
  throw InvalidArgument("mesh mode must be 'reduced' or 'embedded'");
}

std::string mesh_document(const std::vector<Chart>& charts, MeshMode mode, const MeshOptions& opts,
                          MeshStats* stats) {
  if (opts.nt < 2 || opts.ns < 2 || opts.nu < 1) throw InvalidArgument("mesh resolution too small");
  if (charts.empty()) throw InvalidArgument("mesh export needs at least one chart");
  MeshStats s;
  std::ostringstream os;
  os.precision(17);
  const auto t_at = [&](int i) { return -opts.t_halfwidth + 2.0 * opts.t_halfwidth * i / (opts.nt - 1); };
  const auto s_at = [&](int k) { return opts.sigma_max * k / (opts.ns - 1); };
  if (mode == MeshMode::Reduced) {
    for (const Chart& c : charts) {
      const int base = s.vertices;
      for (int i = 0; i < opts.nt; ++i) {
        for (int k = 0; k < opts.ns; ++k) {
          const ReducedPoint p = reduced_point(c, t_at(i), s_at(k));
          os << "v " << p.w.real() << ' ' << p.w.imag() << ' ' << p.zeta.real() << ' ' << p.zeta.imag() << '\n';
          ++s.vertices;
        }
      }
      for (int i = 0; i + 1 < opts.nt; ++i) {
        for (int k = 0; k + 1 < opts.ns; ++k) {
          const int v00 = base + i * opts.ns + k + 1;  // OBJ indices start at 1
          os << "f " << v00 << ' ' << v00 + opts.ns << ' ' << v00 + opts.ns + 1 << ' ' << v00 + 1 << '\n';
          ++s.faces;
        }
      }
    }
  } else {
    const int n = charts.front().n;
    for (int k = 0; k <= n; ++k) os << (k ? "," : "") << 'x' << k << ",y" << k;
    os << '\n';
    const auto us = sphere_samples(n, opts.nu);
    for (const Chart& c : charts) {
      if (c.n != n) throw InvalidArgument("embedded export needs charts of one n");
      for (int i = 0; i < opts.nt; ++i) {
        for (int k = 0; k < opts.ns; ++k) {
          for (const auto& u : us) {
            const AmbientPoint p = chart_point(c, t_at(i), s_at(k), u);
            for (int m = 0; m <= n; ++m) os << (m ? "," : "") << p.z[m].real() << ',' << p.z[m].imag();
            os << '\n';
            ++s.rows;
          }
        }
      }
    }
  }
  if (stats) *stats = s;
  return os.str();
}

MeshStats export_mesh(const std::vector<Chart>& charts, MeshMode mode, const MeshOptions& opts,
                      const std::string& path) {
  MeshStats s;
  const std::string doc = mesh_document(charts, mode, opts, &s);
  write_file_atomic(path, doc);
  return s;
}

void write_file_atomic(const std::string& path, std::string_view content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot rename onto " + path);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace slag
