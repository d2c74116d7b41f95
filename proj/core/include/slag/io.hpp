#pragma once

// Run configuration, chart and atlas documents, and geometry export.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "slag/chart.hpp"
#include "slag/precision.hpp"

namespace slag {

struct RunConfig {
  int n = 2;
  int K = 12;
  int D = 24;
  double sigma_max = 0.05;
  int branch = 0;
  double spacing = 0.5;
  unsigned long long seed = 1;
  std::string out;
  Precision precision = Precision::Double;
  std::map<std::string, double> tolerances;

  /// Throws InvalidArgument unless n >= 2, K >= 1, D >= 2K, 0 <= branch < n,
  /// sigma_max >= 0 and spacing > 0.
  void validate() const;
};

inline constexpr std::string_view kChartSchema = "slag.chart";
inline constexpr std::string_view kAtlasSchema = "slag.atlas";
inline constexpr int kSchemaVersion = 1;

/// JSON chart document with decimal-string coefficients.
std::string serialize_chart(const Chart& c);
/// Throws SchemaError on malformed documents and VersionError on unknown versions.
Chart deserialize_chart(std::string_view document);

std::string serialize_atlas(const std::vector<Chart>& charts);
std::vector<Chart> deserialize_atlas(std::string_view document);

enum class MeshMode { Reduced, Embedded };

MeshMode parse_mesh_mode(std::string_view text);

struct MeshOptions {
  int nt = 21;
  int ns = 11;
  int nu = 8;
  double t_halfwidth = 0.25;
  double sigma_max = 0.05;
};

struct MeshStats {
  int vertices = 0;
  int faces = 0;
  int rows = 0;
};

/// Reduced mode: an ASCII OBJ of the (t, sigma) grid mapped to (w, zeta) in C^2,
/// written as "v Re(w) Im(w) Re(zeta) Im(zeta)" records plus quad faces.
/// Embedded mode: a CSV point cloud of chart points over (t, sigma, u) with
/// header x0,y0,..,xn,yn.
std::string mesh_document(const std::vector<Chart>& charts, MeshMode mode, const MeshOptions& opts,
                          MeshStats* stats = nullptr);

MeshStats export_mesh(const std::vector<Chart>& charts, MeshMode mode, const MeshOptions& opts,
                      const std::string& path);

/// Writes through a temporary file in the same directory followed by a rename.
void write_file_atomic(const std::string& path, std::string_view content);
std::string read_file(const std::string& path);

}  // namespace slag
