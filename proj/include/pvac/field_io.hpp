#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pvac/energies.hpp"

namespace pvac {

inline constexpr const char* kVersion = "0.1.0";

/// CSV with header t,E,EN,BN,CN,DN,TEN,Jmin,Jmax,Adev; values printed with 17 significant digits.
void write_trace(const std::string& path, const std::vector<EnergyReport>& trace);
std::vector<std::vector<double>> read_trace(const std::string& path);

struct FieldBundle {
  std::array<int, 3> dims{0, 0, 0};
  std::array<double, 3> spacing{0, 0, 0};
  std::vector<std::string> names;
  std::vector<ScalarField> fields;

  const ScalarField& get(const std::string& name) const;
};

/// Scalar components of a vector field named base_x, base_y, base_z.
void add_vector(FieldBundle& b, const std::string& base, const VectorField& f);
void add_scalar(FieldBundle& b, const std::string& name, const ScalarField& f);
FieldBundle make_bundle(const Grid& g);
VectorField get_vector(const FieldBundle& b, const std::string& base);

/// Writes <stem>.bin (little-endian float64 blocks, x1 fastest) and <stem>.json
/// {dims, spacing, fields, offsets, endianness}. Returns both paths.
std::pair<std::string, std::string> write_fields(const std::string& stem, const FieldBundle& b);

/// Reads a pair written by write_fields. Throws SchemaError when the sidecar
/// is malformed or disagrees with the payload size.
FieldBundle read_fields(const std::string& stem);

struct RunManifest {
  std::string command;
  std::string config_json;
  std::string version = kVersion;
  std::string start_time, end_time;
  double wall_seconds = 0.0;
  std::string termination = "completed";
  std::string detail;
  std::vector<std::string> artifacts;
};

void write_manifest(const std::string& path, const RunManifest& m);
std::string iso_time_now();

}  // namespace pvac
