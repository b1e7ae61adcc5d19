#include "pvac/field_io.hpp"

#include <bit>
#include <chrono>
#include <cstring>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace pvac {

using nlohmann::json;

void write_trace(const std::string& path, const std::vector<EnergyReport>& trace) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write trace '" + path + "'");
  out << "t,E,EN,BN,CN,DN,TEN,Jmin,Jmax,Adev\n";
  out << std::setprecision(17);
  for (const auto& r : trace)
    out << r.t << ',' << r.E << ',' << r.EN << ',' << r.BN << ',' << r.CN << ',' << r.DN << ',' << r.TEN << ','
        << r.Jmin << ',' << r.Jmax << ',' << r.Adev << '\n';
}

std::vector<std::vector<double>> read_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read trace '" + path + "'");
  std::string line;
  std::getline(in, line);
  if (line != "t,E,EN,BN,CN,DN,TEN,Jmin,Jmax,Adev") throw SchemaError("trace header mismatch in '" + path + "'");
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (row.size() != 10) throw SchemaError("trace row with " + std::to_string(row.size()) + " columns");
    rows.push_back(std::move(row));
  }
  return rows;
}

const ScalarField& FieldBundle::get(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return fields[i];
  throw SchemaError("field '" + name + "' not present");
}

FieldBundle make_bundle(const Grid& g) {
  FieldBundle b;
  b.dims = g.dims();
  b.spacing = {g.h1, g.h2, g.h3};
  return b;
}

void add_scalar(FieldBundle& b, const std::string& name, const ScalarField& f) {
  const Index n = Index(b.dims[0]) * b.dims[1] * b.dims[2];
  if (f.size() != n) throw ContractViolation("add_scalar: field '" + name + "' does not match the bundle grid");
  b.names.push_back(name);
  b.fields.push_back(f);
}

void add_vector(FieldBundle& b, const std::string& base, const VectorField& f) {
  static const char* suffix[3] = {"_x", "_y", "_z"};
  for (int c = 0; c < 3; ++c) add_scalar(b, base + suffix[c], f.col(c));
}

VectorField get_vector(const FieldBundle& b, const std::string& base) {
  const ScalarField& x = b.get(base + "_x");
  VectorField v(x.size(), 3);
  v.col(0) = x;
  v.col(1) = b.get(base + "_y");
  v.col(2) = b.get(base + "_z");
  return v;
}

namespace {

void put_le(std::ostream& out, double v) {
  std::uint64_t u;
  std::memcpy(&u, &v, 8);
  if constexpr (std::endian::native == std::endian::big) u = __builtin_bswap64(u);
  out.write(reinterpret_cast<const char*>(&u), 8);
}

double get_le(const char* p) {
  std::uint64_t u;
  std::memcpy(&u, p, 8);
  if constexpr (std::endian::native == std::endian::big) u = __builtin_bswap64(u);
  double v;
  std::memcpy(&v, &u, 8);
  return v;
}

}  // namespace

std::pair<std::string, std::string> write_fields(const std::string& stem, const FieldBundle& b) {
  const std::string bin = stem + ".bin", side = stem + ".json";
  std::ofstream out(bin, std::ios::binary);
  if (!out) throw Error("cannot write '" + bin + "'");
  json offsets = json::array();
  std::uint64_t off = 0;
  for (const auto& f : b.fields) {
    offsets.push_back(off);
    for (Index p = 0; p < f.size(); ++p) put_le(out, f(p));
    off += std::uint64_t(f.size()) * 8;
  }
  json j;
  j["dims"] = b.dims;
  j["spacing"] = b.spacing;
  j["fields"] = b.names;
  j["offsets"] = offsets;
  j["endianness"] = "little";
  std::ofstream sj(side);
  if (!sj) throw Error("cannot write '" + side + "'");
  sj << j.dump(2) << '\n';
  return {bin, side};
}

FieldBundle read_fields(const std::string& stem) {
  const std::string bin = stem + ".bin", side = stem + ".json";
  std::ifstream sj(side);
  if (!sj) throw Error("cannot read '" + side + "'");
  json j;
  try {
    sj >> j;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("sidecar is not valid JSON: ") + e.what());
  }
  FieldBundle b;
  try {
    b.dims = j.at("dims").get<std::array<int, 3>>();
    b.spacing = j.at("spacing").get<std::array<double, 3>>();
    b.names = j.at("fields").get<std::vector<std::string>>();
    if (j.at("endianness").get<std::string>() != "little") throw SchemaError("unsupported endianness");
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed sidecar: ") + e.what());
  }
  const auto offsets = j.at("offsets").get<std::vector<std::uint64_t>>();
  if (offsets.size() != b.names.size()) throw SchemaError("sidecar offsets do not match the field list");
  for (int d : b.dims)
    if (d <= 0) throw SchemaError("sidecar dims must be positive");
  const std::uint64_t n = std::uint64_t(b.dims[0]) * b.dims[1] * b.dims[2];
  std::ifstream in(bin, std::ios::binary);
  if (!in) throw Error("cannot read '" + bin + "'");
  const std::string payload((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (payload.size() != n * 8 * b.names.size())
    throw SchemaError("payload has " + std::to_string(payload.size()) + " bytes, sidecar dims imply " +
                      std::to_string(n * 8 * b.names.size()));
  for (std::size_t f = 0; f < b.names.size(); ++f) {
    if (offsets[f] + n * 8 > payload.size()) throw SchemaError("field offset out of range");
    ScalarField v(n);
    for (std::uint64_t p = 0; p < n; ++p) v(Index(p)) = get_le(payload.data() + offsets[f] + p * 8);
    b.fields.push_back(std::move(v));
  }
  return b;
}

std::string iso_time_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_manifest(const std::string& path, const RunManifest& m) {
  json j;
  j["command"] = m.command;
  try {
    j["config"] = m.config_json.empty() ? json(nullptr) : json::parse(m.config_json);
  } catch (const json::exception&) {
    j["config"] = m.config_json;
  }
  j["version"] = m.version;
  j["start_time"] = m.start_time;
  j["end_time"] = m.end_time;
  j["wall_seconds"] = m.wall_seconds;
  j["termination"] = m.termination;
  if (!m.detail.empty()) j["detail"] = m.detail;
  std::vector<std::string> arts = m.artifacts;
  arts.push_back(std::filesystem::path(path).filename().string());
  j["artifacts"] = arts;
  std::ofstream out(path);
  if (!out) throw Error("cannot write manifest '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace pvac
