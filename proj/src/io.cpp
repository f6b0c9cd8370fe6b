#include "gamcal/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gamcal/errors.hpp"
#include "gamcal/util.hpp"

namespace gamcal {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

double parse_double(const std::string& text, bool* ok) {
  const char* start = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(start, &end);
  if (ok) *ok = end != start && *end == '\0';
  return v;
}

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path);
  out << bytes;
  if (!out) throw Error("write failed: " + path);
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  const std::string bytes = read_file(path);
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string cell;
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    const char c = bytes[i];
    if (c == ',') {
      row.push_back(cell);
      cell.clear();
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < bytes.size() && bytes[i + 1] == '\n') ++i;
      row.push_back(cell);
      cell.clear();
      rows.push_back(row);
      row.clear();
    } else {
      cell += c;
    }
  }
  if (!cell.empty() || !row.empty()) {
    row.push_back(cell);
    rows.push_back(row);
  }
  return rows;
}

void write_motion_csv(const std::string& path, const MotionCurve& curve) {
  const int n = curve.config_dim;
  std::string out = "tau";
  for (int j = 1; j <= n; ++j) out += ",q_" + std::to_string(j);
  for (int j = 1; j <= n; ++j) out += ",p_" + std::to_string(j);
  out += ",H_residual,energy\n";
  for (std::size_t i = 0; i < curve.tau.size(); ++i) {
    out += format_double(curve.tau[i]);
    for (double q : curve.points[i].vector_part()) out += "," + format_double(q);
    for (double p : curve.momenta[i].vector_part()) out += "," + format_double(p);
    out += "," + format_double(curve.constraint_residuals[i]);
    out += "," + format_double(curve.energies[i]);
    out += "\n";
  }
  write_file(path, out);
}

MotionCurve read_motion_csv(const std::string& path, int config_dim) {
  const auto rows = read_csv(path);
  if (rows.empty()) throw ConfigError("motion data is empty: " + path);
  const int n = config_dim;
  std::vector<std::string> header = {"tau"};
  for (int j = 1; j <= n; ++j) header.push_back("q_" + std::to_string(j));
  for (int j = 1; j <= n; ++j) header.push_back("p_" + std::to_string(j));
  header.push_back("H_residual");
  header.push_back("energy");
  if (rows.front() != header) {
    throw ConfigError("motion data header does not match the expected schema: " + path);
  }
  MotionCurve curve;
  curve.config_dim = n;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != header.size()) {
      throw ConfigError("motion data row " + std::to_string(r) +
                        " has the wrong column count: " + path);
    }
    std::vector<double> vals(row.size());
    for (std::size_t c = 0; c < row.size(); ++c) {
      bool ok = false;
      vals[c] = parse_double(row[c], &ok);
      if (!ok || !std::isfinite(vals[c])) {
        throw ConfigError("motion data row " + std::to_string(r) +
                          " holds a non-numeric cell: " + path);
      }
    }
    curve.tau.push_back(vals[0]);
    curve.points.push_back(
        Multivector::vector(n, {vals.begin() + 1, vals.begin() + 1 + n}));
    curve.momenta.push_back(
        Multivector::vector(n, {vals.begin() + 1 + n, vals.begin() + 1 + 2 * n}));
    curve.constraint_residuals.push_back(vals[1 + 2 * n]);
    curve.energies.push_back(vals[2 + 2 * n]);
  }
  if (curve.tau.empty()) throw ConfigError("motion data has no rows: " + path);
  curve.validate();
  return curve;
}

void write_field_csv(const std::string& path, const FieldGrid& grid) {
  const int d = grid.axes();
  std::string out;
  for (int k = 1; k <= d; ++k) out += (k == 1 ? "x_" : ",x_") + std::to_string(k);
  out += ",phi";
  for (int k = 1; k <= d; ++k) out += ",pi_" + std::to_string(k);
  out += "\n";
  for (int node = 0; node < grid.node_count(); ++node) {
    const auto coords = grid.coordinates(grid.unravel(node));
    for (int k = 0; k < d; ++k) out += (k == 0 ? "" : ",") + format_double(coords[k]);
    out += "," + format_double(grid.phi[node]);
    for (int k = 0; k < d; ++k) out += "," + format_double(grid.momenta[k][node]);
    out += "\n";
  }
  write_file(path, out);
}

void read_field_csv(const std::string& path, FieldGrid& grid) {
  const auto rows = read_csv(path);
  if (rows.empty()) throw ConfigError("field data is empty: " + path);
  const int d = grid.axes();
  std::vector<std::string> header;
  for (int k = 1; k <= d; ++k) header.push_back("x_" + std::to_string(k));
  header.push_back("phi");
  for (int k = 1; k <= d; ++k) header.push_back("pi_" + std::to_string(k));
  if (rows.front() != header) {
    throw ConfigError("field data header does not match the expected schema: " + path);
  }
  if (static_cast<int>(rows.size()) - 1 != grid.node_count()) {
    throw ConfigError("field data row count does not match the configured grid: " + path);
  }
  grid.momenta.assign(
      static_cast<std::size_t>(d),
      std::vector<double>(static_cast<std::size_t>(grid.node_count()), 0.0));
  for (int node = 0; node < grid.node_count(); ++node) {
    const auto& row = rows[node + 1];
    if (row.size() != header.size()) {
      throw ConfigError("field data row " + std::to_string(node + 1) +
                        " has the wrong column count: " + path);
    }
    std::vector<double> vals(row.size());
    for (std::size_t c = 0; c < row.size(); ++c) {
      bool ok = false;
      vals[c] = parse_double(row[c], &ok);
      if (!ok || !std::isfinite(vals[c])) {
        throw ConfigError("field data row " + std::to_string(node + 1) +
                          " holds a non-numeric cell: " + path);
      }
    }
    const auto coords = grid.coordinates(grid.unravel(node));
    for (int k = 0; k < d; ++k) {
      if (std::abs(vals[k] - coords[k]) > 1e-9) {
        throw ConfigError("field data coordinates do not match the configured grid: " +
                          path);
      }
    }
    grid.phi[node] = vals[d];
    for (int k = 0; k < d; ++k) grid.momenta[k][node] = vals[d + 1 + k];
  }
}

void write_emt_csv(const std::string& path, const FieldGrid& grid,
                   const EnergyMomentumField& field) {
  const int d = field.axes;
  std::string out;
  for (int k = 1; k <= d; ++k) out += (k == 1 ? "x_" : ",x_") + std::to_string(k);
  for (int j = 1; j <= d; ++j) {
    for (int k = 1; k <= d; ++k) {
      out += ",T_" + std::to_string(j) + std::to_string(k);
    }
  }
  out += "\n";
  for (int node = 0; node < grid.node_count(); ++node) {
    const auto coords = grid.coordinates(grid.unravel(node));
    for (int k = 0; k < d; ++k) out += (k == 0 ? "" : ",") + format_double(coords[k]);
    for (int j = 0; j < d; ++j) {
      for (int k = 0; k < d; ++k) out += "," + format_double(field.at(node, j, k));
    }
    out += "\n";
  }
  write_file(path, out);
}

}  // namespace gamcal
