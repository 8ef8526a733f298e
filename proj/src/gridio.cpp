#include "swqpd/gridio.hpp"

#include "swqpd/su2.hpp"
#include "swqpd/version.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

namespace swqpd {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

std::string manifest_path(const std::string& csv_path) { return csv_path + ".manifest.json"; }

json manifest_to_json(const GridManifest& m) {
  json j;
  j["format"] = "swqpd-grid-v1";
  j["group"] = m.group;
  if (m.group == "su2") {
    j["twoj"] = m.size_param;
    j["grid"] = {{"n_theta", m.n_a}, {"n_phi", m.n_b}};
  } else {
    j["n_max"] = m.size_param;
    j["grid"] = {{"n_radial", m.n_a}, {"n_angular", m.n_b}, {"u_max", m.u_max}};
  }
  j["s"] = m.s;
  if (m.s_source) j["s_source"] = *m.s_source;
  j["version"] = m.version;
  j["csv"] = m.csv;
  j["hash"] = m.hash;
  return j;
}

GridManifest manifest_from_json(const json& j) {
  if (j.value("format", "") != "swqpd-grid-v1")
    throw std::runtime_error("manifest: unknown format field");
  GridManifest m;
  m.group = j.at("group").get<std::string>();
  m.s = j.at("s").get<double>();
  if (j.contains("s_source")) m.s_source = j["s_source"].get<double>();
  if (m.group == "su2") {
    m.size_param = j.at("twoj").get<int>();
    m.n_a = j.at("grid").at("n_theta").get<int>();
    m.n_b = j.at("grid").at("n_phi").get<int>();
  } else if (m.group == "hw") {
    m.size_param = j.at("n_max").get<int>();
    m.n_a = j.at("grid").at("n_radial").get<int>();
    m.n_b = j.at("grid").at("n_angular").get<int>();
    m.u_max = j.at("grid").at("u_max").get<double>();
  } else {
    throw std::runtime_error("manifest: unknown group '" + m.group + "'");
  }
  m.version = j.value("version", "");
  m.csv = j.value("csv", "");
  m.hash = j.at("hash").get<std::string>();
  return m;
}

GridManifest finish_write(const std::string& csv_path, const std::string& csv_text,
                          GridManifest m) {
  write_file(csv_path, csv_text);
  m.version = version;
  m.csv = std::filesystem::path(csv_path).filename().string();
  m.hash = "fnv1a64:" + fnv1a64_hex(csv_text);
  write_file(manifest_path(csv_path), manifest_to_json(m).dump(2) + "\n");
  return m;
}

double parse_double(const std::string& tok) {
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str()) throw std::runtime_error("grid file: bad number '" + tok + "'");
  return v;
}

std::vector<std::array<double, 4>> parse_csv(const std::string& text, const std::string& header) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("grid file: empty");
  if (line != header) throw std::runtime_error("grid file: expected header '" + header + "'");
  std::vector<std::array<double, 4>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::array<double, 4> row{};
    std::istringstream ls(line);
    std::string tok;
    for (int c = 0; c < 4; ++c) {
      if (!std::getline(ls, tok, ',')) throw std::runtime_error("grid file: short row");
      row[c] = parse_double(tok);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

GridManifest write_qpd_file(const std::string& csv_path, const QpdGrid& f,
                            std::optional<double> s_source) {
  std::ostringstream csv;
  csv << "theta,phi,re,im\n";
  for (int k = 0; k < f.grid.size(); ++k) {
    csv << format_double(f.grid.nodes[k].theta) << ',' << format_double(f.grid.nodes[k].phi)
        << ',' << format_double(f.values[k].real()) << ',' << format_double(f.values[k].imag())
        << '\n';
  }
  GridManifest m;
  m.group = "su2";
  m.size_param = f.twoj;
  m.s = f.s.s;
  m.s_source = s_source;
  m.n_a = f.grid.n_theta;
  m.n_b = f.grid.n_phi;
  return finish_write(csv_path, csv.str(), std::move(m));
}

GridManifest write_qpd_file(const std::string& csv_path, const PlaneQpdGrid& f,
                            std::optional<double> s_source) {
  std::ostringstream csv;
  csv << "re_alpha,im_alpha,re,im\n";
  for (int k = 0; k < f.grid.size(); ++k) {
    csv << format_double(f.grid.nodes[k].alpha.real()) << ','
        << format_double(f.grid.nodes[k].alpha.imag()) << ',' << format_double(f.values[k].real())
        << ',' << format_double(f.values[k].imag()) << '\n';
  }
  GridManifest m;
  m.group = "hw";
  m.size_param = f.n_max;
  m.s = f.s.s;
  m.s_source = s_source;
  m.n_a = f.grid.n_radial;
  m.n_b = f.grid.n_angular;
  m.u_max = f.grid.u_max;
  return finish_write(csv_path, csv.str(), std::move(m));
}

LoadedGrid load_qpd_file(const std::string& csv_path) {
  const std::string csv_text = read_file(csv_path);
  const GridManifest m = manifest_from_json(json::parse(read_file(manifest_path(csv_path))));
  const std::string expect = "fnv1a64:" + fnv1a64_hex(csv_text);
  if (m.hash != expect)
    throw std::runtime_error("grid file: content hash mismatch (file edited or corrupted?)");

  if (m.group == "su2") {
    const auto rows = parse_csv(csv_text, "theta,phi,re,im");
    QuadratureGrid grid = sphere_grid(SpinRep(m.size_param), m.n_a, m.n_b);
    if (static_cast<int>(rows.size()) != grid.size())
      throw std::runtime_error("grid file: row count does not match the manifest grid spec");
    ComplexVector values(grid.size());
    for (int k = 0; k < grid.size(); ++k) {
      if (std::abs(rows[k][0] - grid.nodes[k].theta) > 1e-12 ||
          std::abs(rows[k][1] - grid.nodes[k].phi) > 1e-12)
        throw std::runtime_error("grid file: node coordinates do not match the canonical grid");
      values[k] = Complex(rows[k][2], rows[k][3]);
    }
    return LoadedGrid{m, QpdGrid{SValue{m.s}, m.size_param, std::move(grid), std::move(values)}};
  }

  const auto rows = parse_csv(csv_text, "re_alpha,im_alpha,re,im");
  PolarGrid grid = polar_grid(m.n_a, m.n_b, m.u_max);
  if (static_cast<int>(rows.size()) != grid.size())
    throw std::runtime_error("grid file: row count does not match the manifest grid spec");
  ComplexVector values(grid.size());
  for (int k = 0; k < grid.size(); ++k) {
    if (std::abs(rows[k][0] - grid.nodes[k].alpha.real()) > 1e-12 ||
        std::abs(rows[k][1] - grid.nodes[k].alpha.imag()) > 1e-12)
      throw std::runtime_error("grid file: node coordinates do not match the canonical grid");
    values[k] = Complex(rows[k][2], rows[k][3]);
  }
  return LoadedGrid{m, PlaneQpdGrid{SValue{m.s}, m.size_param, std::move(grid), std::move(values)}};
}

void write_operator_file(const std::string& path, const ComplexMatrix& a) {
  json j;
  const int d = static_cast<int>(a.rows());
  j["dim"] = d;
  json rows = json::array();
  for (int r = 0; r < d; ++r) {
    json row = json::array();
    for (int c = 0; c < d; ++c) row.push_back({a(r, c).real(), a(r, c).imag()});
    rows.push_back(row);
  }
  j["matrix"] = rows;
  j["diagnostics"] = {
      {"hermiticity_deviation", (a - a.adjoint()).cwiseAbs().maxCoeff()},
      {"trace_re", a.trace().real()},
      {"trace_im", a.trace().imag()},
  };
  j["version"] = version;
  write_file(path, j.dump(2) + "\n");
}

ComplexMatrix load_operator_file(const std::string& path) {
  const json j = json::parse(read_file(path));
  const int d = j.at("dim").get<int>();
  ComplexMatrix a(d, d);
  const auto& rows = j.at("matrix");
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c)
      a(r, c) = Complex(rows[r][c][0].get<double>(), rows[r][c][1].get<double>());
  return a;
}

}  // namespace swqpd
