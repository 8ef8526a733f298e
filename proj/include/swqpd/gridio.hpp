#pragma once

#include "swqpd/hw.hpp"
#include "swqpd/kernel.hpp"

#include <optional>
#include <string>
#include <variant>

namespace swqpd {

/// Sidecar metadata of a grid file; the hash makes the CSV self-validating.
struct GridManifest {
  std::string group;  // "su2" or "hw"
  int size_param = 0; // 2j or n_max
  double s = 0.0;
  std::optional<double> s_source;  // set when the grid came out of a conversion
  int n_a = 0;                     // n_theta / n_radial
  int n_b = 0;                     // n_phi / n_angular
  double u_max = 0.0;              // hw only
  std::string version;
  std::string csv;   // basename of the data file
  std::string hash;  // "fnv1a64:<hex>" of the CSV bytes
};

/// FNV-1a 64-bit hash, hex encoded.
std::string fnv1a64_hex(const std::string& bytes);

/// Full double precision (17 significant digits); reparses bit-exactly.
std::string format_double(double x);

/// Writes "<path>" (CSV, header theta,phi,re,im or re_alpha,im_alpha,re,im)
/// plus the sidecar "<path>.manifest.json". Returns the manifest.
GridManifest write_qpd_file(const std::string& csv_path, const QpdGrid& f,
                            std::optional<double> s_source = std::nullopt);
GridManifest write_qpd_file(const std::string& csv_path, const PlaneQpdGrid& f,
                            std::optional<double> s_source = std::nullopt);

struct LoadedGrid {
  GridManifest manifest;
  std::variant<QpdGrid, PlaneQpdGrid> grid;
};

/// Reads a grid file and its sidecar manifest, verifies the content hash,
/// rebuilds the canonical quadrature grid from the manifest and checks the
/// stored nodes against it.
LoadedGrid load_qpd_file(const std::string& csv_path);

/// Operator file (JSON): dim, matrix entries, Hermiticity/trace diagnostics.
void write_operator_file(const std::string& path, const ComplexMatrix& a);
ComplexMatrix load_operator_file(const std::string& path);

}  // namespace swqpd
