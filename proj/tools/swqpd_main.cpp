// Command-line surface: build QPD grids for named states, convert between
// orderings, reconstruct operators from grids, and run the correspondence
// verification suites. All file formats are documented in the README.

#include "swqpd/axioms.hpp"
#include "swqpd/gridio.hpp"
#include "swqpd/states.hpp"
#include "swqpd/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace swqpd;
using nlohmann::json;
namespace fs = std::filesystem;

int parse_spin_twoj(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const int num = std::stoi(text.substr(0, slash));
    const int den = std::stoi(text.substr(slash + 1));
    if (den != 2 || num < 1) throw std::invalid_argument("--j must be a positive (half-)integer like 2 or 3/2");
    return num;
  }
  const double j = std::stod(text);
  const double twoj = 2.0 * j;
  if (twoj < 1.0 || std::abs(twoj - std::round(twoj)) > 1e-9)
    throw std::invalid_argument("--j must be a positive (half-)integer like 2 or 3/2");
  return static_cast<int>(std::round(twoj));
}

std::string format_s(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", s);
  return buf;
}

fs::path output_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("SWQPD_OUT")) return env;
  return ".";
}

struct QpdOptions {
  std::string group;
  std::string j_text;
  int n_max = 0;
  std::string state_file;
  std::vector<double> s_values;
  int grid_theta = -1, grid_phi = -1;
  int grid_radial = 96, grid_angular = 32;
  double u_max = 0.0;
  std::string out;
  std::string prefix = "qpd";
};

int run_qpd(const QpdOptions& opt) {
  const fs::path dir = output_dir(opt.out);
  fs::create_directories(dir);
  if (opt.s_values.empty()) throw std::invalid_argument("qpd: at least one --s is required");
  std::vector<SValue> s_list;
  for (double s : opt.s_values) s_list.push_back(SValue{s});
  const StateSpec spec = load_state_spec(opt.state_file);

  json run;
  run["command"] = "qpd";
  run["version"] = version;
  run["state_file"] = opt.state_file;
  json files = json::array();

  if (opt.group == "su2") {
    const SpinRep rep(parse_spin_twoj(opt.j_text));
    const ComplexMatrix rho = density_matrix_su2(spec, rep);
    const QuadratureGrid grid = sphere_grid(rep, opt.grid_theta, opt.grid_phi);
    const KernelData kd = build_kernel_data(rep);
    run["group"] = "su2";
    run["twoj"] = rep.twoj;
    for (const SValue s : s_list) {
      const QpdGrid f = weyl_map(kd, rho, s, grid);
      const fs::path csv = dir / (opt.prefix + "_s" + format_s(s.s) + ".csv");
      const GridManifest m = write_qpd_file(csv.string(), f);
      files.push_back({{"csv", m.csv}, {"s", s.s}, {"hash", m.hash}});
      std::cout << "wrote " << csv.string() << "\n";
    }
  } else if (opt.group == "hw") {
    if (opt.n_max < 1) throw std::invalid_argument("qpd: --nmax is required for --group hw");
    const FockRep rep(opt.n_max);
    const ComplexMatrix rho = density_matrix_hw(spec, rep);
    const double u_max = opt.u_max > 0.0 ? opt.u_max : std::min(0.35 * rep.n_max, 15.0);
    const PolarGrid grid = polar_grid(opt.grid_radial, opt.grid_angular, u_max);
    run["group"] = "hw";
    run["n_max"] = rep.n_max;
    for (const SValue s : s_list) {
      const PlaneQpdGrid f = hw_weyl_map(rep, rho, s, grid);
      const fs::path csv = dir / (opt.prefix + "_s" + format_s(s.s) + ".csv");
      const GridManifest m = write_qpd_file(csv.string(), f);
      files.push_back({{"csv", m.csv}, {"s", s.s}, {"hash", m.hash}});
      std::cout << "wrote " << csv.string() << "\n";
    }
  } else {
    throw std::invalid_argument("qpd: --group must be su2 or hw");
  }

  run["files"] = files;
  const fs::path manifest = dir / (opt.prefix + "_run.json");
  std::ofstream(manifest) << run.dump(2) << "\n";
  std::cout << "wrote " << manifest.string() << "\n";
  return 0;
}

struct ConvertOptions {
  std::string in;
  double s_target = 0.0;
  std::string out;
  std::string out_file;
};

int run_convert(const ConvertOptions& opt) {
  const LoadedGrid loaded = load_qpd_file(opt.in);
  if (loaded.manifest.group != "su2")
    throw std::invalid_argument(
        "convert: ordering transforms act on the harmonic coefficients and are implemented for "
        "group su2 only");
  const QpdGrid& f = std::get<QpdGrid>(loaded.grid);
  const KernelData kd = build_kernel_data(SpinRep(f.twoj));
  const QpdGrid g = transform_qpd(kd, f, SValue{opt.s_target});

  fs::path csv;
  if (!opt.out_file.empty()) {
    csv = opt.out_file;
  } else {
    const fs::path dir = output_dir(opt.out);
    fs::create_directories(dir);
    csv = dir / (fs::path(opt.in).stem().string() + "_to_s" + format_s(opt.s_target) + ".csv");
  }
  write_qpd_file(csv.string(), g, f.s.s);
  std::cout << "wrote " << csv.string() << " (s = " << format_s(f.s.s) << " -> "
            << format_s(opt.s_target) << ")\n";
  return 0;
}

struct ReconstructOptions {
  std::string in;
  std::string out;
  std::string out_file;
};

int run_reconstruct(const ReconstructOptions& opt) {
  const LoadedGrid loaded = load_qpd_file(opt.in);
  ComplexMatrix a;
  if (loaded.manifest.group == "su2") {
    const QpdGrid& f = std::get<QpdGrid>(loaded.grid);
    const KernelData kd = build_kernel_data(SpinRep(f.twoj));
    a = inverse_weyl(kd, f);
  } else {
    const PlaneQpdGrid& f = std::get<PlaneQpdGrid>(loaded.grid);
    if (f.s.s != 0.0)
      throw std::invalid_argument(
          "reconstruct: on the truncated Fock space only s = 0 (Wigner) grids can be inverted; "
          "the -s partner kernels grow with the Fock level");
    a = hw_reconstruct_wigner(FockRep(f.n_max), f);
  }

  fs::path path;
  if (!opt.out_file.empty()) {
    path = opt.out_file;
  } else {
    const fs::path dir = output_dir(opt.out);
    fs::create_directories(dir);
    path = dir / (fs::path(opt.in).stem().string() + "_operator.json");
  }
  write_operator_file(path.string(), a);
  std::cout << "wrote " << path.string() << "\n";
  std::cout << "  hermiticity deviation: " << (a - a.adjoint()).cwiseAbs().maxCoeff() << "\n";
  std::cout << "  trace: " << a.trace().real() << (a.trace().imag() < 0 ? " - " : " + ")
            << std::abs(a.trace().imag()) << "i\n";
  return 0;
}

struct VerifyOptions {
  std::string group;
  std::string j_text = "2";
  int n_max = 60;
  std::vector<double> s_values;
  int trials = 0;  // 0 = per-group default
  std::uint64_t seed = 12345;
  std::string out;
  std::string report_file;
};

int run_verify(const VerifyOptions& opt) {
  std::vector<double> s_list = opt.s_values;
  for (double s : s_list) SValue{s};  // range check
  std::vector<AxiomReport> reports;
  if (opt.group == "su2") {
    if (s_list.empty()) s_list = default_s_list();
    const int trials = opt.trials == 0 ? 100 : opt.trials;
    reports = verify_all_su2(SpinRep(parse_spin_twoj(opt.j_text)), s_list, trials, opt.seed);
  } else if (opt.group == "hw") {
    if (s_list.empty()) s_list = default_hw_s_list();
    const int trials = opt.trials == 0 ? 20 : opt.trials;
    reports = verify_all_hw(FockRep(opt.n_max), s_list, trials, opt.seed);
  } else {
    throw std::invalid_argument("verify: --group must be su2 or hw");
  }

  bool all_passed = true;
  json doc;
  doc["version"] = version;
  doc["system"] = reports.front().system;
  json items = json::array();
  for (const AxiomReport& r : reports) {
    all_passed = all_passed && r.passed;
    std::printf("%-16s %-6s max_dev %.3e  tol %.0e  trials %3d  seed %llu\n", r.axiom.c_str(),
                r.passed ? "PASS" : "FAIL", r.max_deviation, r.tolerance, r.trials,
                static_cast<unsigned long long>(r.seed));
    items.push_back({{"axiom", r.axiom},
                     {"system", r.system},
                     {"s_values", r.s_values},
                     {"trials", r.trials},
                     {"max_deviation", r.max_deviation},
                     {"tolerance", r.tolerance},
                     {"passed", r.passed},
                     {"seed", r.seed}});
  }
  doc["reports"] = items;
  doc["all_passed"] = all_passed;

  fs::path path;
  if (!opt.report_file.empty()) {
    path = opt.report_file;
  } else {
    const fs::path dir = output_dir(opt.out);
    fs::create_directories(dir);
    path = dir / "verify_report.json";
  }
  std::ofstream(path) << doc.dump(2) << "\n";
  std::cout << "wrote " << path.string() << "\n";
  return all_passed ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"s-parametrized quasiprobability distributions for spin (SU(2)) and a truncated "
               "oscillator mode (Heisenberg-Weyl)"};
  app.set_version_flag("--version", version);
  app.require_subcommand(1);

  QpdOptions qpd;
  CLI::App* cmd_qpd = app.add_subcommand("qpd", "sample a distribution of a state on a grid");
  cmd_qpd->add_option("--group", qpd.group, "su2 or hw")->required();
  cmd_qpd->add_option("--j", qpd.j_text, "spin (su2), e.g. 1/2 or 2");
  cmd_qpd->add_option("--nmax", qpd.n_max, "Fock cutoff (hw)");
  cmd_qpd->add_option("--state", qpd.state_file, "state spec JSON file")->required();
  cmd_qpd->add_option("--s", qpd.s_values, "ordering parameter(s) in [-1,1], repeatable");
  cmd_qpd->add_option("--grid-theta", qpd.grid_theta, "polar node count (su2)");
  cmd_qpd->add_option("--grid-phi", qpd.grid_phi, "azimuthal node count (su2)");
  cmd_qpd->add_option("--grid-radial", qpd.grid_radial, "radial node count (hw)");
  cmd_qpd->add_option("--grid-angular", qpd.grid_angular, "angular node count (hw)");
  cmd_qpd->add_option("--umax", qpd.u_max, "radial domain cutoff in |alpha|^2 (hw)");
  cmd_qpd->add_option("--out", qpd.out, "output directory (default $SWQPD_OUT or .)");
  cmd_qpd->add_option("--prefix", qpd.prefix, "output file prefix");

  ConvertOptions conv;
  CLI::App* cmd_convert = app.add_subcommand("convert", "re-express a grid at another ordering s");
  cmd_convert->add_option("--in", conv.in, "input grid CSV (manifest sidecar required)")->required();
  cmd_convert->add_option("--s-target", conv.s_target, "target ordering in [-1,1]")->required();
  cmd_convert->add_option("--out", conv.out, "output directory");
  cmd_convert->add_option("--out-file", conv.out_file, "explicit output path");

  ReconstructOptions rec;
  CLI::App* cmd_rec = app.add_subcommand("reconstruct", "rebuild the operator from a grid");
  cmd_rec->add_option("--in", rec.in, "input grid CSV (manifest sidecar required)")->required();
  cmd_rec->add_option("--out", rec.out, "output directory");
  cmd_rec->add_option("--out-file", rec.out_file, "explicit output path");

  VerifyOptions ver;
  CLI::App* cmd_verify = app.add_subcommand("verify", "run the correspondence checks");
  cmd_verify->add_option("--group", ver.group, "su2 or hw")->required();
  cmd_verify->add_option("--j", ver.j_text, "spin (su2), default 2");
  cmd_verify->add_option("--nmax", ver.n_max, "Fock cutoff (hw), default 60");
  cmd_verify->add_option("--s", ver.s_values, "ordering parameter(s), repeatable");
  cmd_verify->add_option("--trials", ver.trials, "random trials per check")
      ->check(CLI::PositiveNumber);
  cmd_verify->add_option("--seed", ver.seed, "base RNG seed");
  cmd_verify->add_option("--out", ver.out, "output directory for the report");
  cmd_verify->add_option("--report", ver.report_file, "explicit report path");

  try {
    app.parse(argc, argv);
    if (cmd_qpd->parsed()) return run_qpd(qpd);
    if (cmd_convert->parsed()) return run_convert(conv);
    if (cmd_rec->parsed()) return run_reconstruct(rec);
    if (cmd_verify->parsed()) return run_verify(ver);
    return 1;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
