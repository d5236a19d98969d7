// fockq: positive-energy Fock quantization of linear classical dynamics.
//
// Subcommands:
//   check      run named verification checks (all by default)
//   report     run the full catalog and emit a deterministic JSON report
//   quantize   build the Fock operators for a configured system and export
//   spectrum   one-particle and many-body energies of a configured system
//   symmetries validate and lift the discrete symmetries of a configuration
//
// Exit codes: 0 success, 2 configuration/usage error, 3 failed checks.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fockq/matrix_io.hpp"
#include "fockq/models.hpp"
#include "fockq/quantize.hpp"
#include "fockq/report.hpp"
#include "fockq/symmetries.hpp"

namespace {

using nlohmann::json;
using namespace fockq;

[[noreturn]] void config_fail(const std::string& where,
                              const std::string& what) {
  fail(ErrorCode::ConfigError, "config error at " + where + ": " + what);
}

Complex parse_complex(const json& j, const std::string& where) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Complex(j[0].get<double>(), j[1].get<double>());
  config_fail(where, "expected a number or an [re, im] pair");
}

Mat parse_matrix(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty())
    config_fail(where, "expected a non-empty array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) config_fail(where + "/0", "expected a non-empty row");
  Mat m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rw = where + "/" + std::to_string(r);
    if (!j[r].is_array() || j[r].size() != cols)
      config_fail(rw, "expected a row of " + std::to_string(cols) +
                          " entries");
    for (std::size_t c = 0; c < cols; ++c)
      m(Eigen::Index(r), Eigen::Index(c)) =
          parse_complex(j[r][c], rw + "/" + std::to_string(c));
  }
  return m;
}

template <typename T>
T field_or(const json& j, const std::string& key, T fallback,
           const std::string& where) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    config_fail(where + "/" + key, "wrong type");
  }
}

Species parse_species_or_fail(const json& j, const std::string& where) {
  if (!j.is_string()) config_fail(where, "expected a species name");
  auto s = parse_species(j.get<std::string>());
  if (!s)
    config_fail(where,
                "unknown species '" + j.get<std::string>() +
                    "' (expected neutral_bosonic, neutral_fermionic, "
                    "charged_bosonic or charged_fermionic)");
  return *s;
}

struct ConfiguredSystem {
  PhaseSpace phase;
  LinearDynamics dynamics;
  int cutoff = 6;
  double tol = kDefaultTol;
  json raw;
};

json load_json(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::IoError, "cannot open config " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ConfigError, "config error in " + path + ": " + e.what());
  }
}

ChainSpec parse_chain(const json& m, const std::string& where) {
  ChainSpec spec;
  spec.sites = field_or<int>(m, "sites", spec.sites, where);
  spec.mass = field_or<double>(m, "mass", spec.mass, where);
  spec.coupling = field_or<double>(m, "coupling", spec.coupling, where);
  spec.periodic = field_or<bool>(m, "periodic", spec.periodic, where);
  return spec;
}

ConfiguredSystem build_configured(const json& cfg) {
  ConfiguredSystem out;
  out.raw = cfg;
  out.cutoff = field_or<int>(cfg, "cutoff", out.cutoff, "");
  out.tol = field_or<double>(cfg, "tol", out.tol, "");
  if (!cfg.contains("model")) config_fail("/model", "missing");
  const json& m = cfg.at("model");
  const std::string type =
      field_or<std::string>(m, "type", "", "/model");

  ModelSystem sys;
  if (type == "harmonic_chain") {
    sys = harmonic_chain(parse_chain(m, "/model"), out.tol);
  } else if (type == "fermion_chain") {
    sys = fermion_chain(parse_chain(m, "/model"), out.tol);
  } else if (type == "majorana_chain") {
    sys = majorana_chain(field_or<int>(m, "sites", 4, "/model"),
                         field_or<double>(m, "coupling", 0.5, "/model"),
                         out.tol);
  } else if (type == "random") {
    if (!m.contains("species")) config_fail("/model/species", "missing");
    Species sp = parse_species_or_fail(m.at("species"), "/model/species");
    sys = random_system(sp, field_or<int>(m, "dim", 4, "/model"),
                        field_or<std::uint64_t>(m, "seed", 1, "/model"),
                        out.tol);
  } else if (type == "inline") {
    if (!m.contains("species")) config_fail("/model/species", "missing");
    Species sp = parse_species_or_fail(m.at("species"), "/model/species");
    if (!m.contains("form")) config_fail("/model/form", "missing");
    Mat form = parse_matrix(m.at("form"), "/model/form");
    FormKind kind =
        is_charged(sp) ? FormKind::Sesquilinear : FormKind::RealBilinear;
    std::optional<FormMatrix> energy;
    if (m.contains("energy_form"))
      energy = make_form(parse_matrix(m.at("energy_form"),
                                      "/model/energy_form"),
                         kind);
    sys.phase = build_phase_space(sp, make_form(form, kind), energy, out.tol);
    if (!m.contains("generator")) config_fail("/model/generator", "missing");
    sys.dynamics = build_dynamics(
        sys.phase, parse_matrix(m.at("generator"), "/model/generator"),
        out.tol);
  } else {
    config_fail("/model/type",
                "expected harmonic_chain, fermion_chain, majorana_chain, "
                "random or inline");
  }
  out.phase = sys.phase;
  out.dynamics = sys.dynamics;
  return out;
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

// ---- check / report --------------------------------------------------------

int cmd_check(const std::vector<std::string>& names, const CheckOptions& opt,
              const std::string& out_path, bool as_report) {
  std::vector<CheckResult> results = run_checks(names, opt);
  std::size_t failed = 0;
  for (const CheckResult& r : results) {
    if (!r.passed) ++failed;
    if (!as_report)
      std::cout << (r.passed ? "PASS" : "FAIL") << "  " << r.name
                << "  residual=" << sci(r.residual)
                << " tol=" << sci(r.tolerance) << "  [" << sci(r.seconds)
                << "s]\n";
  }
  std::string doc = serialize_report(results, opt);
  if (!out_path.empty()) {
    atomic_write(out_path, doc);
    std::cerr << "report written to " << out_path << "\n";
  } else if (as_report) {
    std::cout << doc;
  }
  if (!as_report)
    std::cout << results.size() - failed << "/" << results.size()
              << " checks passed\n";
  return failed == 0 ? 0 : 3;
}

// ---- quantize --------------------------------------------------------------

int cmd_quantize(const std::string& config_path, const std::string& out_dir,
                 int cutoff_override, double tol_override) {
  ConfiguredSystem cfg = build_configured(load_json(config_path));
  if (cutoff_override > 0) cfg.cutoff = cutoff_override;
  if (tol_override > 0) cfg.tol = tol_override;
  QuantizedSystem q = quantize(cfg.phase, cfg.dynamics, cfg.cutoff, cfg.tol);

  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(q.fock.basis_hash()));

  json summary;
  summary["species"] = species_name(q.species);
  summary["phase_dim"] = cfg.phase.dim();
  summary["modes"] = q.modes();
  summary["cutoff"] = q.fock.cutoff;
  summary["fock_dim"] = q.fock.dim();
  summary["basis_hash"] = std::string(hash);
  summary["h_z_min"] = q.h_z_min;
  summary["r_vacuum"] = q.r_vacuum;
  summary["r_positive"] = q.r_positive;
  std::vector<double> energies;
  for (double e : herm_eig(q.h_z, "cli").values) energies.push_back(e);
  summary["one_particle_energies"] = energies;

  std::cout << "species:        " << species_name(q.species) << "\n"
            << "phase dim:      " << cfg.phase.dim() << "\n"
            << "modes:          " << q.modes() << "\n"
            << "fock dim:       " << q.fock.dim() << " (cutoff "
            << q.fock.cutoff << ")\n"
            << "basis hash:     " << hash << "\n"
            << "h_z min eig:    " << sci(q.h_z_min) << "\n"
            << "|H vacuum|:     " << sci(q.r_vacuum) << "\n";

  if (!out_dir.empty()) {
    std::filesystem::path dir(out_dir);
    std::string tag = std::string("basis:") + hash;
    save_matrix(dir / "hamiltonian.bin", q.hamiltonian,
                "dGamma(h_z) " + tag);
    save_matrix(dir / "h_z.bin", q.h_z, "one-particle energy");
    save_matrix(dir / "number.bin", number_op(q.fock), "dGamma(1) " + tag);
    save_matrix(dir / "parity.bin", parity_op(q.fock), "Gamma(-1) " + tag);
    json files = {"hamiltonian.bin", "h_z.bin", "number.bin", "parity.bin"};
    if (is_charged(q.species)) {
      save_matrix(dir / "charge.bin", q.charge, "dGamma(q_z) " + tag);
      save_matrix(dir / "q_z.bin", q.q_z, "one-particle charge");
      files.push_back("charge.bin");
      files.push_back("q_z.bin");
    }
    summary["files"] = files;
    atomic_write(dir / "summary.json", summary.dump(2) + "\n");
    std::cout << "operators written to " << dir.string() << "\n";
  }
  return 0;
}

// ---- spectrum ---------------------------------------------------------------

int cmd_spectrum(const std::string& config_path, int levels,
                 int cutoff_override) {
  ConfiguredSystem cfg = build_configured(load_json(config_path));
  if (cutoff_override > 0) cfg.cutoff = cutoff_override;
  QuantizedSystem q = quantize(cfg.phase, cfg.dynamics, cfg.cutoff, cfg.tol);

  std::cout << "species: " << species_name(q.species) << "\n";
  std::cout << "one-particle energies:";
  RVec e = herm_eig(q.h_z, "cli").values;
  for (Eigen::Index i = 0; i < e.size(); ++i) std::cout << " " << e(i);
  std::cout << "\n";
  if (is_charged(q.species)) {
    RVec c = herm_eig(q.q_z, "cli").values;
    std::cout << "one-particle charges:";
    for (Eigen::Index i = 0; i < c.size(); ++i)
      std::cout << " " << std::round(c(i));
    std::cout << "\n";
  }
  if (levels > 0) {
    require(q.fock.dim() <= 2048, ErrorCode::SizeGuard,
            "spectrum --levels needs fock dim <= 2048, got " +
                std::to_string(q.fock.dim()));
    RVec all = herm_eig(q.hamiltonian, "cli").values;
    std::cout << "lowest levels:";
    for (Eigen::Index i = 0; i < std::min<Eigen::Index>(levels, all.size());
         ++i)
      std::cout << " " << all(i);
    std::cout << "\n";
  }
  return 0;
}

// ---- symmetries -------------------------------------------------------------

int cmd_symmetries(const std::string& config_path, int cutoff_override) {
  json cfg = load_json(config_path);
  ConfiguredSystem sys = build_configured(cfg);
  if (cutoff_override > 0) sys.cutoff = cutoff_override;
  QuantizedSystem q = quantize(sys.phase, sys.dynamics, sys.cutoff, sys.tol);
  if (!cfg.contains("symmetries")) config_fail("/symmetries", "missing");
  const json& list = cfg.at("symmetries");
  if (!list.is_array()) config_fail("/symmetries", "expected an array");

  std::optional<OperatorMatrix> chi_found, tau_found;
  bool all_ok = true;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string where = "/symmetries/" + std::to_string(i);
    const json& e = list[i];
    const std::string kind_s = field_or<std::string>(e, "kind", "", where);
    if (!e.contains("matrix")) config_fail(where + "/matrix", "missing");
    Mat m = parse_matrix(e.at("matrix"), where + "/matrix");
    bool anti = field_or<bool>(e, "antilinear", false, where);
    OperatorMatrix op =
        make_operator(m, anti ? Linearity::Antilinear : Linearity::Linear);

    if (kind_s == "bogoliubov") {
      BogoliubovResult r = bogoliubov_action(q, op, sys.tol);
      std::cout << "bogoliubov: contract residual=" << sci(r.r_contract)
                << " structure residual=" << sci(r.r_structure)
                << (r.implemented ? " implemented, covariance residual=" +
                                        sci(r.r_implementer)
                                  : " not implemented in Gamma form")
                << "\n";
      continue;
    }
    SymmetryKind kind;
    if (kind_s == "time_reversal") kind = SymmetryKind::TimeReversal;
    else if (kind_s == "charge_reversal") kind = SymmetryKind::ChargeReversal;
    else if (kind_s == "parity") kind = SymmetryKind::Parity;
    else
      config_fail(where + "/kind",
                  "expected time_reversal, charge_reversal, parity or "
                  "bogoliubov");

    SymmetryOp sym = validate_discrete_symmetry(sys.phase, sys.dynamics, op,
                                                kind, sys.tol);
    LiftedSymmetry lifted = lift(q, sym, sys.tol);
    std::cout << kind_s << ": square=" << (sym.square_sign > 0 ? "+1" : "-1")
              << " r_form=" << sci(sym.r_form)
              << " r_dynamics=" << sci(sym.r_dynamics)
              << " r_H=" << sci(lifted.r_hamiltonian);
    if (is_charged(q.species))
      std::cout << " r_Q=" << sci(lifted.r_charge);
    std::cout << " r_fields=" << sci(lifted.r_fields)
              << " r_square=" << sci(lifted.r_square)
              << " lift_square=" << (lifted.square_sign > 0 ? "1" : "(-1)^N")
              << "\n";
    double worst = std::max({lifted.r_hamiltonian, lifted.r_fields,
                             lifted.r_square, lifted.r_charge});
    if (worst > 1e-8) all_ok = false;
    if (kind == SymmetryKind::ChargeReversal) chi_found = op;
    if (kind == SymmetryKind::TimeReversal && op.antilinear()) tau_found = op;
  }

  if (chi_found && tau_found) {
    ChiTauClass cls = normalize_chi_tau(*chi_found, *tau_found, sys.tol);
    std::cout << "chi-tau class: row " << cls.row << " (chi^2="
              << (cls.chi_sq > 0 ? "+1" : "-1") << ", tau^2="
              << (cls.tau_sq > 0 ? "+1" : "-1") << ", (chi tau)^2="
              << (cls.chi_tau_sq > 0 ? "+1" : "-1") << ")"
              << (cls.rescaled ? " after rescaling chi by i" : "") << "\n";
  }
  return all_ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "fockq: positive-energy Fock quantization of linear dynamics"};
  app.require_subcommand(1);

  CheckOptions copt;
  std::vector<std::string> names;
  std::string out_path;

  CLI::App* check = app.add_subcommand("check", "run verification checks");
  check->add_option("names", names, "check names (default: all)");
  check->add_option("--seed", copt.seed, "base RNG seed");
  check->add_option("--tol", copt.tol, "base tolerance");
  check->add_option("--cutoff", copt.cutoff, "bosonic truncation");
  check->add_option("--trials", copt.trials, "random systems per check");
  check->add_option("--jobs", copt.jobs, "worker threads");
  check->add_option("--out", out_path, "also write the JSON report here");

  CLI::App* report =
      app.add_subcommand("report", "emit the full JSON verification report");
  report->add_option("--seed", copt.seed, "base RNG seed");
  report->add_option("--tol", copt.tol, "base tolerance");
  report->add_option("--cutoff", copt.cutoff, "bosonic truncation");
  report->add_option("--trials", copt.trials, "random systems per check");
  report->add_option("--jobs", copt.jobs, "worker threads");
  report->add_option("--out", out_path, "output path (default: stdout)");

  std::string config_path, out_dir;
  int cutoff_override = 0, levels = 0;
  double tol_override = 0;

  CLI::App* quant =
      app.add_subcommand("quantize", "build and export the Fock operators");
  quant->add_option("--config", config_path, "system configuration JSON")
      ->required();
  quant->add_option("--out", out_dir, "output directory for the operators");
  quant->add_option("--cutoff", cutoff_override, "override the cutoff");
  quant->add_option("--tol", tol_override, "override the tolerance");

  CLI::App* spec = app.add_subcommand("spectrum", "print energies");
  spec->add_option("--config", config_path, "system configuration JSON")
      ->required();
  spec->add_option("--levels", levels, "also print the lowest many-body levels");
  spec->add_option("--cutoff", cutoff_override, "override the cutoff");

  CLI::App* syms = app.add_subcommand(
      "symmetries", "validate and lift the configured discrete symmetries");
  syms->add_option("--config", config_path, "system configuration JSON")
      ->required();
  syms->add_option("--cutoff", cutoff_override, "override the cutoff");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) return cmd_check(names, copt, out_path, false);
    if (report->parsed()) return cmd_check({}, copt, out_path, true);
    if (quant->parsed())
      return cmd_quantize(config_path, out_dir, cutoff_override, tol_override);
    if (spec->parsed())
      return cmd_spectrum(config_path, levels, cutoff_override);
    if (syms->parsed()) return cmd_symmetries(config_path, cutoff_override);
  } catch (const fockq::Error& e) {
    std::cerr << "error [" << error_code_name(e.code()) << "]: " << e.what()
              << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
