// Python bindings: model builders, quantization, Fock operators, and the
// verification check runner.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fockq/models.hpp"
#include "fockq/quantize.hpp"
#include "fockq/report.hpp"

namespace py = pybind11;
using namespace fockq;

namespace {

Species species_or_throw(const std::string& name) {
  auto sp = parse_species(name);
  if (!sp)
    throw py::value_error(
        "unknown species '" + name +
        "' (expected neutral_bosonic, neutral_fermionic, charged_bosonic "
        "or charged_fermionic)");
  return *sp;
}

ModelSystem model_from_matrices(const std::string& species, const Mat& form,
                                const Mat& generator,
                                const std::optional<Mat>& energy_form,
                                double tol) {
  Species sp = species_or_throw(species);
  FormKind kind =
      is_charged(sp) ? FormKind::Sesquilinear : FormKind::RealBilinear;
  std::optional<FormMatrix> energy;
  if (energy_form) energy = make_form(*energy_form, kind);
  ModelSystem m;
  m.phase = build_phase_space(sp, make_form(form, kind), energy, tol);
  m.dynamics = build_dynamics(m.phase, generator, tol);
  return m;
}

ChainSpec chain_spec(int sites, double mass, double coupling, bool periodic) {
  ChainSpec spec;
  spec.sites = sites;
  spec.mass = mass;
  spec.coupling = coupling;
  spec.periodic = periodic;
  return spec;
}

RVec energies_of(const Mat& h) {
  return Eigen::SelfAdjointEigenSolver<Mat>(h).eigenvalues();
}

CheckOptions make_options(std::uint64_t seed, double tol, int cutoff,
                          int trials, int jobs) {
  CheckOptions opt;
  opt.seed = seed;
  opt.tol = tol;
  opt.cutoff = cutoff;
  opt.trials = trials;
  opt.jobs = jobs;
  return opt;
}

}  // namespace

PYBIND11_MODULE(_fockq, m) {
  m.doc() =
      "Positive-energy Fock quantization of finite-dimensional linear "
      "dynamics: neutral/charged, bosonic/fermionic.";

  py::register_exception<Error>(m, "FockError");

  py::class_<ModelSystem>(m, "Model",
                          "A classical phase space with linear dynamics.")
      .def(py::init(&model_from_matrices), py::arg("species"),
           py::arg("form"), py::arg("generator"),
           py::arg("energy_form") = std::nullopt,
           py::arg("tol") = kDefaultTol)
      .def_property_readonly(
          "species",
          [](const ModelSystem& s) {
            return std::string(species_name(s.phase.species));
          })
      .def_property_readonly(
          "dim", [](const ModelSystem& s) { return s.phase.dim(); })
      .def_property_readonly(
          "form", [](const ModelSystem& s) { return s.phase.form.entries; })
      .def_property_readonly("generator",
                             [](const ModelSystem& s) {
                               return s.dynamics.generator.entries;
                             })
      .def("__repr__", [](const ModelSystem& s) {
        return "<Model " + std::string(species_name(s.phase.species)) +
               " dim=" + std::to_string(s.phase.dim()) + ">";
      });

  py::class_<QuantizedSystem, std::shared_ptr<QuantizedSystem>>(
      m, "System", "A quantized system on a (truncated) Fock space.")
      .def_property_readonly(
          "species",
          [](const QuantizedSystem& s) {
            return std::string(species_name(s.species));
          })
      .def_property_readonly("modes", &QuantizedSystem::modes)
      .def_property_readonly("dim", &QuantizedSystem::dim)
      .def_property_readonly(
          "fock_dim", [](const QuantizedSystem& s) { return s.fock.dim(); })
      .def_property_readonly(
          "cutoff", [](const QuantizedSystem& s) { return s.fock.cutoff; })
      .def_readonly("h_z", &QuantizedSystem::h_z,
                    "one-particle energy, hermitian positive")
      .def_readonly("q_z", &QuantizedSystem::q_z,
                    "one-particle charge (charged species)")
      .def_readonly("hamiltonian", &QuantizedSystem::hamiltonian,
                    "dGamma(h_z)")
      .def_readonly("charge", &QuantizedSystem::charge,
                    "dGamma(q_z), empty for neutral species")
      .def_readonly("h_z_min", &QuantizedSystem::h_z_min)
      .def_readonly("r_vacuum", &QuantizedSystem::r_vacuum)
      .def_readonly("r_positive", &QuantizedSystem::r_positive)
      .def_property_readonly(
          "number", [](const QuantizedSystem& s) { return number_op(s.fock); })
      .def_property_readonly(
          "parity", [](const QuantizedSystem& s) { return parity_op(s.fock); })
      .def_property_readonly(
          "vacuum", [](const QuantizedSystem& s) { return vacuum(s.fock); })
      .def_property_readonly(
          "one_particle_energies",
          [](const QuantizedSystem& s) { return energies_of(s.h_z); },
          "eigenvalues of h_z, ascending")
      .def_property_readonly(
          "energies",
          [](const QuantizedSystem& s) { return energies_of(s.hamiltonian); },
          "eigenvalues of the many-body Hamiltonian, ascending")
      .def(
          "field",
          [](const QuantizedSystem& s, const Vec& y) {
            return field(s, y).matrix;
          },
          py::arg("y"),
          "neutral field phi(y) = a*(z(y)) + a(z(y)), C-linear in y")
      .def(
          "psi_star",
          [](const QuantizedSystem& s, const Vec& y) {
            return psi_star(s, y).matrix;
          },
          py::arg("y"), "charged creation field, C-linear in y")
      .def(
          "psi",
          [](const QuantizedSystem& s, const Vec& y) {
            return psi(s, y).matrix;
          },
          py::arg("y"), "charged annihilation field, antilinear in y")
      .def("zeta", &QuantizedSystem::zeta, py::arg("y"),
           "holomorphic coordinates of a phase-space vector")
      .def("unzeta", &QuantizedSystem::unzeta, py::arg("z"),
           "phase-space vector of holomorphic coordinates")
      .def("__repr__", [](const QuantizedSystem& s) {
        return "<System " + std::string(species_name(s.species)) +
               " modes=" + std::to_string(s.modes()) +
               " fock_dim=" + std::to_string(s.fock.dim()) + ">";
      });

  m.def(
      "quantize",
      [](const ModelSystem& model, int cutoff, double tol) {
        return std::make_shared<QuantizedSystem>(
            quantize(model.phase, model.dynamics, cutoff, tol));
      },
      py::arg("model"), py::arg("cutoff") = 6, py::arg("tol") = kDefaultTol,
      "Quantize a model on the Fock space truncated at `cutoff` total "
      "quanta (fermionic spaces are always complete).");

  m.def("harmonic_chain",
        [](int sites, double mass, double coupling, bool periodic,
           double tol) {
          return harmonic_chain(chain_spec(sites, mass, coupling, periodic),
                                tol);
        },
        py::arg("sites") = 4, py::arg("mass") = 1.0,
        py::arg("coupling") = 0.5, py::arg("periodic") = true,
        py::arg("tol") = kDefaultTol,
        "Coupled harmonic oscillators, neutral bosonic.");

  m.def("fermion_chain",
        [](int sites, double mass, double coupling, bool periodic,
           double tol) {
          return fermion_chain(chain_spec(sites, mass, coupling, periodic),
                               tol);
        },
        py::arg("sites") = 4, py::arg("mass") = 1.0,
        py::arg("coupling") = 0.5, py::arg("periodic") = true,
        py::arg("tol") = kDefaultTol,
        "Staggered-mass hopping fermions, charged fermionic.");

  m.def("majorana_chain", &majorana_chain, py::arg("sites"),
        py::arg("coupling"), py::arg("tol") = kDefaultTol,
        "Self-adjoint nearest-neighbour chain, neutral fermionic.");

  m.def(
      "random_system",
      [](const std::string& species, Eigen::Index dim, std::uint64_t seed,
         double tol) {
        return random_system(species_or_throw(species), dim, seed, tol);
      },
      py::arg("species"), py::arg("dim"), py::arg("seed"),
      py::arg("tol") = kDefaultTol,
      "Seeded stable system with one-particle energies inside (0.3, 2).");

  m.def("harmonic_dispersion",
        [](int sites, double mass, double coupling, bool periodic) {
          return harmonic_dispersion(
              chain_spec(sites, mass, coupling, periodic));
        },
        py::arg("sites") = 4, py::arg("mass") = 1.0,
        py::arg("coupling") = 0.5, py::arg("periodic") = true,
        "One-particle energies of the harmonic chain, ascending.");

  m.def("majorana_dispersion", &majorana_dispersion, py::arg("sites"),
        py::arg("coupling"),
        "One-particle energies of the self-adjoint chain, ascending.");

  m.def("subset_sums", &subset_sums, py::arg("energies"),
        "All sums over subsets of the energies, ascending.");

  m.def(
      "run_checks",
      [](const std::vector<std::string>& names, std::uint64_t seed,
         double tol, int cutoff, int trials, int jobs) {
        CheckOptions opt = make_options(seed, tol, cutoff, trials, jobs);
        return serialize_report(run_checks(names, opt), opt);
      },
      py::arg("names") = std::vector<std::string>{}, py::arg("seed") = 1,
      py::arg("tol") = kDefaultTol, py::arg("cutoff") = 6,
      py::arg("trials") = 3, py::arg("jobs") = 1,
      "Run the named verification checks (all when empty) and return the "
      "deterministic JSON report.");

  m.def("check_names", [] {
    std::vector<std::string> names;
    for (const CheckSpec& spec : check_registry()) names.push_back(spec.name);
    return names;
  });

  m.attr("default_tol") = kDefaultTol;
  m.attr("__version__") = "0.1.0";
}
