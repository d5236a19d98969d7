#pragma once

#include <cstdint>
#include <vector>

#include "fockq/phase_space.hpp"

namespace fockq {

// Translation-style lattice models used as ready-made inputs, plus seeded
// random generators producing valid systems of every species.

struct ChainSpec {
  int sites = 4;
  double mass = 1.0;      // oscillator mass gap / staggered on-site term
  double coupling = 0.5;  // spring constant / hopping amplitude
  bool periodic = true;
};

struct ModelSystem {
  PhaseSpace phase;
  LinearDynamics dynamics;
};

// Coupled harmonic oscillators: y = (q, p) in R^{2n}, Hamiltonian
// (1/2)(p.p + q.Kq) with K = mass^2 I + coupling L and L the chain
// Laplacian.  Neutral bosonic.
ModelSystem harmonic_chain(const ChainSpec& spec, double tol = kDefaultTol);

// One-particle energies of the harmonic chain, ascending.  Periodic chains
// use the closed form sqrt(mass^2 + 4 coupling sin^2(pi k / n)).
std::vector<double> harmonic_dispersion(const ChainSpec& spec);

// Tight-binding fermions with staggered on-site energy: charged fermionic
// space C^n with the standard scalar product and
// b = mass (-1)^j delta_jk + coupling (delta_{j,k+1} + delta_{j+1,k}).
ModelSystem fermion_chain(const ChainSpec& spec, double tol = kDefaultTol);

// Self-adjoint (Majorana-type) fermion chain: neutral fermionic space R^n
// with nu = I and generator a = coupling (S - S^T) on the open chain.
// Requires an even number of sites.
ModelSystem majorana_chain(int sites, double coupling,
                           double tol = kDefaultTol);

// Mode energies of the open self-adjoint chain, ascending:
// { 2 coupling cos(j pi / (n+1)) : j = 1..n/2 }.
std::vector<double> majorana_dispersion(int sites, double coupling);

// All 2^k subset sums of the given energies, ascending (the many-body
// spectrum of a free fermionic Hamiltonian on the full Fock space).
std::vector<double> subset_sums(const std::vector<double>& energies);

// Seeded random system of the requested species and phase-space dimension.
// The construction guarantees the dynamics is weakly stable with
// one-particle energies bounded into [0.3, 2], so downstream decompositions
// never hit degeneracies.  Neutral species require even dimension.
ModelSystem random_system(Species species, Eigen::Index dim,
                          std::uint64_t seed, double tol = kDefaultTol);

}  // namespace fockq
