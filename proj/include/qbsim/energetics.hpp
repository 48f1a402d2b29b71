#pragma once

#include "qbsim/lindblad.hpp"
#include "qbsim/types.hpp"

namespace qbsim::energetics {

enum class Basis { site, dicke };

// energy = ergotropy + passive_energy by construction; 0 <= ergotropy <= energy.
struct EnergyReport {
    double energy = 0.0;
    double ergotropy = 0.0;
    double passive_energy = 0.0;
    Basis basis = Basis::site;
};

// Bare battery Hamiltonian with ground energy zero.
// Site basis: omega0 * sum_j |e><e|_j; Dicke basis: omega0 * (Jz + N/2).
ComplexMatrix battery_hamiltonian_site(int n_atoms, double omega0 = 1.0);
ComplexMatrix battery_hamiltonian_dicke(int n_atoms, double omega0 = 1.0);

// Tr[H_B rho].
double stored_energy(const ComplexMatrix& rho, const ComplexMatrix& h_b);

// Per-atom energy <Jz>/N + 1/2 of a Dicke-basis state, units of omega0.
double stored_energy_per_atom_dicke(const ComplexMatrix& rho_dicke);

// Passive-state decomposition: rho eigenvalues descending against H_B
// eigenvalues ascending.
EnergyReport ergotropy(const ComplexMatrix& rho, const ComplexMatrix& h_b,
                       Basis basis = Basis::site);

struct TrajectoryExtrema {
    double e_max = 0.0;
    double w_max = 0.0;
    double t_at_e_max = 0.0;
    double t_at_w_max = 0.0;
};

// Maxima of stored energy and ergotropy over the sampled grid.
TrajectoryExtrema trajectory_extrema(const lindblad::Trajectory& traj,
                                     const ComplexMatrix& h_b);

}  // namespace qbsim::energetics
