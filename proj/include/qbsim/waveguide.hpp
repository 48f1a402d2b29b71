#pragma once

#include <vector>

#include "qbsim/lindblad.hpp"
#include "qbsim/types.hpp"

namespace qbsim::waveguide {

enum class Setup { I = 1, II = 2 };

// Physical parameters of one battery configuration.
struct ModelSpec {
    Setup setup = Setup::I;
    int n_atoms = 1;
    double gamma_r = 0.5;  // decay rate into the right-propagating mode
    double gamma_l = 0.5;  // decay rate into the left-propagating mode
    double g = 0.0;        // dimensionless feedback strength
    double omega = 0.0;    // driving amplitude, rate units
    // phi[0] is the mirror phase phi_1 (setup II); phi[s] for s >= 1 are the
    // inter-atom propagation phases phi_{s+1}. Empty means all 2*pi.
    std::vector<double> phi;
    double omega0 = 1.0;   // bare transition frequency; energy bookkeeping only

    double gamma() const { return gamma_r + gamma_l; }
    int n_index() const { return setup == Setup::I ? 1 : 2; }
    bool achiral() const;
    // Phase list resolved to length n_atoms (defaults filled with 2*pi).
    std::vector<double> resolved_phi() const;
    void validate() const;
};

// Rates of the single-atom master equations in the sigma^{+-} labeling.
struct PlusMinusRates {
    double decay = 0.0;      // G_{-+}
    double pump = 0.0;       // G_{+-}
    Complex anomalous = 0.0; // G_{++} = conj(G_{--})
};

// Closed-form single-atom rate formulas for either setup.
PlusMinusRates single_atom_rates(const ModelSpec& spec);

// Frequency shift of the setup-II single atom, sqrt(gr*gl)*sin(phi_1)*(g+1).
double single_atom_frequency_shift(const ModelSpec& spec);

// Collective-model rates (achiral, phases at multiples of 2*pi).
PlusMinusRates collective_rates(const ModelSpec& spec);

// Full N-atom master equation of setup I: exchange Hamiltonian, measurement
// feedback, drive; jumps {L_R - iF, L_L}.
lindblad::Generator build_full_setup1(const ModelSpec& spec);

// Full N-atom master equation of setup II (mirror at the left end):
// single jump e^{i phi_1} S_R L_L + L_R - iF plus the coherent-feedback term.
lindblad::Generator build_full_setup2(const ModelSpec& spec);

// Dispatch on spec.setup.
lindblad::Generator build_full(const ModelSpec& spec);

// Single-atom reductions with explicit rate formulas.
lindblad::Generator build_single_atom(const ModelSpec& spec);

// Unified collective model in the Dicke basis (dim N+1):
//   H = 2 Omega Jx - (n gamma g / 2) {Jx, Jy}, jumps {J+, J-}.
lindblad::Generator build_collective(const ModelSpec& spec);

}  // namespace qbsim::waveguide
