#pragma once

#include <vector>

#include "qbsim/integrate.hpp"
#include "qbsim/types.hpp"

namespace qbsim::lindblad {

// Dense eigensolver budget: Hilbert dimension D with D^2 <= this.
inline constexpr Eigen::Index kSuperopBudget = 4096;

// Coefficient matrix over jump indices for the dissipator
//   sum_{a,b} C(a,b) [ A_a rho A_b^dag - {A_b^dag A_a, rho}/2 ].
// Hermitian C preserves Hermiticity; positive semidefinite C gives a CP map.
class RateMatrix {
public:
    explicit RateMatrix(ComplexMatrix entries);

    static RateMatrix diagonal(const std::vector<double>& rates);

    // Two-jump rate set in the sigma^{+-} labeling of the dissipator
    //   sum_{mu,nu} G_{mu nu} [ s^mu rho s^nu - {s^nu s^mu, rho}/2 ],
    // with jumps ordered {A_plus, A_minus} and G_{--} = conj(G_{++}):
    //   decay = G_{-+}, pump = G_{+-}, anomalous = G_{++}.
    static RateMatrix plus_minus(double decay, double pump, Complex anomalous);

    const ComplexMatrix& entries() const { return entries_; }
    Eigen::Index size() const { return entries_.rows(); }

    // True iff PSD to relative tolerance 1e-12.
    bool cp_flag() const { return cp_flag_; }
    double min_eigenvalue() const { return min_eig_; }

private:
    ComplexMatrix entries_;
    double min_eig_ = 0.0;
    bool cp_flag_ = true;
};

// A Hamiltonian plus jump operators with a rate matrix; fully defines the
// Lindblad evolution rho' = -i[H, rho] + dissipator(rho).
class Generator {
public:
    Generator(ComplexMatrix hamiltonian, std::vector<ComplexMatrix> jumps, RateMatrix rates);

    const ComplexMatrix& hamiltonian() const { return hamiltonian_; }
    const std::vector<ComplexMatrix>& jumps() const { return jumps_; }
    const RateMatrix& rates() const { return rates_; }
    Eigen::Index dim() const { return hamiltonian_.rows(); }

    // Precomputed A_b^dag A_a weighted by C(a,b), summed: the anticommutator kernel.
    const ComplexMatrix& anticommutator_kernel() const { return anti_kernel_; }

private:
    ComplexMatrix hamiltonian_;
    std::vector<ComplexMatrix> jumps_;
    RateMatrix rates_;
    ComplexMatrix anti_kernel_;
};

// -i[H, rho] + sum_{a,b} C(a,b) (A_a rho A_b^dag - {A_b^dag A_a, rho}/2)
ComplexMatrix apply_generator(const Generator& g, const ComplexMatrix& rho);

struct Superoperator {
    Eigen::Index hilbert_dim = 0;
    ComplexMatrix matrix;  // hilbert_dim^2 square, column-stacking convention
};

// Kronecker-product assembly of the matrix form of apply_generator.
// OpenMP-parallel over row blocks; bit-identical for any thread count.
Superoperator build_superoperator(const Generator& g);

// Serial reference: columns are vec(apply_generator(E_kl)) over matrix units.
// Kept for tests and benchmarks; independent of the Kronecker path.
Superoperator build_superoperator_reference(const Generator& g);

struct EvolveOptions {
    double rel_tol = 1e-9;   // local relative error tolerance
    double abs_tol = 1e-12;
    double positivity_floor = -1e-6;  // abort below this minimum eigenvalue
    bool monitor_positivity = true;
};

// Time-stamped record of density matrices with per-sample diagnostics.
struct Trajectory {
    std::vector<double> times;
    std::vector<ComplexMatrix> states;
    std::vector<double> trace_defect;  // |tr(rho) - 1|
    std::vector<double> min_eig;       // smallest eigenvalue of hermitized rho
    std::vector<double> herm_defect;   // ||rho - rho^dag||_max

    std::size_t size() const { return times.size(); }
};

// Adaptive integration of rho' = L(rho) sampled on t_grid (ascending, t_grid[0] >= 0).
Trajectory evolve(const Generator& g, const ComplexMatrix& rho0,
                  const std::vector<double>& t_grid, const EvolveOptions& opts = {});

struct SteadyState {
    ComplexMatrix rho;  // Hermitian, trace one
    int degeneracy = 1; // dimension of the numerical null space of L
};

// Null space of the superoperator by singular-value decomposition, with the
// trace constraint imposed on the null-space coordinates. Relative singular
// value threshold `null_tol`.
SteadyState steady_state(const Generator& g, double null_tol = 1e-10);

// All eigenvalues of the Liouvillian, sorted by descending real part
// (ties by ascending imaginary part).
std::vector<Complex> spectrum(const Generator& g);

}  // namespace qbsim::lindblad
