#pragma once

#include <vector>

#include "qbsim/types.hpp"

namespace qbsim::qops {

// Full-model builders refuse larger N to cap 2^N memory.
inline constexpr int kMaxFullAtoms = 12;

// Single-qubit operators in the fixed basis ordering (|e>, |g>).
// sigma_minus |e> = |g>.
ComplexMatrix sigma_minus_1q();
ComplexMatrix sigma_plus_1q();
ComplexMatrix sigma_x_1q();
ComplexMatrix excited_projector_1q();

// Per-site ladder operators on the 2^N-dimensional product space.
// Sites are 0-based; site 0 is the leftmost (most significant) tensor factor.
struct SiteOperatorSet {
    int n_atoms = 0;
    std::vector<ComplexMatrix> sigma_minus;
    std::vector<ComplexMatrix> sigma_plus;
    std::vector<ComplexMatrix> sigma_x;

    Eigen::Index dim() const { return Eigen::Index(1) << n_atoms; }
};

SiteOperatorSet build_site_operators(int n_atoms);

// Embeds a single-qubit operator at one site, identity elsewhere.
ComplexMatrix embed_at_site(const ComplexMatrix& op, int site, int n_atoms);

// Collective spin-(N/2) operators in the Dicke basis, dim N+1,
// ordered by descending magnetic quantum number m = N/2 ... -N/2.
struct CollectiveOps {
    int n_atoms = 0;
    ComplexMatrix jx, jy, jz, jplus, jminus;

    Eigen::Index dim() const { return n_atoms + 1; }
    double j() const { return 0.5 * n_atoms; }
};

CollectiveOps build_collective_ops(int n_atoms);

// Columns are the Dicke states |N/2, m> (m descending) expressed in the
// 2^N site basis; shape 2^N x (N+1).
ComplexMatrix dicke_basis_matrix(int n_atoms);

struct DickeProjection {
    ComplexMatrix block;  // (N+1)x(N+1) block of rho in the symmetric subspace, not renormalized
    double population;    // trace of the block; < 1 when weight leaked outside max-j sector
};

DickeProjection project_to_dicke(const ComplexMatrix& rho_full, int n_atoms);

}  // namespace qbsim::qops
