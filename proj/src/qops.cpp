#include "qbsim/qops.hpp"

#include <cmath>

namespace qbsim::qops {

ComplexMatrix sigma_minus_1q() {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(1, 0) = 1.0;  // |g><e|
    return m;
}

ComplexMatrix sigma_plus_1q() {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    return m;
}

ComplexMatrix sigma_x_1q() {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

ComplexMatrix excited_projector_1q() {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = 1.0;
    return m;
}

ComplexMatrix embed_at_site(const ComplexMatrix& op, int site, int n_atoms) {
    if (site < 0 || site >= n_atoms)
        throw ValidationError("embed_at_site: site index out of range");
    const Eigen::Index left = Eigen::Index(1) << site;
    const Eigen::Index right = Eigen::Index(1) << (n_atoms - site - 1);
    ComplexMatrix out = kron(ComplexMatrix::Identity(left, left), op);
    return kron(out, ComplexMatrix::Identity(right, right));
}

SiteOperatorSet build_site_operators(int n_atoms) {
    if (n_atoms < 1 || n_atoms > kMaxFullAtoms)
        throw SizeError("build_site_operators: N must be in [1, " +
                        std::to_string(kMaxFullAtoms) + "], got " + std::to_string(n_atoms));
    SiteOperatorSet ops;
    ops.n_atoms = n_atoms;
    ops.sigma_minus.reserve(n_atoms);
    ops.sigma_plus.reserve(n_atoms);
    ops.sigma_x.reserve(n_atoms);
    for (int s = 0; s < n_atoms; ++s) {
        ops.sigma_minus.push_back(embed_at_site(sigma_minus_1q(), s, n_atoms));
        ops.sigma_plus.push_back(embed_at_site(sigma_plus_1q(), s, n_atoms));
        ops.sigma_x.push_back(embed_at_site(sigma_x_1q(), s, n_atoms));
    }
    return ops;
}

CollectiveOps build_collective_ops(int n_atoms) {
    if (n_atoms < 1)
        throw SizeError("build_collective_ops: N must be >= 1");
    const Eigen::Index dim = n_atoms + 1;
    const double j = 0.5 * n_atoms;

    CollectiveOps ops;
    ops.n_atoms = n_atoms;
    ops.jz = ComplexMatrix::Zero(dim, dim);
    ops.jplus = ComplexMatrix::Zero(dim, dim);
    // Basis index k holds m = j - k (descending m).
    for (Eigen::Index k = 0; k < dim; ++k) {
        const double m = j - double(k);
        ops.jz(k, k) = m;
        if (k > 0) {
            // J+ |j, m> = sqrt(j(j+1) - m(m+1)) |j, m+1>; |j, m+1> sits at k-1.
            ops.jplus(k - 1, k) = std::sqrt(j * (j + 1) - m * (m + 1));
        }
    }
    ops.jminus = ops.jplus.adjoint();
    ops.jx = 0.5 * (ops.jplus + ops.jminus);
    ops.jy = (ops.jplus - ops.jminus) / (2.0 * kI);
    return ops;
}

ComplexMatrix dicke_basis_matrix(int n_atoms) {
    if (n_atoms < 1 || n_atoms > kMaxFullAtoms)
        throw SizeError("dicke_basis_matrix: N out of range");
    const Eigen::Index full_dim = Eigen::Index(1) << n_atoms;
    ComplexMatrix basis(full_dim, n_atoms + 1);

    // |N/2, N/2> = |e...e>; in the (|e>,|g>) ordering that is index 0.
    ComplexVector state = ComplexVector::Zero(full_dim);
    state(0) = 1.0;
    basis.col(0) = state;

    // Repeated application of J- = sum_j sigma_j^-, renormalized.
    const auto site = build_site_operators(n_atoms);
    ComplexMatrix jminus_full = ComplexMatrix::Zero(full_dim, full_dim);
    for (const auto& sm : site.sigma_minus) jminus_full += sm;
    for (int k = 1; k <= n_atoms; ++k) {
        state = jminus_full * state;
        state.normalize();
        basis.col(k) = state;
    }
    return basis;
}

DickeProjection project_to_dicke(const ComplexMatrix& rho_full, int n_atoms) {
    require_density_matrix(rho_full, "project_to_dicke");
    const Eigen::Index full_dim = Eigen::Index(1) << n_atoms;
    if (rho_full.rows() != full_dim)
        throw ValidationError("project_to_dicke: state dimension does not match 2^N");
    const ComplexMatrix basis = dicke_basis_matrix(n_atoms);
    DickeProjection proj;
    proj.block = basis.adjoint() * rho_full * basis;
    proj.population = proj.block.trace().real();
    return proj;
}

}  // namespace qbsim::qops
