#include "qbsim/energetics.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "qbsim/qops.hpp"

namespace qbsim::energetics {

ComplexMatrix battery_hamiltonian_site(int n_atoms, double omega0) {
    const Eigen::Index dim = Eigen::Index(1) << n_atoms;
    ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
    // Basis bit 0 = |e>; energy counts excited atoms.
    for (Eigen::Index b = 0; b < dim; ++b) {
        const int ground_bits = __builtin_popcountll(static_cast<unsigned long long>(b));
        h(b, b) = omega0 * double(n_atoms - ground_bits);
    }
    return h;
}

ComplexMatrix battery_hamiltonian_dicke(int n_atoms, double omega0) {
    const auto col = qops::build_collective_ops(n_atoms);
    return omega0 * (col.jz + 0.5 * n_atoms * ComplexMatrix::Identity(col.dim(), col.dim()));
}

double stored_energy(const ComplexMatrix& rho, const ComplexMatrix& h_b) {
    require_density_matrix(rho, "stored_energy");
    require_square(h_b, "stored_energy");
    if (rho.rows() != h_b.rows())
        throw ValidationError("stored_energy: state and Hamiltonian dimensions differ");
    if (!is_hermitian(h_b))
        throw ValidationError("stored_energy: H_B must be Hermitian");
    return (h_b * rho).trace().real();
}

double stored_energy_per_atom_dicke(const ComplexMatrix& rho_dicke) {
    const int n_atoms = static_cast<int>(rho_dicke.rows()) - 1;
    const auto h_b = battery_hamiltonian_dicke(n_atoms, 1.0);
    return stored_energy(rho_dicke, h_b) / double(n_atoms);
}

EnergyReport ergotropy(const ComplexMatrix& rho, const ComplexMatrix& h_b, Basis basis) {
    require_density_matrix(rho, "ergotropy");
    if (rho.rows() != h_b.rows())
        throw ValidationError("ergotropy: state and Hamiltonian dimensions differ");
    if (!is_hermitian(h_b))
        throw ValidationError("ergotropy: H_B must be Hermitian");

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> rho_es(hermitize(rho), Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> hb_es(hermitize(h_b), Eigen::EigenvaluesOnly);

    // rho populations descending, H_B levels ascending.
    Eigen::VectorXd r = rho_es.eigenvalues();
    Eigen::VectorXd eps = hb_es.eigenvalues();
    std::sort(r.data(), r.data() + r.size(), std::greater<double>());

    double passive = 0.0;
    for (Eigen::Index n = 0; n < r.size(); ++n) passive += r(n) * eps(n);

    EnergyReport rep;
    rep.basis = basis;
    rep.energy = (h_b * rho).trace().real();
    double w = rep.energy - passive;
    if (w < 0.0 && w > -1e-12) w = 0.0;
    rep.ergotropy = w;
    rep.passive_energy = rep.energy - rep.ergotropy;
    return rep;
}

TrajectoryExtrema trajectory_extrema(const lindblad::Trajectory& traj,
                                     const ComplexMatrix& h_b) {
    if (traj.size() == 0)
        throw ValidationError("trajectory_extrema: empty trajectory");
    TrajectoryExtrema ext;
    ext.e_max = -std::numeric_limits<double>::infinity();
    ext.w_max = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const auto rep = ergotropy(traj.states[k], h_b);
        if (rep.energy > ext.e_max) {
            ext.e_max = rep.energy;
            ext.t_at_e_max = traj.times[k];
        }
        if (rep.ergotropy > ext.w_max) {
            ext.w_max = rep.ergotropy;
            ext.t_at_w_max = traj.times[k];
        }
    }
    return ext;
}

}  // namespace qbsim::energetics
