#include "qbsim/lindblad.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace qbsim::lindblad {

RateMatrix::RateMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {
    if (entries_.size() == 0) return;  // jump-free generator
    require_square(entries_, "RateMatrix");
    const double scale = std::max(1.0, entries_.cwiseAbs().maxCoeff());
    if (hermiticity_defect(entries_) > 1e-12 * scale)
        throw ValidationError("RateMatrix: rate matrix must be Hermitian over jump indices");
    for (Eigen::Index k = 0; k < entries_.rows(); ++k) {
        if (entries_(k, k).real() < -1e-12 * scale)
            throw ValidationError("RateMatrix: diagonal rates must be >= 0");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitize(entries_),
                                                    Eigen::EigenvaluesOnly);
    min_eig_ = es.eigenvalues().minCoeff();
    cp_flag_ = min_eig_ >= -1e-12 * scale;
}

RateMatrix RateMatrix::diagonal(const std::vector<double>& rates) {
    ComplexMatrix m = ComplexMatrix::Zero(rates.size(), rates.size());
    for (std::size_t k = 0; k < rates.size(); ++k) m(k, k) = rates[k];
    return RateMatrix(std::move(m));
}

RateMatrix RateMatrix::plus_minus(double decay, double pump, Complex anomalous) {
    // Jumps ordered {A_plus, A_minus}. In the standard form
    // C(a,b) A_a rho A_b^dag the sigma^{+-} rates land as
    //   C = [ [G_{+-}, G_{++}], [conj(G_{++}), G_{-+}] ].
    ComplexMatrix m(2, 2);
    m(0, 0) = pump;
    m(0, 1) = anomalous;
    m(1, 0) = std::conj(anomalous);
    m(1, 1) = decay;
    return RateMatrix(std::move(m));
}

Generator::Generator(ComplexMatrix hamiltonian, std::vector<ComplexMatrix> jumps,
                     RateMatrix rates)
    : hamiltonian_(std::move(hamiltonian)), jumps_(std::move(jumps)), rates_(std::move(rates)) {
    require_square(hamiltonian_, "Generator");
    if (static_cast<Eigen::Index>(jumps_.size()) != rates_.size())
        throw ValidationError("Generator: rate matrix size must match the number of jumps");
    for (const auto& j : jumps_) {
        if (j.rows() != hamiltonian_.rows() || j.cols() != hamiltonian_.cols())
            throw ValidationError("Generator: all operators must share one dimension");
    }
    anti_kernel_ = ComplexMatrix::Zero(dim(), dim());
    const auto& c = rates_.entries();
    for (std::size_t a = 0; a < jumps_.size(); ++a)
        for (std::size_t b = 0; b < jumps_.size(); ++b)
            anti_kernel_ += c(a, b) * (jumps_[b].adjoint() * jumps_[a]);
}

ComplexMatrix apply_generator(const Generator& g, const ComplexMatrix& rho) {
    if (rho.rows() != g.dim() || rho.cols() != g.dim())
        throw ValidationError("apply_generator: state dimension mismatch");
    const auto& h = g.hamiltonian();
    const auto& c = g.rates().entries();
    ComplexMatrix out = -kI * (h * rho - rho * h);
    const auto& jumps = g.jumps();
    for (std::size_t a = 0; a < jumps.size(); ++a) {
        ComplexMatrix a_rho = jumps[a] * rho;
        for (std::size_t b = 0; b < jumps.size(); ++b) {
            if (c(a, b) == Complex(0.0)) continue;
            out.noalias() += c(a, b) * (a_rho * jumps[b].adjoint());
        }
    }
    const auto& k = g.anticommutator_kernel();
    out.noalias() -= 0.5 * (k * rho + rho * k);
    return out;
}

Superoperator build_superoperator(const Generator& g) {
    const Eigen::Index d = g.dim();
    const Eigen::Index d2 = d * d;
    const auto& h = g.hamiltonian();
    const auto& c = g.rates().entries();
    const auto& jumps = g.jumps();
    const Eigen::Index n_jumps = jumps.size();

    // vec(A rho B) = (B^T kron A) vec(rho); column stacking.
    // Sandwich terms C(a,b) A_a rho A_b^dag, plus -i[H, .] and the
    // anticommutator kernel K: L = -i(I kron H - H^T kron I)
    //   + sum_{ab} C(a,b) conj(A_b) kron A_a - (I kron K + K^T kron I)/2.
    const ComplexMatrix k = g.anticommutator_kernel();
    const ComplexMatrix ht = h.transpose();
    const ComplexMatrix kt = k.transpose();
    std::vector<ComplexMatrix> jconj(n_jumps);
    for (Eigen::Index b = 0; b < n_jumps; ++b) jconj[b] = jumps[b].conjugate();

    Superoperator sop;
    sop.hilbert_dim = d;
    sop.matrix.resize(d2, d2);

    // Block (I, J) of size d x d at (I*d, J*d); identical arithmetic order
    // regardless of the thread count.
#pragma omp parallel for collapse(2) schedule(static)
    for (Eigen::Index bi = 0; bi < d; ++bi) {
        for (Eigen::Index bj = 0; bj < d; ++bj) {
            ComplexMatrix block = ComplexMatrix::Zero(d, d);
            // -i I kron H  -> block(I==J) -i H ; +i H^T kron I -> +i H^T(I,J) * Id
            if (bi == bj) block -= kI * h;
            block += (kI * ht(bi, bj)) * ComplexMatrix::Identity(d, d);
            for (Eigen::Index a = 0; a < n_jumps; ++a)
                for (Eigen::Index b = 0; b < n_jumps; ++b) {
                    if (c(a, b) == Complex(0.0)) continue;
                    block += (c(a, b) * jconj[b](bi, bj)) * jumps[a];
                }
            if (bi == bj) block -= 0.5 * k;
            block -= (0.5 * kt(bi, bj)) * ComplexMatrix::Identity(d, d);
            sop.matrix.block(bi * d, bj * d, d, d) = block;
        }
    }
    return sop;
}

Superoperator build_superoperator_reference(const Generator& g) {
    const Eigen::Index d = g.dim();
    Superoperator sop;
    sop.hilbert_dim = d;
    sop.matrix.resize(d * d, d * d);
    ComplexMatrix unit = ComplexMatrix::Zero(d, d);
    for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index i = 0; i < d; ++i) {
            unit(i, j) = 1.0;
            sop.matrix.col(j * d + i) = vec(apply_generator(g, unit));
            unit(i, j) = 0.0;
        }
    return sop;
}

Trajectory evolve(const Generator& g, const ComplexMatrix& rho0,
                  const std::vector<double>& t_grid, const EvolveOptions& opts) {
    require_density_matrix(rho0, "evolve");
    if (rho0.rows() != g.dim())
        throw ValidationError("evolve: state dimension mismatch");
    if (t_grid.empty()) throw ValidationError("evolve: empty time grid");
    if (!std::is_sorted(t_grid.begin(), t_grid.end()))
        throw ValidationError("evolve: time grid must be ascending");
    if (min_eigenvalue(rho0) < -1e-8)
        throw ValidationError("evolve: initial state is not positive semidefinite");

    Trajectory traj;
    traj.times.reserve(t_grid.size());

    integrate::StepControl ctl;
    ctl.rel_tol = opts.rel_tol;
    ctl.abs_tol = opts.abs_tol;

    auto rhs = [&g](double, const ComplexVector& y) -> ComplexVector {
        return vec(apply_generator(g, unvec(y)));
    };

    ComplexVector y = vec(rho0);
    double t = t_grid.front();
    double h = 0.0;
    for (double t_next : t_grid) {
        if (t_next > t) {
            integrate::advance(rhs, y, t, t_next, ctl, h);
            t = t_next;
        }
        ComplexMatrix rho = unvec(y);
        const double tdef = std::abs(rho.trace() - Complex(1.0));
        const double hdef = hermiticity_defect(rho);
        const double me = min_eigenvalue(rho);
        if (opts.monitor_positivity && me < opts.positivity_floor)
            throw PositivityError("evolve: state left the positivity cone at t = " +
                                      std::to_string(t_next) + " (min eigenvalue " +
                                      std::to_string(me) + ")",
                                  t_next, me);
        traj.times.push_back(t_next);
        traj.states.push_back(std::move(rho));
        traj.trace_defect.push_back(tdef);
        traj.min_eig.push_back(me);
        traj.herm_defect.push_back(hdef);
    }
    return traj;
}

SteadyState steady_state(const Generator& g, double null_tol) {
    const Eigen::Index d = g.dim();
    if (d * d > kSuperopBudget)
        throw SizeError("steady_state: superoperator dimension " + std::to_string(d * d) +
                        " exceeds the dense SVD budget " + std::to_string(kSuperopBudget));
    const Superoperator sop = build_superoperator(g);

    Eigen::BDCSVD<ComplexMatrix> svd(sop.matrix, Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double cutoff = null_tol * std::max(sv(0), 1e-300);
    int degeneracy = 0;
    for (Eigen::Index k = sv.size() - 1; k >= 0 && sv(k) <= cutoff; --k) ++degeneracy;
    // No vector under the cutoff: fall back to the smallest singular direction.
    if (degeneracy == 0) degeneracy = 1;

    // Null-space coordinates: impose trace one with the minimum-norm
    // combination, tr(sum_k c_k V_k) = 1.
    const Eigen::Index first = sv.size() - degeneracy;
    ComplexVector traces(degeneracy);
    for (Eigen::Index k = 0; k < degeneracy; ++k)
        traces(k) = unvec(svd.matrixV().col(first + k)).trace();
    const double tnorm2 = traces.squaredNorm();
    if (tnorm2 < 1e-24)
        throw SingularError("steady_state: null space contains no trace-class state");
    ComplexVector coeff = traces.conjugate() / tnorm2;
    ComplexVector x = ComplexVector::Zero(d * d);
    for (Eigen::Index k = 0; k < degeneracy; ++k)
        x += coeff(k) * svd.matrixV().col(first + k);

    SteadyState out;
    out.rho = hermitize(unvec(x));
    out.rho /= out.rho.trace().real();
    out.degeneracy = degeneracy;
    return out;
}

std::vector<Complex> spectrum(const Generator& g) {
    const Eigen::Index d = g.dim();
    if (d * d > kSuperopBudget)
        throw SizeError("spectrum: superoperator dimension " + std::to_string(d * d) +
                        " exceeds the dense eigensolver budget " +
                        std::to_string(kSuperopBudget));
    const Superoperator sop = build_superoperator(g);
    Eigen::ComplexEigenSolver<ComplexMatrix> es(sop.matrix, /*computeEigenvectors=*/false);
    std::vector<Complex> ev(es.eigenvalues().data(), es.eigenvalues().data() + d * d);
    std::sort(ev.begin(), ev.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() < b.imag();
    });
    return ev;
}

}  // namespace qbsim::lindblad
