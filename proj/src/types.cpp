#include "qbsim/types.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace qbsim {

double hermiticity_defect(const ComplexMatrix& a) {
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
    if (a.rows() != a.cols()) return false;
    return hermiticity_defect(a) <= tol * std::max(1.0, a.cwiseAbs().maxCoeff());
}

ComplexMatrix hermitize(const ComplexMatrix& a) {
    return 0.5 * (a + a.adjoint());
}

double min_eigenvalue(const ComplexMatrix& a) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitize(a), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitize(a - b), Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

void require_square(const ComplexMatrix& a, const char* where) {
    if (a.rows() != a.cols() || a.rows() < 1)
        throw ValidationError(std::string(where) + ": matrix must be square, got " +
                              std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
}

void require_density_matrix(const ComplexMatrix& rho, const char* where, double tol,
                            double trace_tol) {
    require_square(rho, where);
    if (hermiticity_defect(rho) > tol * std::max(1.0, rho.cwiseAbs().maxCoeff()))
        throw ValidationError(std::string(where) + ": state is not Hermitian");
    if (std::abs(rho.trace() - Complex(1.0)) > trace_tol)
        throw ValidationError(std::string(where) + ": state trace differs from one by " +
                              std::to_string(std::abs(rho.trace() - Complex(1.0))));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

ComplexVector vec(const ComplexMatrix& rho) {
    return ComplexVector::Map(rho.data(), rho.size());
}

ComplexMatrix unvec(const ComplexVector& v) {
    const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(double(v.size()))));
    return ComplexMatrix::Map(v.data(), d, d);
}

}  // namespace qbsim
