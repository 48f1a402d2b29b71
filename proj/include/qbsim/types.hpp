#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace qbsim {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

// Thrown on bad arguments (dimension mismatches, wrong setup tags, ...).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Thrown when a requested problem exceeds the dense-solver budget.
class SizeError : public std::length_error {
public:
    using std::length_error::length_error;
};

// Adaptive integration could not make progress (step-size underflow).
class StiffFailure : public std::runtime_error {
public:
    StiffFailure(const std::string& what, double t_reached)
        : std::runtime_error(what), t_reached_(t_reached) {}
    double t_reached() const { return t_reached_; }

private:
    double t_reached_;
};

// A density matrix left the positivity cone beyond the monitoring floor.
class PositivityError : public std::runtime_error {
public:
    PositivityError(const std::string& what, double t, double min_eig)
        : std::runtime_error(what), t_(t), min_eig_(min_eig) {}
    double t() const { return t_; }
    double min_eig() const { return min_eig_; }

private:
    double t_;
    double min_eig_;
};

class SingularError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ||A - A^dag||_max
double hermiticity_defect(const ComplexMatrix& a);

bool is_hermitian(const ComplexMatrix& a, double tol = 1e-10);

// (A + A^dag)/2
ComplexMatrix hermitize(const ComplexMatrix& a);

// Smallest eigenvalue of the Hermitian part of a.
double min_eigenvalue(const ComplexMatrix& a);

// (1/2)||a - b||_1 for Hermitian a, b.
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

void require_square(const ComplexMatrix& a, const char* where);

// Hermitian to `tol`, trace within `trace_tol` of one.
void require_density_matrix(const ComplexMatrix& rho, const char* where,
                            double tol = 1e-8, double trace_tol = 1e-8);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Column-stacking: vec(rho)(j*d + i) = rho(i, j).
ComplexVector vec(const ComplexMatrix& rho);
ComplexMatrix unvec(const ComplexVector& v);

}  // namespace qbsim
