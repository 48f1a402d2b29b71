#include "qbsim/waveguide.hpp"

#include <cmath>

#include "qbsim/qops.hpp"

namespace qbsim::waveguide {

namespace {

bool near_multiple_of_2pi(double phi) {
    const double r = std::remainder(phi, 2.0 * kPi);
    return std::abs(r) < 1e-9;
}

// Sum of the per-gap phases phi_{s} for spec-index s in [lo, hi] (1-based).
double phase_sum(const std::vector<double>& phi, int lo, int hi) {
    double acc = 0.0;
    for (int s = lo; s <= hi; ++s) acc += phi[s - 1];
    return acc;
}

struct FullOperators {
    qops::SiteOperatorSet site;
    ComplexMatrix l_right;   // L_R
    ComplexMatrix l_left;    // L_L
    ComplexMatrix feedback;  // F = i sqrt(gamma_R) g sum_i sigma_i^x
    ComplexMatrix h_rl;      // waveguide-mediated exchange
    ComplexMatrix h_drive;   // Omega sum_j sigma_j^x
    Complex s_right;         // scattering phase e^{i phi_Sigma}
};

FullOperators assemble_full_operators(const ModelSpec& spec) {
    const int n = spec.n_atoms;
    const auto phi = spec.resolved_phi();

    FullOperators ops;
    ops.site = qops::build_site_operators(n);
    const Eigen::Index dim = ops.site.dim();

    ops.l_right = ComplexMatrix::Zero(dim, dim);
    ops.l_left = ComplexMatrix::Zero(dim, dim);
    ops.feedback = ComplexMatrix::Zero(dim, dim);
    ops.h_drive = ComplexMatrix::Zero(dim, dim);
    for (int j = 1; j <= n; ++j) {
        const double phi_right = phase_sum(phi, j + 1, n);  // to the right end
        const double phi_left = phase_sum(phi, 2, j);       // back to atom 1
        ops.l_right += std::sqrt(spec.gamma_r) * std::exp(kI * phi_right) *
                       ops.site.sigma_minus[j - 1];
        ops.l_left += std::sqrt(spec.gamma_l) * std::exp(kI * phi_left) *
                      ops.site.sigma_minus[j - 1];
        ops.feedback += kI * std::sqrt(spec.gamma_r) * spec.g * ops.site.sigma_x[j - 1];
        ops.h_drive += spec.omega * ops.site.sigma_x[j - 1];
    }

    ops.h_rl = ComplexMatrix::Zero(dim, dim);
    for (int j = 1; j <= n; ++j) {
        for (int l = 1; l <= n; ++l) {
            if (j == l) continue;
            const double phi_lj = phase_sum(phi, std::min(l, j) + 1, std::max(l, j));
            const double rate = (j > l) ? spec.gamma_r : spec.gamma_l;
            ops.h_rl += (rate / (2.0 * kI)) * std::exp(kI * phi_lj) *
                        (ops.site.sigma_plus[j - 1] * ops.site.sigma_minus[l - 1]);
        }
    }
    ops.h_rl = ops.h_rl + ops.h_rl.adjoint().eval();

    ops.s_right = std::exp(kI * phase_sum(phi, 2, n));
    return ops;
}

}  // namespace

bool ModelSpec::achiral() const {
    return std::abs(gamma_r - gamma_l) <= 1e-12 * std::max(1.0, gamma());
}

std::vector<double> ModelSpec::resolved_phi() const {
    std::vector<double> out(phi);
    out.resize(n_atoms, 2.0 * kPi);
    return out;
}

void ModelSpec::validate() const {
    if (n_atoms < 1) throw ValidationError("ModelSpec: N must be >= 1");
    if (gamma_r < 0.0 || gamma_l < 0.0)
        throw ValidationError("ModelSpec: decay rates must be >= 0");
    if (gamma() <= 0.0) throw ValidationError("ModelSpec: gamma_R + gamma_L must be > 0");
    if (static_cast<int>(phi.size()) > n_atoms)
        throw ValidationError("ModelSpec: phase list longer than the atom count");
}

PlusMinusRates single_atom_rates(const ModelSpec& spec) {
    const double gr = spec.gamma_r;
    const double gl = spec.gamma_l;
    const double g = spec.g;
    PlusMinusRates r;
    if (spec.setup == Setup::I) {
        r.decay = gr * (g + 1.0) * (g + 1.0) + gl;
        r.pump = gr * g * g;
        r.anomalous = gr * g * (g + 1.0);
    } else {
        const double phi1 = spec.resolved_phi()[0];
        r.decay = spec.gamma() + gr * g * (g + 2.0) +
                  2.0 * std::sqrt(gr * gl) * (g + 1.0) * std::cos(phi1);
        r.pump = gr * g * g;
        r.anomalous = gr * g * (g + 1.0) + std::sqrt(gr * gl) * g * std::exp(-kI * phi1);
    }
    return r;
}

double single_atom_frequency_shift(const ModelSpec& spec) {
    if (spec.setup == Setup::I) return 0.0;
    const double phi1 = spec.resolved_phi()[0];
    return std::sqrt(spec.gamma_r * spec.gamma_l) * std::sin(phi1) * (spec.g + 1.0);
}

PlusMinusRates collective_rates(const ModelSpec& spec) {
    const double gamma = spec.gamma();
    const double g = spec.g;
    const double n = spec.n_index();
    PlusMinusRates r;
    r.decay = gamma * (g * g + 2.0 * n * (g + 1.0)) / 2.0;
    r.pump = gamma * g * g / 2.0;
    r.anomalous = gamma * g * (g + n) / 2.0;
    return r;
}

lindblad::Generator build_full_setup1(const ModelSpec& spec) {
    spec.validate();
    if (spec.setup != Setup::I)
        throw ValidationError("build_full_setup1: spec is not tagged setup I");
    if (spec.n_atoms > qops::kMaxFullAtoms)
        throw SizeError("build_full_setup1: N exceeds the full-model limit");

    const auto ops = assemble_full_operators(spec);
    // H_f,I = F^dag L_R / 2 + H.c.
    ComplexMatrix h_f = 0.5 * (ops.feedback.adjoint() * ops.l_right);
    h_f = h_f + h_f.adjoint().eval();
    const ComplexMatrix h = ops.h_rl + h_f + ops.h_drive;

    std::vector<ComplexMatrix> jumps{ops.l_right - kI * ops.feedback, ops.l_left};
    return lindblad::Generator(h, std::move(jumps), lindblad::RateMatrix::diagonal({1.0, 1.0}));
}

lindblad::Generator build_full_setup2(const ModelSpec& spec) {
    spec.validate();
    if (spec.setup != Setup::II)
        throw ValidationError("build_full_setup2: spec is not tagged setup II");
    if (spec.n_atoms > qops::kMaxFullAtoms)
        throw SizeError("build_full_setup2: N exceeds the full-model limit");

    const auto ops = assemble_full_operators(spec);
    const double phi1 = spec.resolved_phi()[0];
    const Complex mirror = std::exp(kI * phi1) * ops.s_right;

    // H_f,II = F^dag (e^{i phi_1} S_R L_L + L_R)/2 + H.c.
    ComplexMatrix h_f = 0.5 * (ops.feedback.adjoint() * (mirror * ops.l_left + ops.l_right));
    h_f = h_f + h_f.adjoint().eval();
    // H_phi1 = e^{i phi_1} S_R L_R^dag L_L / (2i) + H.c.
    ComplexMatrix h_phi1 = (mirror / (2.0 * kI)) * (ops.l_right.adjoint() * ops.l_left);
    h_phi1 = h_phi1 + h_phi1.adjoint().eval();
    const ComplexMatrix h = ops.h_rl + h_f + h_phi1 + ops.h_drive;

    std::vector<ComplexMatrix> jumps{mirror * ops.l_left + ops.l_right - kI * ops.feedback};
    return lindblad::Generator(h, std::move(jumps), lindblad::RateMatrix::diagonal({1.0}));
}

lindblad::Generator build_full(const ModelSpec& spec) {
    return spec.setup == Setup::I ? build_full_setup1(spec) : build_full_setup2(spec);
}

lindblad::Generator build_single_atom(const ModelSpec& spec) {
    spec.validate();
    if (spec.n_atoms != 1)
        throw ValidationError("build_single_atom: requires N = 1");

    const auto r = single_atom_rates(spec);
    ComplexMatrix h = spec.omega * qops::sigma_x_1q();
    h += single_atom_frequency_shift(spec) * qops::excited_projector_1q();

    std::vector<ComplexMatrix> jumps{qops::sigma_plus_1q(), qops::sigma_minus_1q()};
    return lindblad::Generator(h, std::move(jumps),
                               lindblad::RateMatrix::plus_minus(r.decay, r.pump, r.anomalous));
}

lindblad::Generator build_collective(const ModelSpec& spec) {
    spec.validate();
    if (!spec.achiral())
        throw ValidationError(
            "build_collective: the collective model assumes achiral coupling "
            "(gamma_R = gamma_L); use the full builders for chiral parameters");
    for (double p : spec.resolved_phi()) {
        if (!near_multiple_of_2pi(p))
            throw ValidationError(
                "build_collective: all propagation phases must be multiples of 2*pi; "
                "use the full builders for general phases");
    }

    const auto col = qops::build_collective_ops(spec.n_atoms);
    const double n = spec.n_index();
    const ComplexMatrix anti = col.jx * col.jy + col.jy * col.jx;
    const ComplexMatrix h = 2.0 * spec.omega * col.jx - (n * spec.gamma() * spec.g / 2.0) * anti;

    const auto r = collective_rates(spec);
    std::vector<ComplexMatrix> jumps{col.jplus, col.jminus};
    return lindblad::Generator(h, std::move(jumps),
                               lindblad::RateMatrix::plus_minus(r.decay, r.pump, r.anomalous));
}

}  // namespace qbsim::waveguide
