#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qbsim/types.hpp"

namespace qbsim::meanfield {

// Thermodynamic-limit parameters. Time runs in units of 1/Gamma with
// Gamma = N*gamma the rescaled rate; omega is quoted in units of Gamma.
struct MeanFieldParams {
    double omega = 0.0;      // driving amplitude, units of big_gamma
    double g = 0.0;          // feedback strength
    int n = 1;               // setup index: 1 or 2
    double big_gamma = 1.0;  // rescaled decay rate Gamma

    double xi() const { return 2.0 * g + 1.0; }
    double omega_cri() const { return n * big_gamma * std::abs(xi()) / 4.0; }
};

// Magnetization triple; per-atom energy is mz + 1/2.
struct MeanFieldState {
    double mx = 0.0;
    double my = 0.0;
    double mz = -0.5;
    double t = 0.0;

    double length_sq() const { return mx * mx + my * my + mz * mz; }
    double energy() const { return mz + 0.5; }
};

inline MeanFieldState ground_state() { return {0.0, 0.0, -0.5, 0.0}; }

// Right-hand sides (mx', my', mz'); radial component vanishes identically.
Eigen::Vector3d mf_derivatives(const MeanFieldState& s, const MeanFieldParams& p);

// Analytic 3x3 Jacobian of mf_derivatives.
Eigen::Matrix3d mf_jacobian(const MeanFieldState& s, const MeanFieldParams& p);

struct MfEvolveOptions {
    double rel_tol = 1e-12;
    double abs_tol = 1e-14;
};

// Adaptive integration sampled on t_grid (ascending, units 1/Gamma).
std::vector<MeanFieldState> mf_evolve(const MeanFieldState& s0, const MeanFieldParams& p,
                                      const std::vector<double>& t_grid,
                                      const MfEvolveOptions& opts = {});

enum class Phase { btc_a, stationary_b, stationary_c };

std::string phase_label(Phase p);

struct PhasePoint {
    double omega = 0.0;
    double g = 0.0;
    int n = 1;
    double xi = 0.0;
    double omega_cri = 0.0;
    Phase phase = Phase::stationary_b;
    std::optional<double> e_ss;  // closed-form steady energy; empty in the BTC phase
    bool degenerate = false;     // xi == 0 boundary line
};

// Closed-form classification: BTC iff omega > omega_cri; otherwise stationary
// with E_ss = -sign(xi) sqrt(1/4 - 4 omega^2/(n^2 Gamma^2 xi^2)) + 1/2.
PhasePoint classify_phase(double omega, double g, int n, double big_gamma = 1.0);

// Eigenvalues of the Jacobian at a fixed point (validated to 1e-10).
std::array<Complex, 3> stability(const MeanFieldState& fixed_point, const MeanFieldParams& p);

// M = Gamma * mx^kappa / (Gamma*kappa*my - omega); throws SingularError when
// the denominator vanishes. kappa is deliberately an explicit parameter.
double conserved_m(const MeanFieldState& s, const MeanFieldParams& p, double kappa);

// Max - min of the per-atom energy over samples with t in [t_from, t_to],
// with parabolic refinement of interior extrema.
double oscillation_amplitude(const std::vector<MeanFieldState>& traj, double t_from,
                             double t_to);

// Trajectory-based detector: evolves the ground state to t_end and tests the
// energy oscillation amplitude over the last quarter against `threshold`.
bool detect_btc_from_trajectory(const MeanFieldParams& p, double t_end = 200.0,
                                double sample_dt = 0.05, double threshold = 1e-4);

}  // namespace qbsim::meanfield
