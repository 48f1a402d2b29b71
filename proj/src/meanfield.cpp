#include "qbsim/meanfield.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "qbsim/integrate.hpp"

namespace qbsim::meanfield {

Eigen::Vector3d mf_derivatives(const MeanFieldState& s, const MeanFieldParams& p) {
    const double ng = p.n * p.big_gamma;
    const double xi = p.xi();
    Eigen::Vector3d d;
    d(0) = ng * s.mz * s.mx;
    d(1) = -2.0 * p.omega * s.mz + ng * xi * s.my * s.mz;
    d(2) = 2.0 * p.omega * s.my - ng * s.mx * s.mx - ng * xi * s.my * s.my;
    return d;
}

Eigen::Matrix3d mf_jacobian(const MeanFieldState& s, const MeanFieldParams& p) {
    const double ng = p.n * p.big_gamma;
    const double xi = p.xi();
    Eigen::Matrix3d j;
    j << ng * s.mz, 0.0, ng * s.mx,
        0.0, ng * xi * s.mz, -2.0 * p.omega + ng * xi * s.my,
        -2.0 * ng * s.mx, 2.0 * p.omega - 2.0 * ng * xi * s.my, 0.0;
    return j;
}

std::vector<MeanFieldState> mf_evolve(const MeanFieldState& s0, const MeanFieldParams& p,
                                      const std::vector<double>& t_grid,
                                      const MfEvolveOptions& opts) {
    if (t_grid.empty()) throw ValidationError("mf_evolve: empty time grid");
    if (!std::is_sorted(t_grid.begin(), t_grid.end()))
        throw ValidationError("mf_evolve: time grid must be ascending");
    if (std::sqrt(s0.length_sq()) > 0.5 + 1e-12)
        throw ValidationError("mf_evolve: |m| must not exceed 1/2");

    integrate::StepControl ctl;
    ctl.rel_tol = opts.rel_tol;
    ctl.abs_tol = opts.abs_tol;

    auto rhs = [&p](double, const Eigen::Vector3d& y) -> Eigen::Vector3d {
        return mf_derivatives({y(0), y(1), y(2), 0.0}, p);
    };

    std::vector<MeanFieldState> out;
    out.reserve(t_grid.size());
    Eigen::Vector3d y(s0.mx, s0.my, s0.mz);
    double t = t_grid.front();
    double h = 0.0;
    for (double t_next : t_grid) {
        if (t_next > t) {
            integrate::advance(rhs, y, t, t_next, ctl, h);
            t = t_next;
        }
        out.push_back({y(0), y(1), y(2), t_next});
    }
    return out;
}

std::string phase_label(Phase p) {
    switch (p) {
        case Phase::btc_a: return "BTC_A";
        case Phase::stationary_b: return "stationary_B";
        case Phase::stationary_c: return "stationary_C";
    }
    return "unknown";
}

PhasePoint classify_phase(double omega, double g, int n, double big_gamma) {
    if (big_gamma <= 0.0) throw ValidationError("classify_phase: Gamma must be > 0");
    MeanFieldParams p{omega, g, n, big_gamma};
    PhasePoint pt;
    pt.omega = omega;
    pt.g = g;
    pt.n = n;
    pt.xi = p.xi();
    pt.omega_cri = p.omega_cri();
    pt.degenerate = pt.xi == 0.0;
    if (omega > pt.omega_cri) {
        pt.phase = Phase::btc_a;
        pt.e_ss = std::nullopt;
    } else {
        pt.phase = pt.xi >= 0.0 ? Phase::stationary_b : Phase::stationary_c;
        if (pt.degenerate) {
            pt.e_ss = std::nullopt;  // omega_cri = 0: only omega = 0 lands here
        } else {
            const double ratio = 4.0 * omega * omega /
                                 (double(n) * n * big_gamma * big_gamma * pt.xi * pt.xi);
            const double root = std::sqrt(std::max(0.0, 0.25 - ratio));
            pt.e_ss = -(pt.xi > 0.0 ? 1.0 : -1.0) * root + 0.5;
        }
    }
    return pt;
}

std::array<Complex, 3> stability(const MeanFieldState& fixed_point, const MeanFieldParams& p) {
    const Eigen::Vector3d d = mf_derivatives(fixed_point, p);
    if (d.cwiseAbs().maxCoeff() > 1e-10)
        throw ValidationError("stability: input is not a fixed point (|m'| = " +
                              std::to_string(d.cwiseAbs().maxCoeff()) + ")");
    Eigen::EigenSolver<Eigen::Matrix3d> es(mf_jacobian(fixed_point, p));
    std::array<Complex, 3> ev;
    for (int k = 0; k < 3; ++k) ev[k] = es.eigenvalues()(k);
    std::sort(ev.begin(), ev.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() < b.imag();
    });
    return ev;
}

double conserved_m(const MeanFieldState& s, const MeanFieldParams& p, double kappa) {
    const double denom = p.big_gamma * kappa * s.my - p.omega;
    if (std::abs(denom) < 1e-12)
        throw SingularError("conserved_m: denominator Gamma*kappa*my - omega vanishes");
    return p.big_gamma * std::pow(s.mx, kappa) / denom;
}

namespace {

// Refine an interior extremum through the parabola on (t, e) triples.
double parabola_peak(double e0, double e1, double e2) {
    const double denom = e0 - 2.0 * e1 + e2;
    if (denom == 0.0) return e1;
    const double delta = 0.5 * (e0 - e2) / denom;
    // Vertex value of the interpolating parabola at offset delta in units of dt.
    return e1 - 0.25 * (e0 - e2) * delta;
}

}  // namespace

double oscillation_amplitude(const std::vector<MeanFieldState>& traj, double t_from,
                             double t_to) {
    std::vector<double> e;
    e.reserve(traj.size());
    for (const auto& s : traj)
        if (s.t >= t_from && s.t <= t_to) e.push_back(s.energy());
    if (e.size() < 3)
        throw ValidationError("oscillation_amplitude: window holds fewer than 3 samples");

    double hi = *std::max_element(e.begin(), e.end());
    double lo = *std::min_element(e.begin(), e.end());
    for (std::size_t k = 1; k + 1 < e.size(); ++k) {
        if (e[k] >= e[k - 1] && e[k] >= e[k + 1])
            hi = std::max(hi, parabola_peak(e[k - 1], e[k], e[k + 1]));
        if (e[k] <= e[k - 1] && e[k] <= e[k + 1])
            lo = std::min(lo, parabola_peak(e[k - 1], e[k], e[k + 1]));
    }
    return hi - lo;
}

bool detect_btc_from_trajectory(const MeanFieldParams& p, double t_end, double sample_dt,
                                double threshold) {
    const auto n_samples = static_cast<std::size_t>(std::floor(t_end / sample_dt)) + 1;
    std::vector<double> grid(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) grid[i] = double(i) * sample_dt;
    const auto traj = mf_evolve(ground_state(), p, grid);
    const double amp = oscillation_amplitude(traj, 0.75 * t_end, t_end);
    return amp > threshold;
}

}  // namespace qbsim::meanfield
