#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "qbsim/types.hpp"

namespace qbsim::integrate {

struct StepControl {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double max_step = 0.0;  // 0 = unlimited
};

namespace detail {

// Dormand-Prince 5(4) tableau.
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - bhat (embedded 4th-order error weights)
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace detail

// Integrates y' = f(t, y) in place from t0 to t1 with the Dormand-Prince 5(4)
// pair. `f` has signature State(double t, const State& y). The step size `h`
// persists across calls so sampling grids do not reset the controller.
// Throws StiffFailure when the step size underflows.
template <typename State, typename Deriv>
void advance(Deriv&& f, State& y, double t0, double t1, const StepControl& ctl, double& h) {
    using std::abs;
    if (t1 <= t0) return;
    const double span = t1 - t0;
    if (h <= 0.0 || !std::isfinite(h)) h = span / 100.0;
    if (ctl.max_step > 0.0) h = std::min(h, ctl.max_step);

    double t = t0;
    State k1 = f(t, y);

    while (t < t1) {
        // Clamp the final step to land exactly on t1 without letting the
        // clamped size leak into the controller state.
        bool last = false;
        const double h_kept = h;
        if (h >= t1 - t) {
            h = t1 - t;
            last = true;
        }

        using namespace detail;
        State k2 = f(t + c2 * h, (y + h * (a21 * k1)).eval());
        State k3 = f(t + c3 * h, (y + h * (a31 * k1 + a32 * k2)).eval());
        State k4 = f(t + c4 * h, (y + h * (a41 * k1 + a42 * k2 + a43 * k3)).eval());
        State k5 = f(t + c5 * h, (y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)).eval());
        State k6 = f(t + h, (y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)).eval());
        State y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        State k7 = f(t + h, y5);
        State err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        // Scaled RMS error norm.
        double acc = 0.0;
        for (Eigen::Index i = 0; i < y.size(); ++i) {
            const double scale =
                ctl.abs_tol + ctl.rel_tol * std::max(abs(y[i]), abs(y5[i]));
            const double q = abs(err[i]) / scale;
            acc += q * q;
        }
        const double err_norm = std::sqrt(acc / double(y.size()));
        if (!std::isfinite(err_norm))
            throw StiffFailure("non-finite step error at t = " + std::to_string(t), t);

        if (err_norm <= 1.0) {
            t = last ? t1 : t + h;
            y = y5;
            k1 = k7;  // FSAL; on rejection k1 stays valid at the unchanged (t, y)
            if (last) {
                h = h_kept;
                break;
            }
        } else if (h < 1e-14 * std::max(1.0, abs(t))) {
            // The controller cannot make progress at the floor step size.
            throw StiffFailure("adaptive step size underflow at t = " + std::to_string(t), t);
        }

        double factor = err_norm > 0.0 ? 0.9 * std::pow(err_norm, -0.2) : 5.0;
        factor = std::clamp(factor, 0.2, 5.0);
        h *= factor;
        if (ctl.max_step > 0.0) h = std::min(h, ctl.max_step);
    }
}

}  // namespace qbsim::integrate
