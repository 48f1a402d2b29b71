#pragma once

#include <exception>
#include <string>
#include <vector>

#include "qbsim/types.hpp"

namespace qbsim::sweep {

// One sweep dimension over a named model field.
struct Axis {
    std::string field;
    double min = 0.0;
    double max = 0.0;
    int steps = 1;
    bool log = false;
};

// Grid values of one axis (log-spaced when axis.log).
std::vector<double> axis_values(const Axis& axis);

// Worker count: QBSIM_JOBS when set, else the machine parallelism.
int default_jobs();

// Runs fn(i) for i in [0, n); results land in index order regardless of the
// schedule, so parallel output equals the serial output row for row.
// jobs <= 1 runs the plain serial loop. Worker exceptions are rethrown with
// the lowest index winning.
template <typename T, typename Fn>
std::vector<T> run_indexed(int n, Fn&& fn, int jobs) {
    std::vector<T> out(n);
    if (jobs <= 1) {
        for (int i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::vector<std::exception_ptr> errors(n);
    bool failed = false;
#pragma omp parallel for schedule(dynamic) num_threads(jobs) shared(failed)
    for (int i = 0; i < n; ++i) {
        try {
            out[i] = fn(i);
        } catch (...) {
            errors[i] = std::current_exception();
#pragma omp atomic write
            failed = true;
        }
    }
    if (failed) {
        for (int i = 0; i < n; ++i)
            if (errors[i]) std::rethrow_exception(errors[i]);
    }
    return out;
}

}  // namespace qbsim::sweep
