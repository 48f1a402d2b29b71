#include "qbsim/sweep.hpp"

#include <cmath>
#include <cstdlib>
#include <thread>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qbsim::sweep {

std::vector<double> axis_values(const Axis& axis) {
    if (axis.steps < 1) throw ValidationError("sweep axis: steps must be >= 1");
    if (axis.log && (axis.min <= 0.0 || axis.max <= 0.0))
        throw ValidationError("sweep axis: log spacing needs positive endpoints");
    std::vector<double> vals(axis.steps);
    if (axis.steps == 1) {
        vals[0] = axis.min;
        return vals;
    }
    for (int k = 0; k < axis.steps; ++k) {
        const double f = double(k) / double(axis.steps - 1);
        vals[k] = axis.log
                      ? std::exp(std::log(axis.min) + f * (std::log(axis.max) - std::log(axis.min)))
                      : axis.min + f * (axis.max - axis.min);
    }
    return vals;
}

int default_jobs() {
    if (const char* env = std::getenv("QBSIM_JOBS")) {
        const int j = std::atoi(env);
        if (j >= 1) return j;
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
#endif
}

}  // namespace qbsim::sweep
