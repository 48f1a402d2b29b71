// Benchmark: OpenMP-parallel kernels against their serial references.
//
//   superop   Kronecker assembly of the Liouvillian vs. the column-by-column
//             action-based reference, and vs. itself at 1 thread.
//   sweep     steady-state parameter grid, parallel vs. serial executor.
//   mfgrid    mean-field phase-diagram grid, parallel vs. serial executor.

#include <Eigen/Core>
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qbsim/lindblad.hpp"
#include "qbsim/meanfield.hpp"
#include "qbsim/sweep.hpp"
#include "qbsim/waveguide.hpp"

using Clock = std::chrono::steady_clock;

namespace {

double secs(Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void set_threads(int n) {
#ifdef _OPENMP
    omp_set_num_threads(n);
#endif
}

qbsim::waveguide::ModelSpec collective_spec(int n_atoms) {
    qbsim::waveguide::ModelSpec spec;
    spec.setup = qbsim::waveguide::Setup::II;
    spec.n_atoms = n_atoms;
    spec.g = 1.0;
    spec.omega = 1.0 * n_atoms;  // Omega = Gamma
    return spec;
}

void bench_superop(int n_atoms) {
    const auto gen = qbsim::waveguide::build_collective(collective_spec(n_atoms));
    const int threads = max_threads();

    auto t0 = Clock::now();
    const auto ref = qbsim::lindblad::build_superoperator_reference(gen);
    auto t1 = Clock::now();
    const double t_ref = secs(t0, t1);

    set_threads(1);
    t0 = Clock::now();
    const auto serial = qbsim::lindblad::build_superoperator(gen);
    t1 = Clock::now();
    const double t_serial = secs(t0, t1);

    set_threads(threads);
    t0 = Clock::now();
    const auto parallel = qbsim::lindblad::build_superoperator(gen);
    t1 = Clock::now();
    const double t_parallel = secs(t0, t1);

    const double dev_ref = (parallel.matrix - ref.matrix).cwiseAbs().maxCoeff();
    const double dev_serial = (parallel.matrix - serial.matrix).cwiseAbs().maxCoeff();
    std::printf("superop  N=%-3d dim=%-5d action-ref %8.3f s  kron(1thr) %8.4f s  "
                "kron(%dthr) %8.4f s  speedup %5.2fx  |kron-ref| %.2e  bitwise %s\n",
                n_atoms, int(gen.dim() * gen.dim()), t_ref, t_serial, threads, t_parallel,
                t_serial / t_parallel, dev_ref, dev_serial == 0.0 ? "yes" : "NO");
}

void bench_sweep(int grid, int n_atoms) {
    using qbsim::lindblad::steady_state;
    auto point = [&](int idx) {
        qbsim::waveguide::ModelSpec spec;
        spec.setup = qbsim::waveguide::Setup::II;
        spec.n_atoms = n_atoms;
        spec.g = -3.0 + 5.0 * double(idx / grid) / double(grid - 1);
        spec.omega = 0.05 + 2.0 * double(idx % grid) / double(grid - 1);
        const auto gen = n_atoms == 1 ? qbsim::waveguide::build_single_atom(spec)
                                      : qbsim::waveguide::build_collective(spec);
        return steady_state(gen).rho(0, 0).real();
    };
    const int total = grid * grid;

    auto t0 = Clock::now();
    const auto serial = qbsim::sweep::run_indexed<double>(total, point, 1);
    auto t1 = Clock::now();
    const double t_serial = secs(t0, t1);

    const int jobs = qbsim::sweep::default_jobs();
    t0 = Clock::now();
    const auto parallel = qbsim::sweep::run_indexed<double>(total, point, jobs);
    t1 = Clock::now();
    const double t_parallel = secs(t0, t1);

    bool identical = true;
    for (int i = 0; i < total; ++i)
        if (serial[i] != parallel[i]) identical = false;
    std::printf("sweep    %dx%d N=%-3d serial %8.3f s  parallel(%d jobs) %8.3f s  "
                "speedup %5.2fx  rows bitwise %s\n",
                grid, grid, n_atoms, t_serial, jobs, t_parallel, t_serial / t_parallel,
                identical ? "yes" : "NO");
}

void bench_mfgrid(int grid) {
    auto point = [&](int idx) {
        qbsim::meanfield::MeanFieldParams p;
        p.n = 2;
        p.g = -3.0 + 5.0 * double(idx / grid) / double(grid - 1);
        p.omega = 0.05 + 2.95 * double(idx % grid) / double(grid - 1);
        return qbsim::meanfield::detect_btc_from_trajectory(p) ? 1.0 : 0.0;
    };
    const int total = grid * grid;

    auto t0 = Clock::now();
    const auto serial = qbsim::sweep::run_indexed<double>(total, point, 1);
    auto t1 = Clock::now();
    const double t_serial = secs(t0, t1);

    const int jobs = qbsim::sweep::default_jobs();
    t0 = Clock::now();
    const auto parallel = qbsim::sweep::run_indexed<double>(total, point, jobs);
    t1 = Clock::now();
    const double t_parallel = secs(t0, t1);

    bool identical = true;
    for (int i = 0; i < total; ++i)
        if (serial[i] != parallel[i]) identical = false;
    std::printf("mfgrid   %dx%d        serial %8.3f s  parallel(%d jobs) %8.3f s  "
                "speedup %5.2fx  rows bitwise %s\n",
                grid, grid, t_serial, jobs, t_parallel, t_serial / t_parallel,
                identical ? "yes" : "NO");
}

}  // namespace

int main(int argc, char** argv) {
    Eigen::setNbThreads(1);
    int superop_n = 24;
    int sweep_grid = 12;
    int mf_grid = 10;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        auto next = [&]() { return (i + 1 < argc) ? std::atoi(argv[++i]) : 0; };
        if (arg == "--superop-n") superop_n = next();
        else if (arg == "--sweep-grid") sweep_grid = next();
        else if (arg == "--mf-grid") mf_grid = next();
        else {
            std::fprintf(stderr,
                         "usage: qbsim_bench [--superop-n N] [--sweep-grid K] [--mf-grid K]\n");
            return 2;
        }
    }
    bench_superop(superop_n);
    bench_sweep(sweep_grid, 1);
    bench_mfgrid(mf_grid);
    return 0;
}
