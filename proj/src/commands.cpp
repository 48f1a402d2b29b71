#include <cmath>
#include <iostream>
#include <optional>

#include "qbsim/energetics.hpp"
#include "qbsim/qops.hpp"
#include "qbsim/run_config.hpp"

namespace qbsim::cli {

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int k = 0; k < n; ++k)
        v[k] = n == 1 ? lo : lo + (hi - lo) * double(k) / double(n - 1);
    return v;
}

lindblad::Generator build_generator(const RunConfig& config) {
    const auto spec = config.model_spec();
    switch (config.model) {
        case Model::full: return waveguide::build_full(spec);
        case Model::single: return waveguide::build_single_atom(spec);
        case Model::collective: return waveguide::build_collective(spec);
        case Model::meanfield: break;
    }
    throw ValidationError("mean-field runs have no Lindblad generator");
}

ComplexMatrix ground_state_density(const RunConfig& config) {
    Eigen::Index dim;
    Eigen::Index ground;
    if (config.model == Model::collective) {
        dim = config.n_atoms + 1;
        ground = dim - 1;  // m = -N/2 in the descending-m ordering
    } else {
        dim = Eigen::Index(1) << config.n_atoms;
        ground = dim - 1;  // all atoms in |g>
    }
    ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
    rho(ground, ground) = 1.0;
    return rho;
}

ComplexMatrix battery_hamiltonian(const RunConfig& config) {
    return config.model == Model::collective
               ? energetics::battery_hamiltonian_dicke(config.n_atoms, config.omega0)
               : energetics::battery_hamiltonian_site(config.n_atoms, config.omega0);
}

output::Table evolve_meanfield(const RunConfig& config) {
    output::Table table;
    table.columns = {"t", "energy", "ergotropy", "mx", "my", "mz", "trace_defect", "min_eig"};
    const auto params = config.mf_params();
    const auto grid = linspace(0.0, config.t_max, config.n_samples);
    // Library defaults are tighter than the Lindblad ones; only explicit
    // overrides are passed through.
    meanfield::MfEvolveOptions opts;
    const RunConfig defaults;
    if (config.rel_tol != defaults.rel_tol) opts.rel_tol = config.rel_tol;
    if (config.abs_tol != defaults.abs_tol) opts.abs_tol = config.abs_tol;
    const auto traj = meanfield::mf_evolve(meanfield::ground_state(), params, grid, opts);
    const double len0 = traj.front().length_sq();
    for (const auto& s : traj) {
        const double norm = std::sqrt(s.length_sq());
        table.rows.push_back({s.t, s.energy(), s.mz + norm, s.mx, s.my, s.mz,
                              std::abs(s.length_sq() - len0), 0.5 - norm});
    }
    return table;
}

}  // namespace

output::Table run_evolve(const RunConfig& config) {
    config.validate("evolve");
    if (config.model == Model::meanfield) {
        auto table = evolve_meanfield(config);
        table.meta = config.meta("evolve");
        return table;
    }

    const auto gen = build_generator(config);
    if (!gen.rates().cp_flag())
        std::cerr << "note: rate matrix is not completely positive "
                     "(min eigenvalue "
                  << gen.rates().min_eigenvalue() << "); simulating anyway\n";
    const auto h_b = battery_hamiltonian(config);
    const double per_atom = 1.0 / (config.n_atoms * config.omega0);

    const auto grid_out = linspace(0.0, config.t_max, config.n_samples);
    std::vector<double> grid_phys(grid_out);
    for (double& t : grid_phys) t *= config.time_unit();

    lindblad::EvolveOptions opts;
    opts.rel_tol = config.rel_tol;
    opts.abs_tol = config.abs_tol;
    const auto traj = lindblad::evolve(gen, ground_state_density(config), grid_phys, opts);

    output::Table table;
    table.meta = config.meta("evolve");
    const bool magnetization = config.model == Model::collective;
    table.columns = {"t", "energy", "ergotropy"};
    if (magnetization) {
        table.columns.push_back("mx");
        table.columns.push_back("my");
        table.columns.push_back("mz");
    }
    table.columns.push_back("trace_defect");
    table.columns.push_back("min_eig");

    std::optional<qops::CollectiveOps> col;
    if (magnetization) col = qops::build_collective_ops(config.n_atoms);

    for (std::size_t k = 0; k < traj.size(); ++k) {
        const auto& rho = traj.states[k];
        const auto rep = energetics::ergotropy(rho, h_b,
                                               config.model == Model::collective
                                                   ? energetics::Basis::dicke
                                                   : energetics::Basis::site);
        std::vector<output::Cell> row;
        row.emplace_back(grid_out[k]);
        row.emplace_back(rep.energy * per_atom);
        row.emplace_back(rep.ergotropy * per_atom);
        if (magnetization) {
            const double inv_n = 1.0 / config.n_atoms;
            row.emplace_back((col->jx * rho).trace().real() * inv_n);
            row.emplace_back((col->jy * rho).trace().real() * inv_n);
            row.emplace_back((col->jz * rho).trace().real() * inv_n);
        }
        row.emplace_back(traj.trace_defect[k]);
        row.emplace_back(traj.min_eig[k]);
        table.rows.push_back(std::move(row));
    }
    return table;
}

output::Table run_steady(const RunConfig& config) {
    config.validate("steady");

    std::vector<sweep::Axis> axes = config.sweep_axes;
    std::vector<std::vector<double>> values;
    for (const auto& a : axes) values.push_back(sweep::axis_values(a));
    const int n0 = axes.empty() ? 1 : int(values[0].size());
    const int n1 = axes.size() < 2 ? 1 : int(values[1].size());
    const int total = n0 * n1;

    struct Row {
        std::vector<double> coords;
        double energy = 0.0;
        double ergotropy = 0.0;
        int degeneracy = 0;
        bool cp = true;
    };

    const int jobs = config.jobs > 0 ? config.jobs : sweep::default_jobs();
    auto rows = sweep::run_indexed<Row>(
        total,
        [&](int idx) {
            RunConfig point = config;
            Row row;
            if (!axes.empty()) {
                const double v0 = values[0][idx / n1];
                apply_field(point, axes[0].field, v0);
                row.coords.push_back(v0);
            }
            if (axes.size() == 2) {
                const double v1 = values[1][idx % n1];
                apply_field(point, axes[1].field, v1);
                row.coords.push_back(v1);
            }
            const auto gen = build_generator(point);
            const auto ss = lindblad::steady_state(gen, point.null_tol);
            const auto h_b = battery_hamiltonian(point);
            const auto rep = energetics::ergotropy(ss.rho, h_b,
                                                   point.model == Model::collective
                                                       ? energetics::Basis::dicke
                                                       : energetics::Basis::site);
            const double per_atom = 1.0 / (point.n_atoms * point.omega0);
            row.energy = rep.energy * per_atom;
            row.ergotropy = rep.ergotropy * per_atom;
            row.degeneracy = ss.degeneracy;
            row.cp = gen.rates().cp_flag();
            return row;
        },
        jobs);

    output::Table table;
    table.meta = config.meta("steady");
    for (const auto& a : axes) table.columns.push_back(a.field);
    table.columns.insert(table.columns.end(), {"energy", "ergotropy", "degeneracy", "cp_flag"});
    for (const auto& r : rows) {
        std::vector<output::Cell> row;
        for (double c : r.coords) row.emplace_back(c);
        row.emplace_back(r.energy);
        row.emplace_back(r.ergotropy);
        row.emplace_back(static_cast<long long>(r.degeneracy));
        row.emplace_back(static_cast<long long>(r.cp ? 1 : 0));
        table.rows.push_back(std::move(row));
    }
    return table;
}

output::Table run_spectrum(const RunConfig& config) {
    config.validate("spectrum");
    if (config.n_atoms > 40)
        throw SizeError("spectrum: collective runs are limited to N <= 40");
    const auto gen = build_generator(config);
    const auto ev = lindblad::spectrum(gen);

    output::Table table;
    table.meta = config.meta("spectrum");
    table.columns = {"re_lambda", "im_lambda"};
    // Eigenvalues are reported in the run's rate unit (Gamma for collective).
    const double unit = config.time_unit();
    for (const auto& lambda : ev)
        table.rows.push_back({lambda.real() * unit, lambda.imag() * unit});
    return table;
}

output::Table run_phase_diagram(const RunConfig& config) {
    config.validate("phase-diagram");

    sweep::Axis omega_axis{"omega", 0.0, 3.0, 31, false};
    sweep::Axis g_axis{"g", -3.0, 2.0, 26, false};
    for (const auto& a : config.sweep_axes) {
        if (a.field == "omega") omega_axis = a;
        else if (a.field == "g") g_axis = a;
        else throw ValidationError("phase-diagram sweeps only omega and g");
    }
    const auto omegas = sweep::axis_values(omega_axis);
    const auto gs = sweep::axis_values(g_axis);

    output::Table table;
    table.meta = config.meta("phase-diagram");
    table.columns = {"omega", "g", "phase", "omega_cri", "e_ss"};
    const int n = config.setup == 1 ? 1 : 2;
    for (double omega : omegas) {
        for (double g : gs) {
            const auto pt = meanfield::classify_phase(omega, g, n, 1.0);
            std::string label = meanfield::phase_label(pt.phase);
            if (pt.degenerate) label += "_degenerate";
            std::vector<output::Cell> row{omega, g, label, pt.omega_cri};
            if (pt.e_ss)
                row.emplace_back(*pt.e_ss);
            else
                row.emplace_back(std::monostate{});
            table.rows.push_back(std::move(row));
        }
    }
    // Boundary curve omega_cri(g) as a separate series.
    for (double g : gs) {
        const auto pt = meanfield::classify_phase(0.0, g, n, 1.0);
        table.rows.push_back({pt.omega_cri, g, std::string("boundary"), pt.omega_cri,
                              std::monostate{}});
    }
    return table;
}

}  // namespace qbsim::cli
