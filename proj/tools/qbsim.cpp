// qbsim: driven-dissipative quantum-battery simulator CLI.
//
// Subcommands: evolve | steady | spectrum | meanfield | phase-diagram.
// Exit codes: 0 success, 2 config error, 3 integrator failure, 4 size budget.

#include <CLI11.hpp>
#include <Eigen/Core>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "qbsim/run_config.hpp"
#include "qbsim/sweep.hpp"

namespace {

using qbsim::cli::RunConfig;

struct CliState {
    RunConfig config;
    std::string model_name;
    std::vector<std::string> sweep_specs;
    double phi1 = 0.0;
    bool phi1_set = false;
};

void add_common_options(CLI::App* sub, CliState& state, const std::string& default_model) {
    state.model_name = default_model;
    sub->fallthrough();
    sub->add_option("--model", state.model_name,
                    "Model fidelity: full|single|collective|meanfield");
    sub->add_option("--setup", state.config.setup, "Setup index: 1 (open) or 2 (mirror)");
    sub->add_option("--n-atoms", state.config.n_atoms, "Atom count N");
    sub->add_option("--gamma-r", state.config.gamma_r, "Decay rate into the right mode");
    sub->add_option("--gamma-l", state.config.gamma_l, "Decay rate into the left mode");
    sub->add_option("--g", state.config.g, "Feedback strength");
    sub->add_option("--omega", state.config.omega,
                    "Driving amplitude (units: gamma for full/single, Gamma=N*gamma "
                    "for collective/meanfield)");
    sub->add_option("--phi", state.config.phi,
                    "Propagation phases phi_1..phi_N (default: all 2*pi)");
    auto* phi1 = sub->add_option("--phi1", state.phi1, "Mirror phase phi_1 (setup II)");
    phi1->each([&state](const std::string&) { state.phi1_set = true; });
    sub->add_option("--omega0", state.config.omega0, "Bare transition frequency (energy unit)");
    sub->add_option("--t-max", state.config.t_max,
                    "Evolution span (units: 1/gamma or 1/Gamma, matching --omega)");
    sub->add_option("--samples", state.config.n_samples, "Number of sample times");
    sub->add_option("--sweep", state.sweep_specs,
                    "Sweep axis field:min:max:steps[:log] (repeat for a 2D grid)");
    sub->add_option("--out", state.config.out, "Output path ('-' = stdout)");
    sub->add_option("--format", state.config.format, "Output format: csv|json");
    sub->add_option("--jobs", state.config.jobs,
                    "Parallel workers for sweeps (default: QBSIM_JOBS or hardware)");
    sub->add_option("--rtol", state.config.rel_tol, "Integrator relative tolerance");
    sub->add_option("--atol", state.config.abs_tol, "Integrator absolute tolerance");
    sub->add_option("--null-tol", state.config.null_tol,
                    "Relative singular-value threshold for steady states");
    sub->add_option("--seed", state.config.seed, "Seed echoed into output headers");
}

int dispatch(const std::string& command, CliState& state) {
    state.config.model = qbsim::cli::parse_model(state.model_name);
    for (const auto& text : state.sweep_specs)
        state.config.sweep_axes.push_back(qbsim::cli::parse_axis(text));
    if (state.phi1_set) qbsim::cli::apply_field(state.config, "phi1", state.phi1);

    const auto& config = state.config;
    qbsim::output::Table table;
    if (command == "evolve" || command == "meanfield")
        table = qbsim::cli::run_evolve(config);
    else if (command == "steady")
        table = qbsim::cli::run_steady(config);
    else if (command == "spectrum")
        table = qbsim::cli::run_spectrum(config);
    else
        table = qbsim::cli::run_phase_diagram(config);
    qbsim::output::write_table(config.out, config.format, table, command);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    Eigen::setNbThreads(1);  // parallelism lives at the sweep level

    CLI::App app{"Feedback-controlled driven-dissipative quantum battery simulator"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "Configuration file ([subcommand] sections of key=value lines; "
                   "flags override file values)");

    struct Sub {
        CLI::App* app;
        std::string command;
        std::unique_ptr<CliState> state;
    };
    std::vector<Sub> subs;
    auto add = [&](const char* name, const char* help, const char* default_model) {
        Sub s{app.add_subcommand(name, help), name, std::make_unique<CliState>()};
        add_common_options(s.app, *s.state, default_model);
        subs.push_back(std::move(s));
    };
    add("evolve", "Time-evolve a battery model", "single");
    add("steady", "Steady-state observables (sweepable)", "single");
    add("spectrum", "Liouvillian eigenvalues", "collective");
    add("meanfield", "Mean-field magnetization evolution", "meanfield");
    add("phase-diagram", "Mean-field dynamical phase map", "meanfield");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        for (auto& s : subs)
            if (app.got_subcommand(s.app)) return dispatch(s.command, *s.state);
    } catch (const qbsim::SizeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const qbsim::StiffFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const qbsim::PositivityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const qbsim::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
