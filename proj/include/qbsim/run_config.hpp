#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qbsim/meanfield.hpp"
#include "qbsim/output.hpp"
#include "qbsim/sweep.hpp"
#include "qbsim/waveguide.hpp"

namespace qbsim::cli {

enum class Model { full, single, collective, meanfield };

Model parse_model(const std::string& name);
std::string model_name(Model m);

// Resolved run configuration. Driving amplitude and times are quoted in
// gamma units for the full/single models and in Gamma = N*gamma units for
// the collective/mean-field models, matching how each regime is usually
// parameterized.
struct RunConfig {
    Model model = Model::single;
    int setup = 1;  // 1 or 2
    int n_atoms = 1;
    double gamma_r = 0.5;
    double gamma_l = 0.5;
    double g = 0.0;
    double omega = 0.5;
    std::vector<double> phi;  // empty = all 2*pi
    double omega0 = 1.0;
    double t_max = 10.0;
    int n_samples = 201;
    std::vector<sweep::Axis> sweep_axes;
    std::string out = "-";
    std::string format = "csv";
    int jobs = 0;  // 0 = default_jobs()
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double null_tol = 1e-10;
    long long seed = 0;

    double gamma() const { return gamma_r + gamma_l; }
    // Gamma = N*gamma rate unit used by collective/mean-field models.
    double big_gamma() const { return n_atoms * gamma(); }
    bool uses_big_gamma_units() const {
        return model == Model::collective || model == Model::meanfield;
    }
    // Physical driving amplitude in plain rate units.
    double omega_physical() const {
        return uses_big_gamma_units() ? omega * big_gamma() : omega;
    }
    // Physical time per unit of the run's time coordinate.
    double time_unit() const { return uses_big_gamma_units() ? 1.0 / big_gamma() : 1.0; }

    waveguide::ModelSpec model_spec() const;
    meanfield::MeanFieldParams mf_params() const;

    void validate(const std::string& command) const;
    std::vector<std::pair<std::string, std::string>> meta(const std::string& command) const;
};

// "field:min:max:steps[:log]"
sweep::Axis parse_axis(const std::string& text);

// Applies a swept value to the named field (omega, g, gamma_r, gamma_l,
// phi1, n_atoms).
void apply_field(RunConfig& config, const std::string& field, double value);

output::Table run_evolve(const RunConfig& config);
output::Table run_steady(const RunConfig& config);
output::Table run_spectrum(const RunConfig& config);
output::Table run_phase_diagram(const RunConfig& config);

}  // namespace qbsim::cli
