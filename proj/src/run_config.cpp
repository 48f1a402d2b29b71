#include "qbsim/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qbsim::cli {

Model parse_model(const std::string& name) {
    if (name == "full") return Model::full;
    if (name == "single") return Model::single;
    if (name == "collective") return Model::collective;
    if (name == "meanfield") return Model::meanfield;
    throw ValidationError("unknown model '" + name +
                          "' (expected full|single|collective|meanfield)");
}

std::string model_name(Model m) {
    switch (m) {
        case Model::full: return "full";
        case Model::single: return "single";
        case Model::collective: return "collective";
        case Model::meanfield: return "meanfield";
    }
    return "?";
}

waveguide::ModelSpec RunConfig::model_spec() const {
    waveguide::ModelSpec spec;
    spec.setup = setup == 1 ? waveguide::Setup::I : waveguide::Setup::II;
    spec.n_atoms = n_atoms;
    spec.gamma_r = gamma_r;
    spec.gamma_l = gamma_l;
    spec.g = g;
    spec.omega = omega_physical();
    spec.phi = phi;
    spec.omega0 = omega0;
    return spec;
}

meanfield::MeanFieldParams RunConfig::mf_params() const {
    // Time coordinate is 1/Gamma, so Gamma = 1 in these units.
    return {omega, g, setup == 1 ? 1 : 2, 1.0};
}

void RunConfig::validate(const std::string& command) const {
    if (setup != 1 && setup != 2) throw ValidationError("setup must be 1 or 2");
    if (n_atoms < 1) throw ValidationError("n-atoms must be >= 1");
    if (gamma_r < 0 || gamma_l < 0 || gamma() <= 0)
        throw ValidationError("decay rates must be >= 0 with gamma_r + gamma_l > 0");
    if (t_max <= 0) throw ValidationError("t-max must be > 0");
    if (n_samples < 2) throw ValidationError("samples must be >= 2");
    if (format != "csv" && format != "json")
        throw ValidationError("format must be csv or json");
    if (rel_tol <= 0 || abs_tol <= 0 || null_tol <= 0)
        throw ValidationError("tolerances must be > 0");
    if (sweep_axes.size() > 2) throw ValidationError("at most two sweep axes are supported");
    for (const auto& axis : sweep_axes) {
        static const char* known[] = {"omega", "g", "gamma_r", "gamma_l", "phi1", "n_atoms"};
        if (std::find_if(std::begin(known), std::end(known), [&](const char* k) {
                return axis.field == k;
            }) == std::end(known))
            throw ValidationError("sweep axis field '" + axis.field +
                                  "' is not a model field (omega, g, gamma_r, gamma_l, "
                                  "phi1, n_atoms)");
        if (axis.steps < 1) throw ValidationError("sweep axis steps must be >= 1");
    }
    if (command == "steady" && model != Model::single && model != Model::collective)
        throw ValidationError("steady requires model single or collective");
    if (command == "spectrum" && model != Model::collective)
        throw ValidationError("spectrum requires model collective");
    if (command == "phase-diagram" && model != Model::meanfield)
        throw ValidationError("phase-diagram requires model meanfield");
}

std::vector<std::pair<std::string, std::string>> RunConfig::meta(
    const std::string& command) const {
    using P = std::pair<std::string, std::string>;
    std::vector<P> m;
    m.emplace_back("command", command);
    m.emplace_back("model", model_name(model));
    m.emplace_back("setup", std::to_string(setup));
    m.emplace_back("n_atoms", std::to_string(n_atoms));
    m.emplace_back("gamma_r", output::format_double(gamma_r));
    m.emplace_back("gamma_l", output::format_double(gamma_l));
    m.emplace_back("g", output::format_double(g));
    m.emplace_back("omega", output::format_double(omega));
    m.emplace_back("omega_unit", uses_big_gamma_units() ? "Gamma=N*gamma" : "rate");
    if (!phi.empty()) {
        std::ostringstream os;
        for (std::size_t k = 0; k < phi.size(); ++k) {
            if (k) os << ",";
            os << output::format_double(phi[k]);
        }
        m.emplace_back("phi", os.str());
    } else {
        m.emplace_back("phi", "2pi");
    }
    m.emplace_back("omega0", output::format_double(omega0));
    m.emplace_back("t_max", output::format_double(t_max));
    m.emplace_back("time_unit", uses_big_gamma_units() ? "1/Gamma" : "1/rate");
    m.emplace_back("samples", std::to_string(n_samples));
    for (std::size_t k = 0; k < sweep_axes.size(); ++k) {
        const auto& a = sweep_axes[k];
        std::ostringstream os;
        os << a.field << ":" << output::format_double(a.min) << ":"
           << output::format_double(a.max) << ":" << a.steps << (a.log ? ":log" : "");
        m.emplace_back("sweep" + std::to_string(k + 1), os.str());
    }
    m.emplace_back("rel_tol", output::format_double(rel_tol));
    m.emplace_back("abs_tol", output::format_double(abs_tol));
    m.emplace_back("null_tol", output::format_double(null_tol));
    m.emplace_back("seed", std::to_string(seed));
    m.emplace_back("energy_unit", "omega0 per atom");
    return m;
}

sweep::Axis parse_axis(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() < 4 || parts.size() > 5)
        throw ValidationError("sweep axis '" + text +
                              "' is not of the form field:min:max:steps[:log]");
    sweep::Axis axis;
    axis.field = parts[0];
    try {
        axis.min = std::stod(parts[1]);
        axis.max = std::stod(parts[2]);
        axis.steps = std::stoi(parts[3]);
    } catch (const std::exception&) {
        throw ValidationError("sweep axis '" + text + "' has non-numeric bounds");
    }
    if (parts.size() == 5) {
        if (parts[4] != "log" && parts[4] != "lin")
            throw ValidationError("sweep axis spacing must be 'log' or 'lin'");
        axis.log = parts[4] == "log";
    }
    return axis;
}

void apply_field(RunConfig& config, const std::string& field, double value) {
    if (field == "omega") {
        config.omega = value;
    } else if (field == "g") {
        config.g = value;
    } else if (field == "gamma_r") {
        config.gamma_r = value;
    } else if (field == "gamma_l") {
        config.gamma_l = value;
    } else if (field == "phi1") {
        if (config.phi.empty()) config.phi.resize(1, 2.0 * kPi);
        config.phi[0] = value;
    } else if (field == "n_atoms") {
        config.n_atoms = static_cast<int>(std::llround(value));
    } else {
        throw ValidationError("unknown sweep field '" + field + "'");
    }
}

}  // namespace qbsim::cli
