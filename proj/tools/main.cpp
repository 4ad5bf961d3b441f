// rabisim — command-line runner: preset scenarios and custom simulations of a
// qubit coupled to a single bosonic mode beyond the rotating-wave regime.
//
// Exit codes: 0 success, 2 validation error, 3 convergence/truncation
// failure, 4 I/O error.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rabi/scenarios.hpp"
#include "rabi/version.hpp"

namespace {

struct CommonFlags {
    double g = 2.0;
    double omega = 1.0;
    double omega0 = 0.0;
    std::size_t nmax = 256;
    double tmax = 3.0;
    std::size_t steps = 2001;
    std::string initial = "+1,0";
    std::string out;
    int order = -1;
    int parity = +1;
    std::string grid = "-6.5,6.5,201";
    std::string outputs = "revival";
};

void add_model_flags(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--g", f.g, "coupling strength g");
    cmd->add_option("--omega", f.omega, "mode frequency (default 1.0)");
    cmd->add_option("--omega0", f.omega0, "qubit frequency");
    cmd->add_option("--nmax", f.nmax, "Fock truncation per parity chain");
}

rabi::RunConfig config_from_flags(const CommonFlags& f, const std::string& command) {
    rabi::RunConfig config;
    config.command = command;
    config.model = rabi::ModelParams{f.omega, f.omega0, f.g, f.nmax};
    config.initial = rabi::parse_initial(f.initial);
    config.t_max_over_T = f.tmax;
    config.n_steps = f.steps;
    config.order = f.order;
    config.parity = rabi::parity_from_sign(f.parity);
    config.grid = rabi::parse_grid(f.grid);
    config.outputs = rabi::split_list(f.outputs);
    config.out_path = f.out;
    return config;
}

void report_written(const std::vector<std::string>& paths) {
    for (const std::string& p : paths) std::cout << "wrote " << p << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum Rabi model simulator (parity-chain spectral propagation)"};
    app.set_version_flag("--version", std::string(rabi::tool_version));
    app.require_subcommand(1);

    // scenario <id>
    std::string scenario_name;
    CommonFlags sf;
    CLI::App* scenario = app.add_subcommand("scenario", "run a preset scenario");
    scenario->add_option("id", scenario_name, "preset id (fig1a..fig5)")->required();
    scenario->add_option("--nmax", sf.nmax, "override Fock truncation");
    scenario->add_option("--tmax", sf.tmax, "override time span (units 2pi/omega)");
    scenario->add_option("--steps", sf.steps, "override sample count");
    scenario->add_option("--grid", sf.grid, "override Wigner grid: min,max,points");
    scenario->add_option("--out", sf.out, "output file or stem")->required();

    // evolve
    CommonFlags ef;
    CLI::App* evolve = app.add_subcommand("evolve", "custom time evolution");
    add_model_flags(evolve, ef);
    evolve->add_option("--tmax", ef.tmax, "time span (units 2pi/omega)");
    evolve->add_option("--steps", ef.steps, "sample count");
    evolve->add_option("--initial", ef.initial, "initial state \"<p>,<n>[:re,im];...\"");
    evolve->add_option("--outputs", ef.outputs, "observables: revival,trajectory,photons");
    evolve->add_option("--order", ef.order,
                       "add perturbative revival columns up to this order (0|1|2)");
    evolve->add_option("--out", ef.out, "output CSV path")->required();

    // spectrum
    CommonFlags pf;
    CLI::App* spectrum = app.add_subcommand("spectrum", "chain eigenvalues");
    add_model_flags(spectrum, pf);
    spectrum->add_option("--parity", pf.parity, "chain parity (+1|-1)");
    spectrum->add_option("--order", pf.order, "add perturbative columns up to order (0|1|2)");
    spectrum->add_option("--out", pf.out, "output CSV path")->required();

    // wigner
    CommonFlags wf;
    CLI::App* wig = app.add_subcommand("wigner", "phase-space grid of the evolved state");
    add_model_flags(wig, wf);
    wig->add_option("--tmax", wf.tmax, "snapshot time (units 2pi/omega)");
    wig->add_option("--initial", wf.initial, "initial state (single parity)");
    wig->add_option("--grid", wf.grid, "grid: min,max,points");
    wig->add_option("--out", wf.out, "output CSV path")->required();

    // detunings
    CommonFlags df;
    CLI::App* det = app.add_subcommand("detunings", "weighted detuning table");
    add_model_flags(det, df);
    det->add_option("--initial", df.initial, "initial state (single parity)");
    det->add_option("--out", df.out, "output CSV path")->required();

    // graph2q
    CommonFlags gf;
    std::size_t levels = 8;
    CLI::App* graph = app.add_subcommand("graph2q", "two-qubit parity-chain graph");
    graph->add_option("--nmax", levels, "photon levels in the graph");
    graph->add_option("--out", gf.out, "output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        std::vector<std::string> written;
        if (scenario->parsed()) {
            rabi::NumericOverrides overrides;
            if (scenario->count("--nmax")) overrides.n_max = sf.nmax;
            if (scenario->count("--tmax")) overrides.t_max_over_T = sf.tmax;
            if (scenario->count("--steps")) overrides.n_steps = sf.steps;
            if (scenario->count("--grid")) overrides.grid = rabi::parse_grid(sf.grid);
            overrides.out_path = sf.out;
            written = rabi::run_scenario(rabi::scenario_from_string(scenario_name), overrides);
        } else if (evolve->parsed()) {
            written = rabi::run_custom(config_from_flags(ef, "evolve"));
        } else if (spectrum->parsed()) {
            written = rabi::run_custom(config_from_flags(pf, "spectrum"));
        } else if (wig->parsed()) {
            written = rabi::run_custom(config_from_flags(wf, "wigner"));
        } else if (det->parsed()) {
            written = rabi::run_custom(config_from_flags(df, "detunings"));
        } else if (graph->parsed()) {
            rabi::RunConfig config;
            config.command = "graph2q";
            config.two_qubit_levels = levels;
            config.out_path = gf.out;
            written = rabi::run_custom(config);
        }
        report_written(written);
        return 0;
    } catch (const rabi::TruncationError& e) {
        std::cerr << "error: " << e.what() << " (hint: raise --nmax)\n";
        return 3;
    } catch (const rabi::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const rabi::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
