// scenarios.hpp — run configurations, the preset scenario table, and the CSV
// data emitters shared by the command-line tool and the tests. Identical
// configs produce byte-identical files.

#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rabi/analytic.hpp"
#include "rabi/dynamics.hpp"
#include "rabi/io.hpp"
#include "rabi/model.hpp"
#include "rabi/numerics.hpp"
#include "rabi/version.hpp"
#include "rabi/wigner.hpp"

namespace rabi {

struct InitialComponent {
    Parity parity = Parity::plus;
    std::size_t level = 0;
    cplx amp = {1.0, 0.0};
};

struct GridSpec {
    double lo = -6.5;
    double hi = 6.5;
    std::size_t points = 201;
};

struct RunConfig {
    std::string command = "evolve";  // evolve|spectrum|wigner|detunings|graph2q|scenario
    std::string scenario;            // set when command == "scenario"
    ModelParams model{1.0, 0.0, 0.0, 256};
    std::vector<InitialComponent> initial{{Parity::plus, 0, {1.0, 0.0}}};
    double t_max_over_T = 3.0;  // time span in units of 2 pi / omega
    std::size_t n_steps = 2001;
    std::vector<std::string> outputs{"revival"};
    int order = -1;  // perturbative columns up to this order; -1 = exact only
    Parity parity = Parity::plus;
    GridSpec grid;
    std::size_t two_qubit_levels = 8;
    std::string out_path = "out.csv";

    double period() const { return 2.0 * std::acos(-1.0) / model.omega; }
};

// Numeric knobs a caller may override on top of a scenario preset. Scenario
// physics (omega0, g, initial state) stays pinned to the preset.
struct NumericOverrides {
    std::optional<std::size_t> n_max;
    std::optional<double> t_max_over_T;
    std::optional<std::size_t> n_steps;
    std::optional<GridSpec> grid;
    std::optional<std::string> out_path;
};

inline void apply_overrides(RunConfig& config, const NumericOverrides& o) {
    if (o.n_max) config.model.n_max = *o.n_max;
    if (o.t_max_over_T) config.t_max_over_T = *o.t_max_over_T;
    if (o.n_steps) config.n_steps = *o.n_steps;
    if (o.grid) config.grid = *o.grid;
    if (o.out_path) config.out_path = *o.out_path;
}

// --------------------------------------------------------------------------
// Config validation and (de)serialization
// --------------------------------------------------------------------------

inline void validate_config(const RunConfig& config) {
    config.model.validate();
    if (config.n_steps < 2) throw std::invalid_argument("config field n_steps: must be >= 2");
    if (!(config.t_max_over_T > 0.0))
        throw std::invalid_argument("config field tmax: must be positive");
    if (config.initial.empty())
        throw std::invalid_argument("config field initial: at least one component required");
    double norm2 = 0.0;
    for (const InitialComponent& c : config.initial) {
        if (c.level >= config.model.n_max)
            throw std::invalid_argument("config field initial: level exceeds n_max");
        norm2 += std::norm(c.amp);
    }
    if (!(norm2 > 0.0))
        throw std::invalid_argument("config field initial: amplitudes must not all vanish");
    if (!(config.grid.hi > config.grid.lo) || config.grid.points < 2)
        throw std::invalid_argument("config field grid: need hi > lo and points >= 2");
    if (config.out_path.empty())
        throw std::invalid_argument("config field out: output path required");
}

inline std::string serialize_initial(const std::vector<InitialComponent>& initial) {
    std::string s;
    for (std::size_t i = 0; i < initial.size(); ++i) {
        if (i) s += ";";
        s += (initial[i].parity == Parity::plus) ? "+1," : "-1,";
        s += std::to_string(initial[i].level);
        s += ":" + format_double(initial[i].amp.real()) + "," +
             format_double(initial[i].amp.imag());
    }
    return s;
}

// Parses "<p>,<n>[:re,im];..." with p in {+1,-1}.
inline std::vector<InitialComponent> parse_initial(const std::string& text) {
    std::vector<InitialComponent> out;
    std::size_t pos = 0;
    const auto fail = [&](const std::string& why) {
        throw std::invalid_argument("config field initial: " + why + " in \"" + text + "\"");
    };
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find(';', pos), text.size());
        const std::string part = text.substr(pos, end - pos);
        if (part.empty()) fail("empty component");
        const std::size_t comma = part.find(',');
        if (comma == std::string::npos) fail("expected <p>,<n>");
        InitialComponent c;
        try {
            const int p = std::stoi(part.substr(0, comma));
            c.parity = parity_from_sign(p);
            const std::size_t colon = part.find(':', comma);
            const std::string level_str =
                part.substr(comma + 1, (colon == std::string::npos ? part.size() : colon) -
                                           comma - 1);
            const long level = std::stol(level_str);
            if (level < 0) fail("negative level");
            c.level = static_cast<std::size_t>(level);
            if (colon != std::string::npos) {
                const std::string amp_str = part.substr(colon + 1);
                const std::size_t amp_comma = amp_str.find(',');
                if (amp_comma == std::string::npos) fail("amplitude needs re,im");
                c.amp = cplx(std::stod(amp_str.substr(0, amp_comma)),
                             std::stod(amp_str.substr(amp_comma + 1)));
            }
        } catch (const std::invalid_argument&) {
            fail("malformed number");
        } catch (const std::out_of_range&) {
            fail("number out of range");
        }
        out.push_back(c);
        if (end == text.size()) break;
        pos = end + 1;
    }
    if (out.empty()) fail("no components");
    return out;
}

inline std::string serialize_grid(const GridSpec& g) {
    return format_double(g.lo) + "," + format_double(g.hi) + "," + std::to_string(g.points);
}

inline GridSpec parse_grid(const std::string& text) {
    GridSpec g;
    const std::size_t c1 = text.find(',');
    const std::size_t c2 = (c1 == std::string::npos) ? std::string::npos : text.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw std::invalid_argument("config field grid: expected min,max,points");
    try {
        g.lo = std::stod(text.substr(0, c1));
        g.hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
        const long p = std::stol(text.substr(c2 + 1));
        if (p < 2) throw std::invalid_argument("");
        g.points = static_cast<std::size_t>(p);
    } catch (const std::exception&) {
        throw std::invalid_argument("config field grid: expected min,max,points");
    }
    return g;
}

inline std::string join_outputs(const std::vector<std::string>& outputs) {
    std::string s;
    for (std::size_t i = 0; i < outputs.size(); ++i) {
        if (i) s += ",";
        s += outputs[i];
    }
    return s;
}

inline std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find(',', pos), text.size());
        if (end > pos) out.push_back(text.substr(pos, end - pos));
        if (end == text.size()) break;
        pos = end + 1;
    }
    return out;
}

inline MetadataBlock base_metadata(const RunConfig& config) {
    MetadataBlock meta;
    meta.emplace_back("tool", tool_name);
    meta.emplace_back("version", tool_version);
    meta.emplace_back("command", config.command);
    if (!config.scenario.empty()) meta.emplace_back("scenario", config.scenario);
    meta.emplace_back("omega", format_double(config.model.omega));
    meta.emplace_back("omega0", format_double(config.model.omega0));
    meta.emplace_back("g", format_double(config.model.g));
    meta.emplace_back("nmax", std::to_string(config.model.n_max));
    meta.emplace_back("tmax_over_T", format_double(config.t_max_over_T));
    meta.emplace_back("steps", std::to_string(config.n_steps));
    meta.emplace_back("initial", serialize_initial(config.initial));
    meta.emplace_back("outputs", join_outputs(config.outputs));
    meta.emplace_back("order", std::to_string(config.order));
    meta.emplace_back("parity", config.parity == Parity::plus ? "+1" : "-1");
    meta.emplace_back("grid", serialize_grid(config.grid));
    meta.emplace_back("two_qubit_levels", std::to_string(config.two_qubit_levels));
    meta.emplace_back("time_unit", "2pi_over_omega");
    return meta;
}

// Rebuilds a run configuration from a recorded metadata block. The output
// path is left for the caller to choose.
inline RunConfig config_from_metadata(const MetadataBlock& meta) {
    RunConfig config;
    config.command = metadata_value(meta, "command", "evolve");
    config.scenario = metadata_value(meta, "scenario");
    config.model.omega = std::stod(metadata_value(meta, "omega", "1"));
    config.model.omega0 = std::stod(metadata_value(meta, "omega0", "0"));
    config.model.g = std::stod(metadata_value(meta, "g", "0"));
    config.model.n_max = static_cast<std::size_t>(std::stol(metadata_value(meta, "nmax", "256")));
    config.t_max_over_T = std::stod(metadata_value(meta, "tmax_over_T", "3"));
    config.n_steps = static_cast<std::size_t>(std::stol(metadata_value(meta, "steps", "2001")));
    config.initial = parse_initial(metadata_value(meta, "initial", "+1,0"));
    const std::string outputs = metadata_value(meta, "outputs", "revival");
    config.outputs = split_list(outputs);
    config.order = std::stoi(metadata_value(meta, "order", "-1"));
    config.parity = parity_from_sign(std::stoi(metadata_value(meta, "parity", "+1")));
    config.grid = parse_grid(metadata_value(meta, "grid", "-6.5,6.5,201"));
    config.two_qubit_levels =
        static_cast<std::size_t>(std::stol(metadata_value(meta, "two_qubit_levels", "8")));
    config.out_path.clear();
    return config;
}

// --------------------------------------------------------------------------
// Preset scenarios
// --------------------------------------------------------------------------

enum class ScenarioId {
    fig1a, fig1b, fig1c, fig2a, fig2b, fig3a, fig3bcd, fig4a, fig4b, fig4c, fig5
};

inline const std::vector<std::pair<std::string, ScenarioId>>& scenario_names() {
    static const std::vector<std::pair<std::string, ScenarioId>> names = {
        {"fig1a", ScenarioId::fig1a},   {"fig1b", ScenarioId::fig1b},
        {"fig1c", ScenarioId::fig1c},   {"fig2a", ScenarioId::fig2a},
        {"fig2b", ScenarioId::fig2b},   {"fig3a", ScenarioId::fig3a},
        {"fig3bcd", ScenarioId::fig3bcd}, {"fig4a", ScenarioId::fig4a},
        {"fig4b", ScenarioId::fig4b},   {"fig4c", ScenarioId::fig4c},
        {"fig5", ScenarioId::fig5},
    };
    return names;
}

inline ScenarioId scenario_from_string(const std::string& s) {
    for (const auto& [name, id] : scenario_names())
        if (name == s) return id;
    throw std::invalid_argument("unknown scenario id: " + s);
}

inline std::string to_string(ScenarioId id) {
    for (const auto& [name, sid] : scenario_names())
        if (sid == id) return name;
    return "?";
}

// Fixed parameter set of each preset. All use omega = 1 and g/omega = 2
// except where noted; overrides may change numerics but not the physics.
inline RunConfig scenario_config(ScenarioId id) {
    RunConfig c;
    c.command = "scenario";
    c.scenario = to_string(id);
    c.model = ModelParams{1.0, 0.0, 2.0, 256};
    switch (id) {
        case ScenarioId::fig1a:
            c.t_max_over_T = 2.0;
            c.n_steps = 321;
            c.outputs = {"photons"};
            break;
        case ScenarioId::fig1b:
            c.outputs = {"revival"};
            break;
        case ScenarioId::fig1c:
            c.initial = {{Parity::plus, 2, {1.0, 0.0}}};
            c.outputs = {"revival"};
            break;
        case ScenarioId::fig2a:
            c.model.omega0 = 0.5;
            c.outputs = {"photons"};
            break;
        case ScenarioId::fig2b:
            c.model.omega0 = 0.5;
            c.outputs = {"revival"};
            break;
        case ScenarioId::fig3a:
            c.t_max_over_T = 5.0;
            c.outputs = {"trajectory", "wigner"};
            break;
        case ScenarioId::fig3bcd:
            c.model.omega0 = 0.5;
            c.t_max_over_T = 5.0;
            c.outputs = {"trajectory", "wigner"};
            break;
        case ScenarioId::fig4a:
            c.model.omega0 = 0.3;
            c.order = 1;
            c.outputs = {"revival"};
            break;
        case ScenarioId::fig4b:
            c.model.omega0 = 0.5;
            c.order = 1;
            c.outputs = {"revival"};
            break;
        case ScenarioId::fig4c:
            c.model.omega0 = 0.5;
            c.outputs = {"detunings"};
            break;
        case ScenarioId::fig5:
            c.two_qubit_levels = 6;
            c.outputs = {"graph"};
            break;
    }
    return c;
}

// --------------------------------------------------------------------------
// Emitters
// --------------------------------------------------------------------------

namespace detail {

struct SplitInitial {
    std::optional<ChainState> plus;
    std::optional<ChainState> minus;
    double weight_plus = 0.0;
    double weight_minus = 0.0;

    bool cross_chain() const { return plus && minus; }
};

inline SplitInitial build_initial(const RunConfig& config) {
    double norm2 = 0.0;
    for (const InitialComponent& c : config.initial) norm2 += std::norm(c.amp);
    const double scale = 1.0 / std::sqrt(norm2);

    SplitInitial out;
    for (Parity p : {Parity::plus, Parity::minus}) {
        std::vector<cplx> amps(config.model.n_max, cplx{0.0, 0.0});
        double w = 0.0;
        for (const InitialComponent& c : config.initial) {
            if (c.parity != p) continue;
            amps[c.level] += scale * c.amp;
        }
        w = norm_squared(amps);
        if (w <= 0.0) continue;
        const double inv = 1.0 / std::sqrt(w);
        for (cplx& a : amps) a *= inv;
        ChainState s;
        s.parity = p;
        s.amps = std::move(amps);
        if (p == Parity::plus) {
            out.plus = std::move(s);
            out.weight_plus = w;
        } else {
            out.minus = std::move(s);
            out.weight_minus = w;
        }
    }
    return out;
}

inline std::string strip_csv_suffix(const std::string& path) {
    if (path.size() > 4 && path.compare(path.size() - 4, 4, ".csv") == 0)
        return path.substr(0, path.size() - 4);
    return path;
}

inline std::string snapshot_label(double t_over_T) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", t_over_T);
    return buf;
}

// Is the configured initial state exactly |p, 0_b> on a single chain?
inline bool initial_is_single_ground(const RunConfig& config) {
    return config.initial.size() == 1 && config.initial[0].level == 0;
}

inline void add_warning_metadata(MetadataBlock& meta, const TimeSeries& ts) {
    for (const std::string& w : ts.warnings) meta.emplace_back("warning", w);
}

// Emits the revival CSV. Single-chain initial states get one revival column
// (plus the closed-form column when omega0 = 0 and the initial state is
// |p,0_b>); cross-chain superpositions get per-chain, combined, and parity
// columns. order >= 0 adds a perturbative reconstruction column and, for
// |+,0_b> initial states, the two-mode estimate.
inline std::string emit_revival(const RunConfig& config) {
    const SplitInitial split = build_initial(config);
    const double period = config.period();
    const std::vector<double> t_grid =
        uniform_grid(config.t_max_over_T * period, config.n_steps);

    std::vector<std::string> columns{"t_over_T"};
    std::vector<std::vector<double>> data;  // per column
    data.emplace_back();
    for (double t : t_grid) data.back().push_back(t / period);

    MetadataBlock meta = base_metadata(config);

    std::optional<Propagator> prop_plus, prop_minus;
    if (split.plus) prop_plus = make_propagator(config.model, Parity::plus, *split.plus);
    if (split.minus) prop_minus = make_propagator(config.model, Parity::minus, *split.minus);

    if (split.cross_chain()) {
        TimeSeries rp = revival_series(*prop_plus, t_grid);
        TimeSeries rm = revival_series(*prop_minus, t_grid);
        columns.insert(columns.end(),
                       {"revival_plus", "revival_minus", "revival_total", "parity_expect"});
        data.push_back(rp.values);
        data.push_back(rm.values);
        std::vector<double> total(t_grid.size()), par(t_grid.size());
        ChainSplit cs;
        cs.weight_plus = split.weight_plus;
        cs.weight_minus = split.weight_minus;
        for (std::size_t i = 0; i < t_grid.size(); ++i) {
            total[i] = split.weight_plus * rp.values[i] + split.weight_minus * rm.values[i];
            cs.plus = evolve(*prop_plus, t_grid[i]);
            cs.minus = evolve(*prop_minus, t_grid[i]);
            par[i] = parity_expectation(chain_to_tensor(cs));
        }
        data.push_back(std::move(total));
        data.push_back(std::move(par));
        add_warning_metadata(meta, rp);
        add_warning_metadata(meta, rm);
    } else {
        const Propagator& prop = prop_plus ? *prop_plus : *prop_minus;
        TimeSeries r = revival_series(prop, t_grid);
        columns.push_back("revival");
        data.push_back(r.values);
        add_warning_metadata(meta, r);
        if (config.model.omega0 == 0.0 && initial_is_single_ground(config)) {
            columns.push_back("revival_analytic");
            std::vector<double> col(t_grid.size());
            for (std::size_t i = 0; i < t_grid.size(); ++i)
                col[i] = revival_probability_w0_zero(config.model.beta0(), config.model.omega,
                                                     t_grid[i]);
            data.push_back(std::move(col));
        }
    }

    if (config.order >= 0 && !split.cross_chain() && initial_is_single_ground(config)) {
        const Parity p = split.plus ? Parity::plus : Parity::minus;
        columns.push_back("revival_order" + std::to_string(config.order));
        std::vector<double> col(t_grid.size());
        for (std::size_t i = 0; i < t_grid.size(); ++i)
            col[i] = perturbative_revival(config.model, p, t_grid[i], config.order);
        data.push_back(std::move(col));
        if (p == Parity::plus) {
            columns.push_back("revival_two_mode");
            ClampStats clamp;
            std::vector<double> tm(t_grid.size());
            for (std::size_t i = 0; i < t_grid.size(); ++i)
                tm[i] = clamp(two_mode_revival(config.model, t_grid[i]));
            meta.emplace_back("clamped_samples_two_mode", std::to_string(clamp.events));
            data.push_back(std::move(tm));
        }
    }

    CsvWriter csv(config.out_path);
    csv.write_metadata(meta);
    csv.write_header(columns);
    std::vector<double> row(columns.size());
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        for (std::size_t c = 0; c < data.size(); ++c) row[c] = data[c][i];
        csv.write_row(row);
    }
    csv.close();
    return config.out_path;
}

// Long-format photon statistics (t_over_T, n_b, probability), truncated to
// the emitted_levels lowest levels. Cross-chain states emit the weighted sum
// over chains.
inline std::string emit_photons(const RunConfig& config, const std::vector<double>& t_grid,
                                std::size_t emitted_levels, const std::string& path) {
    const SplitInitial split = build_initial(config);
    const double period = config.period();

    std::optional<Propagator> prop_plus, prop_minus;
    if (split.plus) prop_plus = make_propagator(config.model, Parity::plus, *split.plus);
    if (split.minus) prop_minus = make_propagator(config.model, Parity::minus, *split.minus);

    MetadataBlock meta = base_metadata(config);
    meta.emplace_back("photon_rows_per_time", std::to_string(emitted_levels));
    std::string snapshots;
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (i) snapshots += ",";
        snapshots += format_double(t_grid[i] / period);
    }
    meta.emplace_back("snapshot_times_over_T", snapshots);

    CsvWriter csv(path);
    csv.write_metadata(meta);
    csv.write_header({"t_over_T", "n_b", "probability"});
    for (double t : t_grid) {
        std::vector<double> p(config.model.n_max, 0.0);
        if (prop_plus) {
            const std::vector<double> pp = photon_statistics(evolve(*prop_plus, t));
            for (std::size_t n = 0; n < p.size(); ++n) p[n] += split.weight_plus * pp[n];
        }
        if (prop_minus) {
            const std::vector<double> pm = photon_statistics(evolve(*prop_minus, t));
            for (std::size_t n = 0; n < p.size(); ++n) p[n] += split.weight_minus * pm[n];
        }
        for (std::size_t n = 0; n < emitted_levels && n < p.size(); ++n)
            csv.write_row({t / period, static_cast<double>(n), p[n]});
    }
    csv.close();
    return path;
}

inline std::string emit_trajectory(const RunConfig& config, const std::string& path) {
    const SplitInitial split = build_initial(config);
    const double period = config.period();
    const std::vector<double> t_grid =
        uniform_grid(config.t_max_over_T * period, config.n_steps);

    std::optional<Propagator> prop_plus, prop_minus;
    if (split.plus) prop_plus = make_propagator(config.model, Parity::plus, *split.plus);
    if (split.minus) prop_minus = make_propagator(config.model, Parity::minus, *split.minus);

    MetadataBlock meta = base_metadata(config);
    CsvWriter csv(path);
    csv.write_metadata(meta);
    csv.write_header({"t_over_T", "x", "p"});
    const double rt2 = std::sqrt(2.0);
    for (double t : t_grid) {
        cplx b = 0.0;
        if (prop_plus) b += split.weight_plus * mean_lowering(evolve(*prop_plus, t));
        if (prop_minus) b += split.weight_minus * mean_lowering(evolve(*prop_minus, t));
        csv.write_row({t / period, rt2 * b.real(), rt2 * b.imag()});
    }
    csv.close();
    return path;
}

// Wigner grid of the evolved state at one snapshot time, long format (x,p,W).
inline std::string emit_wigner(const RunConfig& config, double t_over_T,
                               const std::string& path) {
    const SplitInitial split = build_initial(config);
    if (split.cross_chain())
        throw std::invalid_argument(
            "config field initial: wigner output needs a single-parity initial state");
    const Parity p = split.plus ? Parity::plus : Parity::minus;
    const ChainState& psi0 = split.plus ? *split.plus : *split.minus;
    const Propagator prop = make_propagator(config.model, p, psi0);
    const ChainState s = evolve(prop, t_over_T * config.period());

    const std::vector<double> x_axis =
        axis_linspace(config.grid.lo, config.grid.hi, config.grid.points);
    const WignerGrid grid = wigner(s, x_axis, x_axis);

    MetadataBlock meta = base_metadata(config);
    meta.emplace_back("snapshot_t_over_T", format_double(t_over_T));
    meta.emplace_back("max_norm_defect", format_double(grid.max_norm_defect));
    CsvWriter csv(path);
    csv.write_metadata(meta);
    csv.write_header({"x", "p", "W"});
    for (std::size_t ix = 0; ix < grid.x_axis.size(); ++ix)
        for (std::size_t ip = 0; ip < grid.p_axis.size(); ++ip)
            csv.write_row({grid.x_axis[ix], grid.p_axis[ip], grid.values(ix, ip)});
    csv.close();
    return path;
}

inline std::string emit_spectrum(const RunConfig& config) {
    const SymTridiag h = build_chain_hamiltonian(config.model, config.parity);
    const EigenPairs eig = eig_sym_tridiag(h);

    std::vector<std::string> columns{"level", "energy"};
    for (int o = 0; o <= config.order; ++o)
        columns.push_back("energy_order" + std::to_string(o));
    if (config.order >= 1) columns.push_back("delta_order1");

    MetadataBlock meta = base_metadata(config);
    CsvWriter csv(config.out_path);
    csv.write_metadata(meta);
    csv.write_header(columns);
    const std::size_t top = config.model.n_max > 16 ? config.model.n_max - 16 : 0;
    for (std::size_t l = 0; l < config.model.n_max; ++l) {
        std::vector<double> row{static_cast<double>(l), eig.values[l]};
        if (config.order >= 0 && l < top) {
            for (int o = 0; o <= config.order; ++o)
                row.push_back(perturbative_energy(config.model, config.parity, l, o).energy);
            if (config.order >= 1)
                row.push_back(perturbative_energy(config.model, config.parity, l, 1).delta);
        } else if (config.order >= 0) {
            break;  // perturbative columns undefined near the truncation edge
        }
        csv.write_row(row);
    }
    csv.close();
    return config.out_path;
}

inline std::string emit_detunings(const RunConfig& config) {
    const SplitInitial split = build_initial(config);
    if (split.cross_chain())
        throw std::invalid_argument(
            "config field initial: detunings need a single-parity initial state");
    const Parity p = split.plus ? Parity::plus : Parity::minus;
    const ChainState& psi0 = split.plus ? *split.plus : *split.minus;
    const Propagator prop = make_propagator(config.model, p, psi0);
    const DetuningTable table = detuning_table(prop);

    MetadataBlock meta = base_metadata(config);
    meta.emplace_back("e_ref", format_double(table.e_ref));
    CsvWriter csv(config.out_path);
    csv.write_metadata(meta);
    csv.write_header({"level", "energy", "delta", "weight"});
    for (const DetuningTable::Row& row : table.rows)
        csv.write_row({static_cast<double>(row.level), row.energy, row.delta, row.weight});
    csv.close();
    return config.out_path;
}

inline std::string emit_two_qubit_graph(const RunConfig& config) {
    const ChainGraph graph = build_two_qubit_graph(config.two_qubit_levels);
    MetadataBlock meta = base_metadata(config);
    meta.emplace_back("n_components", std::to_string(graph.n_components));
    CsvWriter csv(config.out_path);
    csv.write_metadata(meta);
    csv.write_header({"from_config", "from_n", "to_config", "to_n", "kind", "component"});
    for (const GraphEdge& e : graph.edges) {
        const TwoQubitVertex& a = graph.vertices[e.from];
        const TwoQubitVertex& b = graph.vertices[e.to];
        csv.write_strings({to_string(a.config), std::to_string(a.photons), to_string(b.config),
                           std::to_string(b.photons),
                           e.kind == CouplingKind::rotating ? "rotating" : "counter_rotating",
                           std::to_string(graph.component[e.from])});
    }
    csv.close();
    return config.out_path;
}

// fig2b: one file comparing the omega0 = 0 and omega0 = preset revival curves.
inline std::string emit_revival_comparison(const RunConfig& config) {
    const double period = config.period();
    const std::vector<double> t_grid =
        uniform_grid(config.t_max_over_T * period, config.n_steps);

    ModelParams base = config.model;
    base.omega0 = 0.0;
    RunConfig zero_config = config;
    zero_config.model = base;
    const SplitInitial s0 = build_initial(zero_config);
    const SplitInitial s1 = build_initial(config);
    const Propagator p0 = make_propagator(base, Parity::plus, *s0.plus);
    const Propagator p1 = make_propagator(config.model, Parity::plus, *s1.plus);
    const TimeSeries r0 = revival_series(p0, t_grid);
    const TimeSeries r1 = revival_series(p1, t_grid);

    MetadataBlock meta = base_metadata(config);
    meta.emplace_back("comparison_omega0", format_double(config.model.omega0));
    CsvWriter csv(config.out_path);
    csv.write_metadata(meta);
    csv.write_header({"t_over_T", "revival_omega0_zero", "revival_omega0_nonzero"});
    for (std::size_t i = 0; i < t_grid.size(); ++i)
        csv.write_row({t_grid[i] / period, r0.values[i], r1.values[i]});
    csv.close();
    return config.out_path;
}

}  // namespace detail

// Runs a custom configuration; returns the written file paths.
inline std::vector<std::string> run_custom(const RunConfig& config) {
    validate_config(config);
    std::vector<std::string> written;
    if (config.command == "spectrum") {
        written.push_back(detail::emit_spectrum(config));
    } else if (config.command == "detunings") {
        written.push_back(detail::emit_detunings(config));
    } else if (config.command == "wigner") {
        written.push_back(detail::emit_wigner(config, config.t_max_over_T, config.out_path));
    } else if (config.command == "graph2q") {
        written.push_back(detail::emit_two_qubit_graph(config));
    } else if (config.command == "evolve") {
        bool wrote_main = false;
        const std::string stem = detail::strip_csv_suffix(config.out_path);
        for (const std::string& out : config.outputs) {
            if (out == "revival") {
                written.push_back(detail::emit_revival(config));
                wrote_main = true;
            } else if (out == "trajectory") {
                written.push_back(detail::emit_trajectory(
                    config, wrote_main ? stem + "_trajectory.csv" : config.out_path));
                wrote_main = true;
            } else if (out == "photons") {
                const std::vector<double> t_grid =
                    uniform_grid(config.t_max_over_T * config.period(), config.n_steps);
                written.push_back(
                    detail::emit_photons(config, t_grid, 48, stem + "_photons.csv"));
            } else {
                throw std::invalid_argument("config field outputs: unknown selector " + out);
            }
        }
        if (written.empty())
            throw std::invalid_argument("config field outputs: nothing to emit");
    } else {
        throw std::invalid_argument("unknown command: " + config.command);
    }
    return written;
}

// Runs a preset scenario with optional numeric overrides.
inline std::vector<std::string> run_scenario(ScenarioId id, const NumericOverrides& overrides) {
    RunConfig config = scenario_config(id);
    apply_overrides(config, overrides);
    validate_config(config);
    const std::string stem = detail::strip_csv_suffix(config.out_path);
    const double period = config.period();
    std::vector<std::string> written;

    switch (id) {
        case ScenarioId::fig1a: {
            const std::vector<double> t_grid =
                uniform_grid(config.t_max_over_T * period, config.n_steps);
            written.push_back(detail::emit_photons(config, t_grid, 48, config.out_path));
            break;
        }
        case ScenarioId::fig1b:
        case ScenarioId::fig1c:
            written.push_back(detail::emit_revival(config));
            break;
        case ScenarioId::fig2a: {
            std::vector<double> t_grid;
            for (double u : {0.0, 0.25, 0.5, 0.75, 1.0, 2.0}) t_grid.push_back(u * period);
            written.push_back(detail::emit_photons(config, t_grid, 48, config.out_path));
            break;
        }
        case ScenarioId::fig2b:
            written.push_back(detail::emit_revival_comparison(config));
            break;
        case ScenarioId::fig3a:
        case ScenarioId::fig3bcd: {
            written.push_back(detail::emit_trajectory(config, stem + "_trajectory.csv"));
            const std::vector<double> snapshots =
                (id == ScenarioId::fig3a) ? std::vector<double>{0.5}
                                          : std::vector<double>{0.5, 1.0, 5.0};
            for (double u : snapshots)
                written.push_back(detail::emit_wigner(
                    config, u, stem + "_wigner_t" + detail::snapshot_label(u) + ".csv"));
            break;
        }
        case ScenarioId::fig4a:
        case ScenarioId::fig4b:
            written.push_back(detail::emit_revival(config));
            break;
        case ScenarioId::fig4c:
            written.push_back(detail::emit_detunings(config));
            break;
        case ScenarioId::fig5:
            written.push_back(detail::emit_two_qubit_graph(config));
            break;
    }
    return written;
}

}  // namespace rabi
