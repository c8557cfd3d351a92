#pragma once

#include <complex>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rscat/cavity.hpp"
#include "rscat/config.hpp"
#include "rscat/design.hpp"
#include "rscat/errors.hpp"
#include "rscat/herald.hpp"
#include "rscat/protocols.hpp"
#include "rscat/table.hpp"
#include "rscat/units.hpp"

namespace rscat {

// Command layer behind the CLI. Every command reads a flat RunConfig and
// produces a deterministic table or JSON document; the thin main() only
// deals with argv and file IO.

namespace detail {

inline DesignSpec design_spec_from_config(const RunConfig& cfg) {
    DesignSpec spec;
    if (cfg.has("preset")) {
        spec = preset_by_name(cfg.require_string("preset"));
    } else if (!cfg.has("gamma") || !cfg.has("omega_photon")) {
        throw ConfigError(
            "missing required parameter 'preset' (or explicit 'gamma' and 'omega_photon')");
    }
    if (cfg.has("gamma")) spec.gamma = cfg.require_energy_uev("gamma");
    if (cfg.has("kappa_s")) spec.kappa_s = cfg.require_energy_uev("kappa_s");
    if (cfg.has("omega_photon")) {
        spec.omega_photon_ev = cfg.require_energy_uev("omega_photon") / uev_per_ev;
    }
    if (cfg.has("oscillator_strength")) {
        spec.oscillator_strength = cfg.require_double("oscillator_strength");
        spec.g.reset();  // an explicit estimator input wins over a preset g
    }
    if (cfg.has("mode_volume")) spec.mode_volume_um3 = cfg.require_double("mode_volume");
    if (cfg.has("relative_permittivity")) {
        spec.relative_permittivity = cfg.require_double("relative_permittivity");
    }
    if (cfg.has("g")) spec.g = cfg.require_energy_uev("g");
    return spec;
}

/// Cavity for the sweep commands: either from a solved preset or from
/// explicit rates. `rs_g = true` pins g to the resonance-scattering value.
inline CavitySystem cavity_from_config(const RunConfig& cfg) {
    double kappa = 0.0, kappa_s = 0.0, g = 0.0, gamma = 0.0;
    double omega_c = 0.0;
    bool have_base = false;
    if (cfg.has("preset")) {
        const DesignReport report = solve_resonance_scattering(design_spec_from_config(cfg));
        kappa = report.kappa;
        kappa_s = report.kappa_s;
        g = report.g;
        gamma = report.gamma;
        omega_c = 0.0;  // sweeps are in detuning; absolute energy drops out
        have_base = true;
    }
    if (!have_base) {
        if (!cfg.has("kappa")) {
            throw ConfigError("missing required parameter 'kappa' (or 'preset')");
        }
        if (!cfg.has("gamma")) {
            throw ConfigError("missing required parameter 'gamma' (or 'preset')");
        }
    }
    if (cfg.has("kappa")) kappa = cfg.require_energy_uev("kappa");
    if (cfg.has("kappa_s")) kappa_s = cfg.require_energy_uev("kappa_s");
    if (cfg.has("gamma")) gamma = cfg.require_energy_uev("gamma");
    if (cfg.has("g")) g = cfg.require_energy_uev("g");
    if (cfg.has("omega_c")) omega_c = cfg.require_energy_uev("omega_c");
    const double omega_d = cfg.has("omega_d") ? cfg.require_energy_uev("omega_d") : omega_c;
    if (cfg.get_bool("rs_g", false)) {
        g = resonance_scattering_g(kappa + kappa_s, gamma);
    }
    return {kappa, kappa_s, g, gamma, omega_c, omega_d};
}

inline ContrastPair first_contrast(const RunConfig& cfg) {
    if (cfg.has("r_c") || cfg.has("r_d")) {
        return {Complex(cfg.require_double("r_c"), 0.0),
                Complex(cfg.require_double("r_d"), 0.0)};
    }
    if (cfg.has("preset")) {
        const DesignReport report = solve_resonance_scattering(design_spec_from_config(cfg));
        return {Complex(report.r_c, 0.0), Complex(report.r_d, 0.0)};
    }
    throw ConfigError("missing required parameter 'r_c' (or 'preset')");
}

inline ContrastPair second_contrast(const RunConfig& cfg, const ContrastPair& fallback) {
    if (!cfg.has("r_c2") && !cfg.has("r_d2")) return fallback;
    return {Complex(cfg.require_double("r_c2"), 0.0),
            Complex(cfg.require_double("r_d2"), 0.0)};
}

}  // namespace detail

/// Reflectivity spectrum of the bare and the dipole-coupled cavity against
/// probe detuning omega - omega_c. `sweep_unit` rescales the bounds: uev
/// (default), kappa, kappa_t or gamma.
inline Table reflectivity_sweep_table(const RunConfig& cfg) {
    const CavitySystem sys = detail::cavity_from_config(cfg);
    const SweepSpec spec = sweep_from_config(cfg, "detuning", /*default_log=*/false);

    const std::string unit = cfg.get_string("sweep_unit", "uev");
    double scale = 1.0;
    if (unit == "kappa") {
        scale = sys.kappa();
    } else if (unit == "kappa_t") {
        scale = sys.kappa_total();
    } else if (unit == "gamma") {
        scale = sys.gamma();
    } else if (unit != "uev") {
        throw ConfigError("parameter 'sweep_unit' must be uev, kappa, kappa_t or gamma");
    }

    Table table;
    table.columns = {"detuning_uev", "abs_r_c", "abs_r_d", "phase_c", "phase_d"};
    for (double x : sweep_grid(spec)) {
        const double detuning = x * scale;
        const double omega = sys.omega_c() + detuning;
        const ComplexAmplitude r_c = empty_cavity_reflectivity(sys, omega);
        const ComplexAmplitude r_d = reflectivity(sys, omega);
        table.rows.push_back({detuning, r_c.magnitude(), r_d.magnitude(),
                              r_c.phase(), r_d.phase()});
    }
    return table;
}

/// On-resonance contrast and Bell-state figures as the loss budget shifts
/// between the input mirror and the side channels. The sweep walks
/// kappa/kappa_s at fixed kappa_T with g pinned to the resonance-scattering
/// condition throughout.
inline Table loss_sweep_table(const RunConfig& cfg) {
    double kappa_T = 0.0;
    double gamma = 0.0;
    if (cfg.has("kappa_T")) {
        kappa_T = cfg.require_energy_uev("kappa_T");
        gamma = cfg.require_energy_uev("gamma");
    } else if (cfg.has("preset")) {
        const DesignReport report =
            solve_resonance_scattering(detail::design_spec_from_config(cfg));
        kappa_T = report.kappa_T;
        gamma = report.gamma;
    } else {
        throw ConfigError("missing required parameter 'kappa_T' (or 'preset')");
    }
    const double g = resonance_scattering_g(kappa_T, gamma);
    const SweepSpec spec = sweep_from_config(cfg, "kappa_ratio", /*default_log=*/true);

    Table table;
    table.columns = {"kappa_ratio", "abs_r_c", "abs_r_d",
                     "F_psi_plus", "eta_psi_plus", "eta_psi_minus"};
    for (double ratio : sweep_grid(spec)) {
        if (!(ratio > 0.0)) throw ConfigError("kappa_ratio sweep must stay positive");
        const double kappa_s = kappa_T / (1.0 + ratio);
        const double kappa = kappa_T - kappa_s;
        const CavitySystem sys(kappa, kappa_s, g, gamma, 0.0, 0.0);
        const ResonantContrast contrast = resonant_contrast(sys);
        const ContrastPair pair{contrast.r_c.value, contrast.r_d.value};
        table.rows.push_back({ratio, contrast.r_c.magnitude(), contrast.r_d.magnitude(),
                              fidelity_psi_plus(pair), efficiency_psi_plus(pair),
                              efficiency_psi_minus(pair)});
    }
    return table;
}

/// Runs one of the entangling protocols on explicit contrast values (r_c,
/// r_d, optionally r_c2/r_d2) or on the contrast of a solved preset.
inline Table protocol_table(const RunConfig& cfg) {
    const std::string kind = cfg.get_string("protocol", "photon-photon");
    const ContrastPair c1 = detail::first_contrast(cfg);

    std::vector<ProtocolResult> results;
    if (kind == "photon-photon") {
        results = photon_photon_protocol(c1);
    } else if (kind == "spin-spin") {
        results = spin_spin_protocol(c1, detail::second_contrast(cfg, c1));
    } else if (kind == "ghz") {
        results = ghz_protocol(static_cast<int>(cfg.require_int("n")), c1);
    } else if (kind == "interference") {
        results = interference_herald(c1, detail::second_contrast(cfg, c1));
    } else {
        throw ConfigError(
            "parameter 'protocol' must be photon-photon, spin-spin, ghz or interference");
    }

    Table table;
    table.columns = {"outcome", "fidelity", "efficiency", "branch_probability"};
    for (const auto& res : results) {
        table.rows.push_back({res.outcome_label, res.fidelity, res.efficiency,
                              res.branch_probability});
    }
    return table;
}

/// Monte Carlo herald timing. Requires an explicit seed so runs are
/// reproducible; identical (config, seed) gives byte-identical output.
inline Table herald_table(const RunConfig& cfg) {
    HeraldConfig hc;
    hc.success_probability = cfg.require_double("p");
    hc.detector_efficiency = cfg.get_double("detector_efficiency", 1.0);
    hc.attempt_period_ns = cfg.get_double("attempt_period", 1.0);
    hc.coherence_time_us = cfg.get_double("coherence_time", 1.0);
    hc.max_attempts = cfg.get_int("max_attempts", 10000);
    hc.seed = cfg.require_seed();
    const long long trials = cfg.get_int("trials", 100000);
    const std::string mode = cfg.get_string("mode", "pair");

    SummaryStats stats;
    if (mode == "pair") {
        stats = summarize(run_pair_trials(hc, trials), hc);
    } else if (mode == "cluster") {
        hc.n_spins = static_cast<int>(cfg.get_int("n_spins", 4));
        stats = summarize(run_cluster_trials(hc, trials), hc);
    } else {
        throw ConfigError("parameter 'mode' must be pair or cluster");
    }

    Table table;
    table.columns = {"mode", "trials", "success_fraction", "attempts_mean",
                     "time_mean_ns", "time_median_ns", "time_p95_ns",
                     "within_coherence_fraction"};
    table.rows.push_back({mode, static_cast<double>(stats.trials),
                          stats.success_fraction, stats.attempts_mean,
                          stats.time_mean_ns, stats.time_median_ns, stats.time_p95_ns,
                          stats.within_coherence_fraction});
    return table;
}

/// Design solve rendered as a JSON report. kappa_ratio is null for a
/// lossless cavity; the strong-coupling comparison is included whenever the
/// threshold exists (g > gamma).
inline nlohmann::ordered_json design_report_json(const RunConfig& cfg) {
    const DesignSpec spec = detail::design_spec_from_config(cfg);
    const DesignReport report = solve_resonance_scattering(spec);

    nlohmann::ordered_json doc;
    if (cfg.has("preset")) doc["preset"] = cfg.require_string("preset");
    auto num = [](double v) { return round_to_output_precision(v); };
    doc["g_uev"] = num(report.g);
    doc["gamma_uev"] = num(report.gamma);
    doc["kappa_s_uev"] = num(report.kappa_s);
    doc["omega_photon_ev"] = num(spec.omega_photon_ev);
    doc["kappa_T_uev"] = num(report.kappa_T);
    doc["kappa_uev"] = num(report.kappa);
    doc["q_factor"] = num(report.q_factor);
    if (std::isfinite(report.kappa_ratio)) {
        doc["kappa_ratio"] = num(report.kappa_ratio);
    } else {
        doc["kappa_ratio"] = nullptr;
    }
    doc["r_c"] = num(report.r_c);
    doc["r_d"] = num(report.r_d);
    doc["fidelity_psi_plus"] = num(report.fidelity_psi_plus);
    doc["eta_psi_plus"] = num(report.eta_psi_plus);
    doc["eta_psi_minus"] = num(report.eta_psi_minus);
    if (report.g > report.gamma) {
        const double sc_kappa_T = strong_coupling_kappa_T(report.g, report.gamma);
        doc["strong_coupling_kappa_T_uev"] = num(sc_kappa_T);
        doc["strong_coupling_q_factor"] =
            num(q_factor(ev_to_uev(spec.omega_photon_ev), sc_kappa_T));
    } else {
        doc["strong_coupling_kappa_T_uev"] = nullptr;
        doc["strong_coupling_q_factor"] = nullptr;
    }
    return doc;
}

struct CliResult {
    int exit_code = 0;
    std::string output;  ///< rendered document (empty when written to --output)
    std::string error;
};

/// Full CLI: `rscat <command> [--config PATH] [--set key=value]...
/// [--output PATH] [--format csv|json] [--seed N]`.
/// Exit codes: 0 success, 2 configuration error, 3 infeasible design.
inline CliResult run_cli(const std::vector<std::string>& args) {
    CLI::App app{"Dipole-microcavity resonance scattering: reflectivity, heralded "
                 "entanglement protocols, cavity design and timing simulation"};
    app.name("rscat");
    app.require_subcommand(1);

    std::string config_path;
    std::string output_path;
    std::string format = "csv";
    std::string seed_text;
    std::vector<std::string> sets;

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"reflectivity-sweep", "Reflectivity spectrum vs probe detuning"},
        {"loss-sweep", "Contrast and Bell figures vs kappa/kappa_s at fixed kappa_T"},
        {"protocol", "Fidelity/efficiency of one entangling protocol"},
        {"design", "Solve cavity parameters for resonance scattering (JSON)"},
        {"herald", "Monte Carlo timing of heralded entanglement"},
        {"presets", "List built-in parameter presets"},
    };
    for (const auto& [name, description] : commands) {
        CLI::App* sub = app.add_subcommand(name, description);
        sub->add_option("--config", config_path, "Flat key=value config file");
        sub->add_option("--set", sets, "Override one key=value (repeatable)");
        sub->add_option("--output", output_path, "Write the result to a file");
        sub->add_option("--format", format, "Output format")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--seed", seed_text, "Random seed (herald command)");
    }

    CliResult result;
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);

        const std::string command = app.get_subcommands().front()->get_name();

        RunConfig cfg;
        if (!config_path.empty()) cfg.load_file(config_path);
        for (const auto& pair : sets) cfg.set_pair(pair);
        if (!seed_text.empty()) cfg.set("seed", seed_text);

        std::string rendered;
        if (command == "presets") {
            if (format == "json") {
                rendered = nlohmann::ordered_json(preset_names()).dump(2) + "\n";
            } else {
                for (const auto& name : preset_names()) rendered += name + "\n";
            }
        } else if (command == "design") {
            rendered = design_report_json(cfg).dump(2) + "\n";
        } else {
            Table table;
            if (command == "reflectivity-sweep") {
                table = reflectivity_sweep_table(cfg);
            } else if (command == "loss-sweep") {
                table = loss_sweep_table(cfg);
            } else if (command == "protocol") {
                table = protocol_table(cfg);
            } else if (command == "herald") {
                table = herald_table(cfg);
            }
            rendered = (format == "json") ? to_json(table).dump(2) + "\n" : to_csv(table);
        }

        if (!output_path.empty()) {
            std::ofstream out(output_path, std::ios::binary);
            if (!out) throw ConfigError("cannot write output file '" + output_path + "'");
            out << rendered;
        } else {
            result.output = rendered;
        }
        return result;
    } catch (const CLI::CallForHelp&) {
        result.output = app.help();
        return result;
    } catch (const CLI::ParseError& e) {
        result.exit_code = 2;
        result.error = std::string("error: ") + e.what();
        return result;
    } catch (const InfeasibleLoss& e) {
        result.exit_code = 3;
        result.error = std::string("error: ") + e.what();
        return result;
    } catch (const std::exception& e) {
        result.exit_code = 2;
        result.error = std::string("error: ") + e.what();
        return result;
    }
}

}  // namespace rscat
