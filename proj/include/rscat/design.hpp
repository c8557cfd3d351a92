#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rscat/cavity.hpp"
#include "rscat/errors.hpp"
#include "rscat/protocols.hpp"
#include "rscat/units.hpp"

namespace rscat {

/// Inputs to the cavity design solver. Energies in ueV except the photon
/// energy, which is quoted in eV for Q-factor conversions. g may be omitted
/// when it can be estimated from oscillator strength and mode volume.
struct DesignSpec {
    double gamma = 0.0;            // dipole linewidth, ueV
    double kappa_s = 0.0;          // loss rate, ueV
    double omega_photon_ev = 0.0;  // transition energy, eV
    std::optional<double> g;       // coupling rate, ueV
    std::optional<double> oscillator_strength;
    std::optional<double> mode_volume_um3;
    std::optional<double> relative_permittivity;
};

/// Solved operating point plus the entanglement figures it predicts.
struct DesignReport {
    double g = 0.0;        // ueV
    double gamma = 0.0;    // ueV
    double kappa_s = 0.0;  // ueV
    double kappa_T = 0.0;  // ueV
    double kappa = 0.0;    // ueV
    double q_factor = 0.0;
    double kappa_ratio = 0.0;  // kappa / kappa_s; +inf for a lossless cavity
    double r_c = 0.0;          // on-resonance, signed
    double r_d = 0.0;
    double fidelity_psi_plus = 0.0;
    double eta_psi_plus = 0.0;
    double eta_psi_minus = 0.0;
};

/// Q = omega / kappa_T, both in the same units (ueV here).
inline double q_factor(double omega_photon_uev, double kappa_T_uev) {
    if (!(omega_photon_uev > 0.0) || !(kappa_T_uev > 0.0)) {
        throw InvalidParameter("q_factor: inputs must be positive");
    }
    return omega_photon_uev / kappa_T_uev;
}

inline double kappa_T_from_q(double omega_photon_uev, double q) {
    if (!(omega_photon_uev > 0.0) || !(q > 0.0)) {
        throw InvalidParameter("kappa_T_from_q: inputs must be positive");
    }
    return omega_photon_uev / q;
}

/// Largest total linewidth that still satisfies the strong-coupling
/// criterion g > kappa_T + gamma, i.e. the threshold kappa_T = g - gamma.
inline double strong_coupling_kappa_T(double g, double gamma) {
    if (!(g > 0.0) || !(gamma > 0.0)) {
        throw InvalidParameter("strong_coupling_kappa_T: inputs must be positive");
    }
    if (g <= gamma) {
        throw NoStrongCoupling("strong_coupling_kappa_T: requires g > gamma");
    }
    return g - gamma;
}

/// Dipole-cavity coupling estimate from oscillator strength f and mode
/// volume V:  hbar g = sqrt(e^2 hbar^2 f / (4 eps0 eps_r m_e V)), returned in
/// ueV. A rough planning number, not a substitute for a measured g.
inline double g_from_mode_volume(double f, double mode_volume_um3, double epsilon_r) {
    if (!(f > 0.0) || !(mode_volume_um3 > 0.0) || !(epsilon_r > 0.0)) {
        throw InvalidParameter("g_from_mode_volume: inputs must be positive");
    }
    const double volume_m3 = mode_volume_um3 * 1e-18;
    const double e2 = elementary_charge_coulomb * elementary_charge_coulomb;
    const double hbar2 = hbar_joule_second * hbar_joule_second;
    const double energy_joule =
        std::sqrt(e2 * hbar2 * f /
                  (4.0 * vacuum_permittivity_farad_per_m * epsilon_r *
                   electron_mass_kg * volume_m3));
    return energy_joule / elementary_charge_coulomb * 1e6;  // J -> eV -> ueV
}

/// Solve for the cavity that puts the system on the resonance-scattering
/// point: kappa_T = 4 g^2 / gamma, kappa = kappa_T - kappa_s. Fails with
/// InfeasibleLoss when the loss rate alone uses up the whole linewidth.
inline DesignReport solve_resonance_scattering(const DesignSpec& spec) {
    if (!(spec.gamma > 0.0)) {
        throw InvalidParameter("solve_resonance_scattering: gamma must be positive");
    }
    if (spec.kappa_s < 0.0) {
        throw InvalidParameter("solve_resonance_scattering: kappa_s must be >= 0");
    }
    if (!(spec.omega_photon_ev > 0.0)) {
        throw InvalidParameter("solve_resonance_scattering: omega_photon must be positive");
    }
    double g = 0.0;
    if (spec.g) {
        g = *spec.g;
    } else if (spec.oscillator_strength && spec.mode_volume_um3 &&
               spec.relative_permittivity) {
        g = g_from_mode_volume(*spec.oscillator_strength, *spec.mode_volume_um3,
                               *spec.relative_permittivity);
    } else {
        throw InvalidParameter(
            "solve_resonance_scattering: need g, or oscillator_strength + "
            "mode_volume + relative_permittivity to estimate it");
    }

    DesignReport report;
    report.g = g;
    report.gamma = spec.gamma;
    report.kappa_s = spec.kappa_s;
    report.kappa_T = required_kappa_T(g, spec.gamma);
    if (spec.kappa_s >= report.kappa_T) {
        throw InfeasibleLoss("solve_resonance_scattering: kappa_s = " +
                             std::to_string(spec.kappa_s) +
                             " ueV consumes the required kappa_T = " +
                             std::to_string(report.kappa_T) + " ueV");
    }
    report.kappa = report.kappa_T - spec.kappa_s;
    const double omega_uev = ev_to_uev(spec.omega_photon_ev);
    report.q_factor = q_factor(omega_uev, report.kappa_T);
    report.kappa_ratio = spec.kappa_s > 0.0
                             ? report.kappa / spec.kappa_s
                             : std::numeric_limits<double>::infinity();

    const CavitySystem sys(report.kappa, spec.kappa_s, g, spec.gamma,
                           omega_uev, omega_uev);
    const ResonantContrast contrast = resonant_contrast(sys);
    // On resonance the amplitudes are real; keep the sign.
    report.r_c = contrast.r_c.re();
    report.r_d = contrast.r_d.re();

    const ContrastPair pair{contrast.r_c.value, contrast.r_d.value};
    report.fidelity_psi_plus = fidelity_psi_plus(pair);
    report.eta_psi_plus = efficiency_psi_plus(pair);
    report.eta_psi_minus = efficiency_psi_minus(pair);
    return report;
}

enum class Preset { pillar_reithmaier, nv_photonic_crystal };

/// Frozen case-study parameter sets.
///  - pillar_reithmaier: charged quantum dot in a GaAs pillar microcavity,
///    g = 80 ueV, gamma = 10 ueV, kappa_s = 180 ueV, transition at 1.323 eV.
///  - nv_photonic_crystal: NV- centre in a diamond photonic crystal cavity,
///    g = 13.5 ueV, gamma = 0.1 ueV, lossless, zero-phonon line at 1.946 eV
///    (637 nm); oscillator strength 0.12 and mode volume 0.13 um^3 recorded
///    for the coupling estimator.
inline DesignSpec preset(Preset which) {
    switch (which) {
        case Preset::pillar_reithmaier: {
            DesignSpec spec;
            spec.g = 80.0;
            spec.gamma = 10.0;
            spec.kappa_s = 180.0;
            spec.omega_photon_ev = 1.323;
            return spec;
        }
        case Preset::nv_photonic_crystal: {
            DesignSpec spec;
            spec.g = 13.5;
            spec.gamma = 0.1;
            spec.kappa_s = 0.0;
            spec.omega_photon_ev = 1.946;
            spec.oscillator_strength = 0.12;
            spec.mode_volume_um3 = 0.13;
            return spec;
        }
    }
    throw InvalidParameter("preset: unknown preset");
}

inline std::vector<std::string> preset_names() {
    return {"pillar_reithmaier", "nv_photonic_crystal"};
}

inline DesignSpec preset_by_name(std::string_view name) {
    if (name == "pillar_reithmaier") return preset(Preset::pillar_reithmaier);
    if (name == "nv_photonic_crystal") return preset(Preset::nv_photonic_crystal);
    throw InvalidParameter("preset: unknown preset '" + std::string(name) +
                           "' (known: pillar_reithmaier, nv_photonic_crystal)");
}

}  // namespace rscat
