#pragma once

#include <cmath>
#include <stdexcept>

namespace rscat {

// All rates, linewidths and detunings in this library are energies in ueV
// (hbar = 1). Inputs quoted in other units are converted on entry.

/// Planck constant h in ueV/GHz (CODATA 2018).
inline constexpr double planck_h_uev_per_ghz = 4.135667696;

inline constexpr double uev_per_ev = 1.0e6;
inline constexpr double uev_per_mev = 1.0e3;

// SI constants used by the coupling-rate estimator (CODATA 2018).
inline constexpr double elementary_charge_coulomb = 1.602176634e-19;
inline constexpr double hbar_joule_second = 1.054571817e-34;
inline constexpr double vacuum_permittivity_farad_per_m = 8.8541878128e-12;
inline constexpr double electron_mass_kg = 9.1093837015e-31;

inline double ghz_to_uev(double frequency_ghz) {
    if (!std::isfinite(frequency_ghz)) {
        throw std::invalid_argument("ghz_to_uev: frequency must be finite");
    }
    return frequency_ghz * planck_h_uev_per_ghz;
}

inline double mhz_to_uev(double frequency_mhz) {
    return ghz_to_uev(frequency_mhz * 1.0e-3);
}

inline double ev_to_uev(double energy_ev) { return energy_ev * uev_per_ev; }
inline double mev_to_uev(double energy_mev) { return energy_mev * uev_per_mev; }

}  // namespace rscat
