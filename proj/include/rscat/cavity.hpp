#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "rscat/errors.hpp"

namespace rscat {

/// Reflection amplitude r = |r| e^{i phi} of the dipole-cavity system.
struct ComplexAmplitude {
    std::complex<double> value{};

    ComplexAmplitude() = default;
    ComplexAmplitude(std::complex<double> v) : value(v) {}

    double re() const { return value.real(); }
    double im() const { return value.imag(); }
    double magnitude() const { return std::abs(value); }
    double phase() const { return std::arg(value); }

    operator std::complex<double>() const { return value; }
};

/// A single-sided cavity coupled to one dipole transition.
///
/// Rates (all ueV): kappa is the decay through the input/output mirror,
/// kappa_s collects every other photon loss channel (side leakage, back-mirror
/// transmission, absorption), g is the dipole-cavity coupling and gamma the
/// dipole linewidth in bulk dielectric. omega_c / omega_d are the cavity and
/// dipole resonance energies.
class CavitySystem {
  public:
    CavitySystem(double kappa, double kappa_s, double g, double gamma,
                 double omega_c, double omega_d)
        : kappa_(kappa), kappa_s_(kappa_s), g_(g), gamma_(gamma),
          omega_c_(omega_c), omega_d_(omega_d) {
        auto finite = [](double v) { return std::isfinite(v); };
        if (!finite(kappa) || !finite(kappa_s) || !finite(g) || !finite(gamma) ||
            !finite(omega_c) || !finite(omega_d)) {
            throw InvalidParameter("CavitySystem: all parameters must be finite");
        }
        if (kappa <= 0.0) throw InvalidParameter("CavitySystem: kappa must be > 0");
        if (kappa_s < 0.0) throw InvalidParameter("CavitySystem: kappa_s must be >= 0");
        if (gamma <= 0.0) throw InvalidParameter("CavitySystem: gamma must be > 0");
        if (g < 0.0) throw InvalidParameter("CavitySystem: g must be >= 0");
    }

    double kappa() const { return kappa_; }
    double kappa_s() const { return kappa_s_; }
    double g() const { return g_; }
    double gamma() const { return gamma_; }
    double omega_c() const { return omega_c_; }
    double omega_d() const { return omega_d_; }

    /// Total cavity linewidth kappa + kappa_s.
    double kappa_total() const { return kappa_ + kappa_s_; }

  private:
    double kappa_;
    double kappa_s_;
    double g_;
    double gamma_;
    double omega_c_;
    double omega_d_;
};

/// Reflectivity of the coupled dipole-cavity system for a probe at omega:
///
///   r(w) = 1 - kappa (i Dd + gamma/2)
///              / [ (i Dd + gamma/2)(i Dc + kappa_T/2) + g^2 ]
///
/// with Dd = omega_d - omega and Dc = omega_c - omega. Passive for any valid
/// system: |r| <= 1.
inline ComplexAmplitude reflectivity(const CavitySystem& sys, double omega) {
    if (!std::isfinite(omega)) {
        throw InvalidParameter("reflectivity: omega must be finite");
    }
    const std::complex<double> i(0.0, 1.0);
    const std::complex<double> dipole = i * (sys.omega_d() - omega) + sys.gamma() / 2.0;
    const std::complex<double> cavity = i * (sys.omega_c() - omega) + sys.kappa_total() / 2.0;
    return {1.0 - sys.kappa() * dipole / (dipole * cavity + sys.g() * sys.g())};
}

/// Reflectivity of the bare cavity (dipole decoupled): r_c(w) = 1 - kappa/(i Dc + kappa_T/2).
/// Ignores g, gamma and omega_d of the system.
inline ComplexAmplitude empty_cavity_reflectivity(const CavitySystem& sys, double omega) {
    if (!std::isfinite(omega)) {
        throw InvalidParameter("empty_cavity_reflectivity: omega must be finite");
    }
    const std::complex<double> i(0.0, 1.0);
    const std::complex<double> cavity = i * (sys.omega_c() - omega) + sys.kappa_total() / 2.0;
    return {1.0 - sys.kappa() / cavity};
}

struct ResonantContrast {
    ComplexAmplitude r_c;  ///< empty-cavity reflectivity on resonance
    ComplexAmplitude r_d;  ///< dipole-coupled reflectivity on resonance
};

/// Both on-resonance reflectivities at omega = omega_c = omega_d. This is the
/// spin-readout signal: the empty-cavity value against the coupled value.
inline ResonantContrast resonant_contrast(const CavitySystem& sys) {
    if (sys.omega_c() != sys.omega_d()) {
        throw DipoleCavityDetuned(
            "resonant_contrast: requires omega_c == omega_d (got " +
            std::to_string(sys.omega_c()) + " vs " + std::to_string(sys.omega_d()) + ")");
    }
    return {empty_cavity_reflectivity(sys, sys.omega_c()),
            reflectivity(sys, sys.omega_c())};
}

/// Coupling rate that places a system with total linewidth kappa_T on the
/// resonance-scattering point: g = sqrt(kappa_T * gamma) / 2, i.e. g^2 = kappa_T gamma / 4.
inline double resonance_scattering_g(double kappa_T, double gamma) {
    if (!(kappa_T > 0.0) || !(gamma > 0.0) || !std::isfinite(kappa_T) || !std::isfinite(gamma)) {
        throw InvalidParameter("resonance_scattering_g: kappa_T and gamma must be positive");
    }
    return std::sqrt(kappa_T * gamma) / 2.0;
}

/// Total cavity linewidth required for resonance scattering at a given
/// coupling rate: kappa_T = 4 g^2 / gamma.
inline double required_kappa_T(double g, double gamma) {
    if (!(g > 0.0) || !(gamma > 0.0) || !std::isfinite(g) || !std::isfinite(gamma)) {
        throw InvalidParameter("required_kappa_T: g and gamma must be positive");
    }
    return 4.0 * g * g / gamma;
}

/// True when |4 g^2 - kappa_T gamma| <= rel_tol * kappa_T gamma.
inline bool is_resonance_scattering(const CavitySystem& sys, double rel_tol = 1e-6) {
    if (!(rel_tol > 0.0) || !(rel_tol < 1.0)) {
        throw InvalidParameter("is_resonance_scattering: rel_tol must be in (0, 1)");
    }
    const double target = sys.kappa_total() * sys.gamma();
    return std::abs(4.0 * sys.g() * sys.g() - target) <= rel_tol * target;
}

}  // namespace rscat
