#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "rscat/errors.hpp"
#include "rscat/qstate.hpp"

namespace rscat {

/// The on-resonance reflectivities a photon can see: r_c off the bare cavity,
/// r_d off the dipole-coupled cavity. Complex in general; the zero-detuning
/// values are real (and r_c is negative whenever kappa > kappa_s).
struct ContrastPair {
    Complex r_c{};
    Complex r_d{};
};

inline void validate_contrast(const ContrastPair& c, const char* where) {
    auto ok = [](Complex v) {
        return std::isfinite(v.real()) && std::isfinite(v.imag()) &&
               std::abs(v) <= 1.0 + 1e-9;
    };
    if (!ok(c.r_c) || !ok(c.r_d)) {
        throw InvalidParameter(std::string(where) +
                               ": contrast values must be finite with magnitude <= 1");
    }
}

/// One herald outcome of an entangling protocol.
///
/// Conventions:
///   * fidelity is the amplitude overlap of the heralded branch with its
///     target Bell state, F = |<target|branch>| / ||branch||;
///   * efficiency = branch_probability * fidelity^2, the rate at which the
///     exact target state is produced;
///   * for the reflection protocols branch_probability is the per-herald
///     weight: twice the raw projection probability of the branch. Both
///     outcomes of the final basis-rotated measurement yield usable Bell
///     states, and each is scored against the half of the attempts nominally
///     assigned to it, so an ideal system scores 1/4 per Bell state after two
///     reflections. The closed-form efficiencies below use the same
///     convention. Efficiency stays in [0, 1]; the weight itself can reach 2
///     in the mirror limit r_c = r_d = 1 where a single herald soaks up all
///     of the survival probability. interference_herald reports raw click
///     probabilities instead, since its outcomes are physical detector
///     patterns.
struct ProtocolResult {
    std::string outcome_label;
    double fidelity = 0.0;
    double efficiency = 0.0;
    double branch_probability = 0.0;
    JointState collapsed_state;
};

// ---------------------------------------------------------------------------
// Closed forms. Written for the real on-resonance contrast; complex inputs
// enter through the squared magnitudes of the combined products, which is
// what the state-vector pipeline reproduces.
// ---------------------------------------------------------------------------

/// F for heralding (|RR> + |LL>)/sqrt(2) from two reflections off one spin:
/// F = 1 / sqrt(1 + 4 (r_c r_d)^2 / (r_c^2 + r_d^2)^2).
inline double fidelity_psi_plus(const ContrastPair& c) {
    validate_contrast(c, "fidelity_psi_plus");
    if (std::abs(c.r_c) == 0.0 && std::abs(c.r_d) == 0.0) {
        throw InvalidParameter("fidelity_psi_plus: degenerate contrast (0, 0)");
    }
    const double a = std::abs(c.r_d * c.r_d + c.r_c * c.r_c);
    const double b = std::abs(2.0 * c.r_c * c.r_d);
    return a / std::hypot(a, b);
}

/// eta for the same herald: (r_d^2 + r_c^2)^2 / 4.
inline double efficiency_psi_plus(const ContrastPair& c) {
    validate_contrast(c, "efficiency_psi_plus");
    const double a = std::abs(c.r_d * c.r_d + c.r_c * c.r_c);
    return a * a / 4.0;
}

/// eta for the (|RR> - |LL>)/sqrt(2) herald: (r_d^2 - r_c^2)^2 / 4.
/// Its fidelity is 1 whenever the branch survives at all.
inline double efficiency_psi_minus(const ContrastPair& c) {
    validate_contrast(c, "efficiency_psi_minus");
    const double d = std::abs(c.r_d * c.r_d - c.r_c * c.r_c);
    return d * d / 4.0;
}

/// F for heralding two remote spins with one photon reflected off both
/// cavities:
/// F = 1 / sqrt(1 + (2 (r_d1 r_c2)^2 + 2 (r_c1 r_d2)^2) / (r_d1 r_d2 + r_c1 r_c2)^2).
///
/// This combines the two cross terms incoherently, so it coincides with the
/// state-vector pipeline exactly when the two contrast ratios match
/// (r_d1 r_c2 == r_c1 r_d2, in particular for identical cavities) and is a
/// lower bound otherwise.
inline double fidelity_psi_plus_two_spin(const ContrastPair& c1, const ContrastPair& c2) {
    validate_contrast(c1, "fidelity_psi_plus_two_spin");
    validate_contrast(c2, "fidelity_psi_plus_two_spin");
    const double m = std::abs(c1.r_d * c2.r_d + c1.r_c * c2.r_c);
    const double x = std::abs(c1.r_d * c2.r_c);
    const double y = std::abs(c1.r_c * c2.r_d);
    const double denom = std::sqrt(m * m + 2.0 * x * x + 2.0 * y * y);
    if (denom == 0.0) {
        throw InvalidParameter("fidelity_psi_plus_two_spin: degenerate contrast");
    }
    return m / denom;
}

/// eta for the two-spin herald: (r_d1 r_d2 + r_c1 r_c2)^2 / 4. Exact for
/// arbitrary pairs (matches the state-vector pipeline identically).
inline double efficiency_psi_plus_two_spin(const ContrastPair& c1, const ContrastPair& c2) {
    validate_contrast(c1, "efficiency_psi_plus_two_spin");
    validate_contrast(c2, "efficiency_psi_plus_two_spin");
    const double m = std::abs(c1.r_d * c2.r_d + c1.r_c * c2.r_c);
    return m * m / 4.0;
}

/// Ideal-contrast efficiency of an n-photon GHZ chain off one spin: 2^-n.
inline double ghz_efficiency(int n) {
    if (n < 2) throw InvalidParameter("ghz_efficiency: n must be >= 2");
    return std::ldexp(1.0, -n);
}

// ---------------------------------------------------------------------------
// State-vector pipelines.
// ---------------------------------------------------------------------------

namespace detail {

/// |outcome> on the measured qubit tensored with (|0...0> +- |1...1>)/sqrt(2)
/// on the remaining qubits, expressed in the full register.
inline JointState ghz_target(int n_spins, int n_photons, QubitId measured,
                             int outcome, double sign, PhotonEncoding enc) {
    const int n = n_spins + n_photons;
    const std::size_t dim = std::size_t{1} << n;
    JointState probe(n_spins, n_photons, std::vector<Complex>(dim, Complex{}), enc);
    const int mbit = probe.global_index(measured);
    const std::size_t mmask = std::size_t{1} << mbit;
    const std::size_t rest = (dim - 1) & ~mmask;

    std::vector<Complex> amps(dim, Complex{});
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const std::size_t base = (outcome == 1) ? mmask : 0;
    amps[base] = Complex(inv_sqrt2, 0.0);          // all remaining qubits at 0
    amps[base | rest] = Complex(sign * inv_sqrt2, 0.0);  // all remaining at 1
    return {n_spins, n_photons, std::move(amps), enc};
}

inline ProtocolResult herald_result(const MeasurementRecord& record,
                                    const JointState& target,
                                    std::string label,
                                    double probability_weight) {
    ProtocolResult res{std::move(label), 0.0, 0.0, 0.0, record.collapsed};
    res.fidelity = overlap_fidelity(record.collapsed, target);
    res.branch_probability = probability_weight * record.probability;
    res.efficiency = res.branch_probability * res.fidelity * res.fidelity;
    return res;
}

}  // namespace detail

/// n linearly polarised photons reflected in sequence off one spin prepared
/// in (|up> + |down>)/sqrt(2), followed by a Hadamard pulse and projective
/// readout of the spin. The "up" record heralds the n-photon GHZ state
/// (|R...R> + |L...L>)/sqrt(2), the "down" record the minus combination.
inline std::vector<ProtocolResult> ghz_protocol(int n_photons, const ContrastPair& c) {
    if (n_photons < 2) throw InvalidParameter("ghz_protocol: need at least 2 photons");
    validate_contrast(c, "ghz_protocol");

    JointState state = make_superposition_state(1, n_photons);
    for (int j = 0; j < n_photons; ++j) {
        state = reflect(state, j, 0, c.r_c, c.r_d);
    }
    state = hadamard(state, spin_qubit(0));
    const auto records = measure(state, spin_qubit(0));

    std::vector<ProtocolResult> results;
    results.reserve(2);
    for (const auto& rec : records) {
        const double sign = (rec.outcome == 0) ? 1.0 : -1.0;
        const auto target = detail::ghz_target(1, n_photons, spin_qubit(0),
                                               rec.outcome, sign,
                                               state.photon_encoding());
        results.push_back(detail::herald_result(rec, target, rec.outcome_label, 2.0));
    }
    return results;
}

/// Two photons, one spin: the Bell-pair special case of ghz_protocol.
/// "up" heralds (|RR> + |LL>)/sqrt(2), "down" heralds (|RR> - |LL>)/sqrt(2).
inline std::vector<ProtocolResult> photon_photon_protocol(const ContrastPair& c) {
    return ghz_protocol(2, c);
}

/// One photon reflected off two remote spin-cavity systems in sequence, then
/// rotated by a polarising beam splitter and detected. "H" heralds
/// (|up,up> + |down,down>)/sqrt(2), "V" the minus combination.
inline std::vector<ProtocolResult> spin_spin_protocol(const ContrastPair& c1,
                                                      const ContrastPair& c2) {
    validate_contrast(c1, "spin_spin_protocol");
    validate_contrast(c2, "spin_spin_protocol");

    JointState state = make_superposition_state(2, 1);
    state = reflect(state, 0, 0, c1.r_c, c1.r_d);
    state = reflect(state, 0, 1, c2.r_c, c2.r_d);
    state = hadamard(state, photon_qubit(0));
    const auto records = measure(state, photon_qubit(0));

    std::vector<ProtocolResult> results;
    results.reserve(2);
    for (const auto& rec : records) {
        const double sign = (rec.outcome == 0) ? 1.0 : -1.0;
        const auto target = detail::ghz_target(2, 1, photon_qubit(0), rec.outcome,
                                               sign, state.photon_encoding());
        const std::string label = (rec.outcome == 0) ? "H" : "V";
        results.push_back(detail::herald_result(rec, target, label, 2.0));
    }
    return results;
}

/// Single-round interference herald: two spins, each in an equal
/// superposition of a coupled state (photon amplitude r_d of its own cavity)
/// and an uncoupled state (amplitude r_c); one photon per cavity, the two
/// reflected modes mixed on a 50:50 beam splitter and detected with
/// number-resolving detectors.
///
/// Model scope: one round only, and photon loss is treated as pure amplitude
/// attenuation with no which-path record, so single-survivor branches stay
/// coherent. Results are therefore model-dependent (optimistic in fidelity).
/// Outcomes "D1"/"D2" are the single-click patterns; "D1" is scored against
/// (|01> + |10>)/sqrt(2) on the spins, "D2" against (|01> - |10>)/sqrt(2).
/// branch_probability is the raw click-pattern probability.
inline std::vector<ProtocolResult> interference_herald(const ContrastPair& c1,
                                                       const ContrastPair& c2) {
    validate_contrast(c1, "interference_herald");
    validate_contrast(c2, "interference_herald");

    auto survive = [](const ContrastPair& c, int spin_bit) {
        return spin_bit == 0 ? c.r_d : c.r_c;
    };
    auto loss = [](Complex alpha) {
        return std::sqrt(std::max(0.0, 1.0 - std::norm(alpha)));
    };

    // Single-click amplitudes per spin basis state (s1, s2), spin amplitude
    // 1/2 each; the surviving photon reaches detector 1 with +1/sqrt(2) from
    // either input, detector 2 with +1/sqrt(2) from input a and -1/sqrt(2)
    // from input b.
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::vector<Complex> d1(4), d2(4);
    for (std::size_t idx = 0; idx < 4; ++idx) {
        const int s1 = static_cast<int>(idx & 1u);
        const int s2 = static_cast<int>((idx >> 1) & 1u);
        const Complex a1 = survive(c1, s1);
        const Complex a2 = survive(c2, s2);
        const Complex one_only = a1 * loss(a2);
        const Complex two_only = loss(a1) * a2;
        d1[idx] = 0.5 * inv_sqrt2 * (one_only + two_only);
        d2[idx] = 0.5 * inv_sqrt2 * (one_only - two_only);
    }

    auto spin_target = [](double sign) {
        std::vector<Complex> amps(4, Complex{});
        amps[2] = Complex(1.0 / std::sqrt(2.0), 0.0);         // |01>: s1=0, s2=1
        amps[1] = Complex(sign / std::sqrt(2.0), 0.0);        // |10>
        return JointState(2, 0, std::move(amps));
    };

    std::vector<ProtocolResult> results;
    results.reserve(2);
    const std::array<std::vector<Complex>*, 2> branches{&d1, &d2};
    for (int k = 0; k < 2; ++k) {
        JointState branch(2, 0, *branches[static_cast<std::size_t>(k)]);
        ProtocolResult res{k == 0 ? "D1" : "D2", 0.0, 0.0, 0.0, branch.normalized()};
        res.branch_probability = branch.squared_norm();
        res.fidelity = overlap_fidelity(branch, spin_target(k == 0 ? 1.0 : -1.0));
        res.efficiency = res.branch_probability * res.fidelity * res.fidelity;
        results.push_back(std::move(res));
    }
    return results;
}

}  // namespace rscat
