#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "rscat/errors.hpp"

namespace rscat {

// Minimal state-vector engine for joint spin (x) photon registers.
//
// Basis conventions, fixed and relied on throughout:
//   * qubit 0 is the least significant bit of the basis index;
//   * spins come first, photons after them;
//   * bit value 0 means |up> for spins and |R> (or |A>) for photons,
//     bit value 1 means |down> / |L> (or |B>).
//
// States are unnormalized: the squared norm is the survival probability of
// the register, and any deficit from 1 is probability lost to scattering.

using Complex = std::complex<double>;

enum class QubitKind { spin, photon };

/// Photons can carry the qubit in polarization (R/L) or in frequency (A/B).
/// The two encodings are the same map under the relabeling A<->R, B<->L;
/// the choice only affects outcome labels.
enum class PhotonEncoding { polarization, frequency };

struct QubitLabel {
    QubitKind kind;
    PhotonEncoding encoding;  // meaningful for photons only
    int index;                // ordinal within its kind
};

/// Addresses one qubit by kind and per-kind ordinal.
struct QubitId {
    QubitKind kind;
    int index;
};

inline QubitId spin_qubit(int index) { return {QubitKind::spin, index}; }
inline QubitId photon_qubit(int index) { return {QubitKind::photon, index}; }

class JointState {
  public:
    static constexpr int max_qubits = 24;  // dense vector; 2^24 amplitudes

    JointState(int n_spins, int n_photons, std::vector<Complex> amplitudes,
               PhotonEncoding encoding = PhotonEncoding::polarization)
        : n_spins_(n_spins), n_photons_(n_photons), encoding_(encoding),
          amps_(std::move(amplitudes)) {
        if (n_spins < 0 || n_photons < 0 || n_spins + n_photons < 1) {
            throw InvalidParameter("JointState: need at least one qubit");
        }
        if (n_spins + n_photons > max_qubits) {
            throw InvalidParameter("JointState: register exceeds " +
                                   std::to_string(max_qubits) + " qubits");
        }
        if (amps_.size() != dimension()) {
            throw InvalidParameter("JointState: amplitude vector has wrong length");
        }
    }

    int n_spins() const { return n_spins_; }
    int n_photons() const { return n_photons_; }
    int n_qubits() const { return n_spins_ + n_photons_; }
    std::size_t dimension() const { return std::size_t{1} << n_qubits(); }
    PhotonEncoding photon_encoding() const { return encoding_; }

    const std::vector<Complex>& amplitudes() const { return amps_; }
    Complex amplitude(std::size_t basis_index) const { return amps_.at(basis_index); }

    std::vector<QubitLabel> register_labels() const {
        std::vector<QubitLabel> labels;
        labels.reserve(static_cast<std::size_t>(n_qubits()));
        for (int i = 0; i < n_spins_; ++i) labels.push_back({QubitKind::spin, encoding_, i});
        for (int i = 0; i < n_photons_; ++i) labels.push_back({QubitKind::photon, encoding_, i});
        return labels;
    }

    /// Global bit position of a qubit; throws on a bad index.
    int global_index(QubitId q) const {
        if (q.kind == QubitKind::spin) {
            if (q.index < 0 || q.index >= n_spins_) {
                throw std::out_of_range("JointState: spin index " +
                                        std::to_string(q.index) + " out of range");
            }
            return q.index;
        }
        if (q.index < 0 || q.index >= n_photons_) {
            throw std::out_of_range("JointState: photon index " +
                                    std::to_string(q.index) + " out of range");
        }
        return n_spins_ + q.index;
    }

    /// Human-readable label of one basis value of a qubit ("up", "R", ...).
    std::string basis_label(QubitId q, int bit) const {
        global_index(q);  // validate
        if (q.kind == QubitKind::spin) return bit == 0 ? "up" : "down";
        if (encoding_ == PhotonEncoding::polarization) return bit == 0 ? "R" : "L";
        return bit == 0 ? "A" : "B";
    }

    double squared_norm() const {
        double s = 0.0;
        for (const auto& a : amps_) s += std::norm(a);
        return s;
    }

    /// Unit-norm copy; the zero state stays zero.
    JointState normalized() const {
        const double n2 = squared_norm();
        JointState out = *this;
        if (n2 > 0.0) {
            const double inv = 1.0 / std::sqrt(n2);
            for (auto& a : out.amps_) a *= inv;
        }
        return out;
    }

    bool same_shape(const JointState& other) const {
        return n_spins_ == other.n_spins_ && n_photons_ == other.n_photons_;
    }

  private:
    int n_spins_;
    int n_photons_;
    PhotonEncoding encoding_;
    std::vector<Complex> amps_;
};

/// Every qubit prepared in (|0> + |1>)/sqrt(2); total norm 1.
inline JointState make_superposition_state(int n_spins, int n_photons,
                                           PhotonEncoding encoding = PhotonEncoding::polarization) {
    if (n_spins < 0 || n_photons < 0 || n_spins + n_photons < 1) {
        throw InvalidParameter("make_superposition_state: need at least one qubit");
    }
    if (n_spins + n_photons > JointState::max_qubits) {
        throw InvalidParameter("make_superposition_state: register exceeds " +
                               std::to_string(JointState::max_qubits) + " qubits");
    }
    const std::size_t dim = std::size_t{1} << (n_spins + n_photons);
    const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
    return {n_spins, n_photons, std::vector<Complex>(dim, Complex(amp, 0.0)), encoding};
}

/// Spin-conditioned reflection of one photon qubit, the non-unitary map
///
///   |R>|up>   -> r_d |R>|up>      |R>|down> -> r_c |R>|down>
///   |L>|up>   -> r_c |L>|up>      |L>|down> -> r_d |L>|down>
///
/// i.e. amplitudes where the photon bit equals the spin bit pick up r_d
/// (photon sees the coupled transition), the others pick up r_c (photon sees
/// the bare cavity). All other qubits untouched. Never increases the norm for
/// passive |r_c|, |r_d| <= 1. Frequency-encoded photons use the same map with
/// A in place of R and B in place of L.
inline JointState reflect(const JointState& state, int photon, int spin,
                          Complex r_c, Complex r_d) {
    const int pbit = state.global_index(photon_qubit(photon));
    const int sbit = state.global_index(spin_qubit(spin));
    std::vector<Complex> amps = state.amplitudes();
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        const int p = static_cast<int>((idx >> pbit) & 1u);
        const int s = static_cast<int>((idx >> sbit) & 1u);
        amps[idx] *= (p == s) ? r_d : r_c;
    }
    return {state.n_spins(), state.n_photons(), std::move(amps), state.photon_encoding()};
}

/// Standard Hadamard on one qubit; norm-preserving and self-inverse.
/// On a spin this is the pi/2 rotation pulse, on a photon the basis change a
/// polarising beam splitter performs.
inline JointState hadamard(const JointState& state, QubitId qubit) {
    const int bit = state.global_index(qubit);
    const std::size_t stride = std::size_t{1} << bit;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::vector<Complex> amps = state.amplitudes();
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        if (idx & stride) continue;
        const Complex a0 = amps[idx];
        const Complex a1 = amps[idx | stride];
        amps[idx] = (a0 + a1) * inv_sqrt2;
        amps[idx | stride] = (a0 - a1) * inv_sqrt2;
    }
    return {state.n_spins(), state.n_photons(), std::move(amps), state.photon_encoding()};
}

struct MeasurementRecord {
    int outcome;                ///< 0 or 1
    std::string outcome_label;  ///< "up"/"down", "R"/"L" or "A"/"B"
    double probability;         ///< squared norm of the projected branch
    JointState collapsed;       ///< renormalized branch (zero state if probability 0)
};

/// Projective measurement of one qubit. Both branch records are returned;
/// sampling an outcome is the caller's concern. Probabilities are quoted
/// against the original unit-norm input, so for a state that has already
/// suffered loss the two probabilities sum to its current squared norm, and
/// branch probabilities plus accumulated loss sum to 1.
inline std::array<MeasurementRecord, 2> measure(const JointState& state, QubitId qubit) {
    const int bit = state.global_index(qubit);
    const std::size_t mask = std::size_t{1} << bit;
    std::array<MeasurementRecord, 2> records{
        MeasurementRecord{0, state.basis_label(qubit, 0), 0.0, state},
        MeasurementRecord{1, state.basis_label(qubit, 1), 0.0, state}};
    for (int outcome = 0; outcome < 2; ++outcome) {
        std::vector<Complex> amps = state.amplitudes();
        double prob = 0.0;
        for (std::size_t idx = 0; idx < amps.size(); ++idx) {
            const bool hit = ((idx & mask) != 0) == (outcome == 1);
            if (hit) {
                prob += std::norm(amps[idx]);
            } else {
                amps[idx] = Complex(0.0, 0.0);
            }
        }
        JointState branch(state.n_spins(), state.n_photons(), std::move(amps),
                          state.photon_encoding());
        records[static_cast<std::size_t>(outcome)].probability = prob;
        records[static_cast<std::size_t>(outcome)].collapsed = branch.normalized();
    }
    return records;
}

/// Amplitude overlap |<target|state>| / ||state||; 0 for the zero state.
/// The target must be normalized.
inline double overlap_fidelity(const JointState& state, const JointState& target) {
    if (!state.same_shape(target)) {
        throw InvalidParameter("overlap_fidelity: register shapes differ");
    }
    if (std::abs(target.squared_norm() - 1.0) > 1e-6) {
        throw InvalidParameter("overlap_fidelity: target must be normalized");
    }
    const double norm2 = state.squared_norm();
    if (norm2 == 0.0) return 0.0;
    Complex overlap(0.0, 0.0);
    const auto& s = state.amplitudes();
    const auto& t = target.amplitudes();
    for (std::size_t idx = 0; idx < s.size(); ++idx) {
        overlap += std::conj(t[idx]) * s[idx];
    }
    return std::abs(overlap) / std::sqrt(norm2);
}

}  // namespace rscat
