#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "rscat/errors.hpp"

namespace rscat {

// Monte Carlo timing of heralded entanglement: every attempt fires one
// photon, succeeds with a fixed probability, and attempts repeat until the
// first success (repeat-until-success, geometrically distributed).

/// splitmix64: tiny counter-style generator with a documented algorithm, so
/// runs are reproducible bit-for-bit from (seed, trial index) alone.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in the open interval (0, 1).
    double next_unit_open() {
        std::uint64_t bits;
        do {
            bits = next_u64() >> 11;  // 53 random bits
        } while (bits == 0);
        return static_cast<double>(bits) * 0x1.0p-53;
    }

  private:
    std::uint64_t state_;
};

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace detail

/// Independent substream for one trial; trials may run in any order or in
/// parallel without changing the aggregate.
inline SplitMix64 trial_stream(std::uint64_t seed, std::uint64_t trial_index) {
    return SplitMix64(detail::mix64(seed) ^ detail::mix64(0x5851F42D4C957F2DULL + trial_index));
}

struct HeraldConfig {
    double attempt_period_ns = 1.0;    ///< spacing between photons
    double success_probability = 0.0;  ///< per-attempt herald probability (before detector)
    double detector_efficiency = 1.0;
    double coherence_time_us = 1.0;
    int n_spins = 2;                   ///< cluster size for simulate_cluster
    long long max_attempts = 10000;    ///< give up after this many photons
    std::uint64_t seed = 0;
};

inline void validate(const HeraldConfig& cfg) {
    if (!(cfg.attempt_period_ns > 0.0)) {
        throw InvalidParameter("HeraldConfig: attempt_period must be > 0");
    }
    if (!(cfg.success_probability >= 0.0) || cfg.success_probability > 1.0) {
        throw InvalidParameter("HeraldConfig: success_probability must be in [0, 1]");
    }
    if (!(cfg.detector_efficiency >= 0.0) || cfg.detector_efficiency > 1.0) {
        throw InvalidParameter("HeraldConfig: detector_efficiency must be in [0, 1]");
    }
    if (!(cfg.coherence_time_us > 0.0)) {
        throw InvalidParameter("HeraldConfig: coherence_time must be > 0");
    }
    if (cfg.max_attempts < 1) {
        throw InvalidParameter("HeraldConfig: max_attempts must be >= 1");
    }
}

/// One pairwise entangling run.
struct PairOutcome {
    long long attempts = 0;  ///< photons fired (max_attempts when it gave up)
    double time_ns = 0.0;    ///< attempts * attempt_period
    bool succeeded = false;
};

/// One cluster-assembly run.
struct HeraldOutcome {
    std::vector<double> pair_times_ns;  ///< per entangling operation, stage order
    double total_time_ns = 0.0;         ///< sum of the parallel stage maxima
    long long attempts_total = 0;
    bool completed = false;          ///< no entangling operation gave up
    bool within_coherence = false;   ///< completed and total_time <= coherence budget
};

/// 1/p, the mean of the geometric attempt count.
inline double expected_attempts(double p) {
    if (!(p > 0.0) || p > 1.0) {
        throw InvalidParameter("expected_attempts: p must be in (0, 1]");
    }
    return 1.0 / p;
}

namespace detail {

/// First-success attempt count, inverse-CDF sampled: k = ceil(ln u / ln(1-p)).
/// Returns max_attempts + 1 to signal failure (p = 0, or truncated tail).
inline long long sample_geometric(SplitMix64& rng, double p, long long max_attempts) {
    if (p <= 0.0) return max_attempts + 1;
    if (p >= 1.0) return 1;
    const double u = rng.next_unit_open();
    double k = std::ceil(std::log(u) / std::log1p(-p));
    if (!(k >= 1.0)) k = 1.0;
    if (k > static_cast<double>(max_attempts)) return max_attempts + 1;
    return static_cast<long long>(k);
}

inline PairOutcome draw_pair(SplitMix64& rng, const HeraldConfig& cfg) {
    const double p = cfg.success_probability * cfg.detector_efficiency;
    const long long k = sample_geometric(rng, p, cfg.max_attempts);
    if (k > cfg.max_attempts) {
        return {cfg.max_attempts, static_cast<double>(cfg.max_attempts) * cfg.attempt_period_ns,
                false};
    }
    return {k, static_cast<double>(k) * cfg.attempt_period_ns, true};
}

}  // namespace detail

inline PairOutcome simulate_pair_trial(const HeraldConfig& cfg, std::uint64_t trial_index) {
    validate(cfg);
    SplitMix64 rng = trial_stream(cfg.seed, trial_index);
    return detail::draw_pair(rng, cfg);
}

/// Entangle one pair of spins: fire photons until the first heralded success.
inline PairOutcome simulate_pair(const HeraldConfig& cfg) {
    return simulate_pair_trial(cfg, 0);
}

/// Assemble a linear cluster of n_spins in two parallel stages: first entangle
/// floor(N/2) disjoint pairs side by side (stage time is the slowest pair),
/// then link the resulting units through one spin from each, again in
/// parallel. A failed entangling operation aborts the run; it is reported,
/// not retried.
inline HeraldOutcome simulate_cluster_trial(const HeraldConfig& cfg, std::uint64_t trial_index) {
    validate(cfg);
    if (cfg.n_spins < 2) {
        throw InvalidParameter("simulate_cluster: n_spins must be >= 2");
    }
    SplitMix64 rng = trial_stream(cfg.seed, trial_index);

    HeraldOutcome outcome;
    outcome.completed = true;

    const int stage1_pairs = cfg.n_spins / 2;
    const int units = (cfg.n_spins + 1) / 2;  // pairs plus a possible singleton
    const int stage2_links = units - 1;

    double total = 0.0;
    for (int stage = 0; stage < 2; ++stage) {
        const int ops = (stage == 0) ? stage1_pairs : stage2_links;
        double stage_time = 0.0;
        for (int k = 0; k < ops; ++k) {
            const PairOutcome pair = detail::draw_pair(rng, cfg);
            outcome.pair_times_ns.push_back(pair.time_ns);
            outcome.attempts_total += pair.attempts;
            stage_time = std::max(stage_time, pair.time_ns);
            if (!pair.succeeded) outcome.completed = false;
        }
        total += stage_time;
    }
    outcome.total_time_ns = total;
    outcome.within_coherence =
        outcome.completed && outcome.total_time_ns <= cfg.coherence_time_us * 1000.0;
    return outcome;
}

inline HeraldOutcome simulate_cluster(const HeraldConfig& cfg) {
    return simulate_cluster_trial(cfg, 0);
}

inline std::vector<PairOutcome> run_pair_trials(const HeraldConfig& cfg, long long trials) {
    if (trials < 1) throw InvalidParameter("run_pair_trials: trials must be >= 1");
    std::vector<PairOutcome> out;
    out.reserve(static_cast<std::size_t>(trials));
    for (long long t = 0; t < trials; ++t) {
        out.push_back(simulate_pair_trial(cfg, static_cast<std::uint64_t>(t)));
    }
    return out;
}

inline std::vector<HeraldOutcome> run_cluster_trials(const HeraldConfig& cfg, long long trials) {
    if (trials < 1) throw InvalidParameter("run_cluster_trials: trials must be >= 1");
    std::vector<HeraldOutcome> out;
    out.reserve(static_cast<std::size_t>(trials));
    for (long long t = 0; t < trials; ++t) {
        out.push_back(simulate_cluster_trial(cfg, static_cast<std::uint64_t>(t)));
    }
    return out;
}

/// Aggregate over trials. Time statistics cover successful trials only
/// (nearest-rank percentiles); attempts_mean likewise, so a truncated run
/// does not drag the average.
struct SummaryStats {
    long long trials = 0;
    double success_fraction = 0.0;
    double attempts_mean = 0.0;
    double time_mean_ns = 0.0;
    double time_median_ns = 0.0;
    double time_p95_ns = 0.0;
    double within_coherence_fraction = 0.0;
};

namespace detail {

inline double nearest_rank(std::vector<double>& sorted_values, double q) {
    if (sorted_values.empty()) return 0.0;
    const auto n = sorted_values.size();
    std::size_t rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
    if (rank < 1) rank = 1;
    if (rank > n) rank = n;
    return sorted_values[rank - 1];
}

inline SummaryStats summarize_core(long long trials,
                                   const std::vector<double>& success_times,
                                   double attempts_sum, long long within_coherence) {
    SummaryStats stats;
    stats.trials = trials;
    const auto n_success = success_times.size();
    stats.success_fraction = static_cast<double>(n_success) / static_cast<double>(trials);
    stats.within_coherence_fraction =
        static_cast<double>(within_coherence) / static_cast<double>(trials);
    if (n_success == 0) return stats;

    stats.attempts_mean = attempts_sum / static_cast<double>(n_success);
    double time_sum = 0.0;
    for (double t : success_times) time_sum += t;
    stats.time_mean_ns = time_sum / static_cast<double>(n_success);

    std::vector<double> sorted = success_times;
    std::sort(sorted.begin(), sorted.end());
    stats.time_median_ns = nearest_rank(sorted, 0.5);
    stats.time_p95_ns = nearest_rank(sorted, 0.95);
    return stats;
}

}  // namespace detail

inline SummaryStats summarize(const std::vector<PairOutcome>& outcomes,
                              const HeraldConfig& cfg) {
    std::vector<double> times;
    double attempts_sum = 0.0;
    long long within = 0;
    for (const auto& o : outcomes) {
        if (!o.succeeded) continue;
        times.push_back(o.time_ns);
        attempts_sum += static_cast<double>(o.attempts);
        if (o.time_ns <= cfg.coherence_time_us * 1000.0) ++within;
    }
    return detail::summarize_core(static_cast<long long>(outcomes.size()), times,
                                  attempts_sum, within);
}

inline SummaryStats summarize(const std::vector<HeraldOutcome>& outcomes,
                              const HeraldConfig&) {
    std::vector<double> times;
    double attempts_sum = 0.0;
    long long within = 0;
    for (const auto& o : outcomes) {
        if (!o.completed) continue;
        times.push_back(o.total_time_ns);
        attempts_sum += static_cast<double>(o.attempts_total);
        if (o.within_coherence) ++within;
    }
    return detail::summarize_core(static_cast<long long>(outcomes.size()), times,
                                  attempts_sum, within);
}

}  // namespace rscat
