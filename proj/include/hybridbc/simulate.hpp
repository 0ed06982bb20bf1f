#pragma once

#include <cstdint>
#include <vector>

#include "hybridbc/lattice.hpp"
#include "hybridbc/params.hpp"
#include "hybridbc/regions.hpp"
#include "hybridbc/rng.hpp"
#include "hybridbc/types.hpp"

namespace hybridbc {

enum class SimMode { Hybrid, Uncoded };
enum class LatticeMode { Ideal, Physical };

// One Monte Carlo experiment: `trials` independent blocks of `blocklength`
// coordinates each. Identical configs produce bitwise-identical results
// regardless of how many threads execute the trials.
//
// lattice_mode selects how Receiver 1 recovers the coded payload. Ideal mode
// computes the alias-free algebraic value payload + W11 (validating the
// closed forms exactly); Physical mode executes the true mod-Lambda chain
// and reports the aliasing penalty of the finite-dimensional lattice.
//
// inflation (kappa >= 1, Physical mode only) grows the lattice cell to
// kappa * P'. The coded-branch gains are rescaled so the effective noise
// keeps its analytic variance, which buys a lower overload rate at the cost
// of transmit power exceeding the budget by (kappa - 1)(alpha1*P + N1).
struct SimConfig {
    int blocklength = 1000;
    long long trials = 1000;
    std::uint64_t seed = 1;
    SimMode mode = SimMode::Hybrid;
    LatticeMode lattice_mode = LatticeMode::Ideal;
    double inflation = 1.0;
};

// Transceiver constants as applied on the wire. Equal to the SchemeParams
// values in Ideal mode and at kappa = 1; rescaled per the inflation rule in
// Physical mode with kappa > 1.
struct TransceiverGains {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double delta = 0.0;
    double lattice_second_moment = 0.0;
    double expected_power = 0.0;         // mean E[X^2] implied by the gains
    double w11_variance = 0.0;           // Var of the effective noise W11
    double w12_variance = 0.0;           // Var of W12 = (alpha*X1 + Z1)/gamma
};

TransceiverGains make_transceiver_gains(const SchemeParams& params, const ChannelSpec& channel,
                                        LatticeMode lattice_mode, double inflation);

// Mean and 1-sigma standard error of the mean, estimated from the spread of
// per-trial block means (zero when only one trial was run).
struct Moment {
    double mean = 0.0;
    double std_error = 0.0;
};

// Working vectors of one simulated block.
struct TrialRecord {
    std::vector<double> s1, s2, v;       // sources and innovation (S1 = rho*S2 + V)
    std::vector<double> dither;          // shared transmitter/receiver dither
    std::vector<double> x1, x;           // coded branch and channel input
    std::vector<double> z1, z2;          // receiver noises
    std::vector<double> y1, y2;          // receiver observations
    std::vector<double> w11, w12;        // effective-noise terms, algebraic (no modulo)
    std::vector<double> r11, r12;        // Receiver 1 observables (r11 is R1 in independent mode)
    std::vector<double> shat1, shat2;    // estimates
    long long overload_count = 0;        // coordinates where payload + W11 left the cell
};

// Sources for one block: s2 ~ N(0, sigma2), v ~ N(0, sigma2*(1 - rho^2))
// independent, s1 = rho*s2 + v. Draw order from `rng`: s2 first, then v.
void gen_sources(const SourceSpec& source, int n, RngStream& rng, std::vector<double>& s1,
                 std::vector<double>& s2, std::vector<double>& v);

// Coded branch x1 = [payload + beta*gamma*s2 + dither] mod Lambda and channel
// input x = alpha*x1 + gamma*s2.
void encode_hybrid(const TransceiverGains& gains, const Lattice& lattice,
                   std::span<const double> dither, std::span<const double> payload,
                   std::span<const double> s2, std::vector<double>& x1, std::vector<double>& x);

// Receiver 2 estimate shat2 = gamma*sigma2/(P + N2) * y2.
void decode_receiver2(const TransceiverGains& gains, const SourceSpec& source,
                      const ChannelSpec& channel, std::span<const double> y2,
                      std::vector<double>& shat2);

// Runs one hybrid block end to end, filling `rec` (buffers are reused).
// Per-block draw order from `rng`: s2, v, dither, z1, z2. The coded payload
// is s1 when the source is independent and the innovation v when rho > 0;
// Receiver 1 adds the r12 = y1/gamma observable only in the correlated case.
void run_hybrid_trial(const SourceSpec& source, const ChannelSpec& channel,
                      const SchemeParams& params, const TransceiverGains& gains,
                      const Lattice& lattice, LatticeMode lattice_mode, int n, RngStream& rng,
                      TrialRecord& rec);

// Runs one uncoded block: x = sqrt(alpha1*P/sigma2)*s1 + sqrt((1-alpha1)*P/sigma2)*s2
// with the scalar MMSE estimators at both receivers. Draw order: s1, s2, z1, z2.
void run_uncoded_trial(const SourceSpec& source, const ChannelSpec& channel,
                       const PowerSplit& split, int n, RngStream& rng, TrialRecord& rec);

struct SimResult {
    SimConfig config;
    double alpha1 = 0.0;
    Moment d1, d2;                 // empirical distortions
    Moment power;                  // empirical mean of X^2
    Moment w11_variance;           // empirical Var(W11)
    Moment w12_variance;           // empirical Var(W12); zero in uncoded mode
    Moment w_cross_correlation;    // empirical E[W11*W12]; zero in uncoded mode
    Moment x1_s2_cross;            // empirical E[X1*S2] (dither independence check)
    double overload_rate = 0.0;    // fraction of aliased coordinates; 0 in Ideal mode
    DistortionPair analytic;       // matching closed-form distortion point
    double expected_power = 0.0;   // P, or the inflated value in Physical mode
    double analytic_w11_variance = 0.0;
    double analytic_w12_variance = 0.0;
};

// Monte Carlo run of the hybrid transceiver. Rejects alpha1 in {0, 1}
// (transceiver undefined at the endpoints; the closed forms in regions cover
// them). `threads` only distributes trials; it never changes the result.
SimResult run_hybrid(const SourceSpec& source, const ChannelSpec& channel,
                     const PowerSplit& split, const SimConfig& config, int threads = 1);

// Monte Carlo run of uncoded transmission (requires rho = 0).
SimResult run_uncoded(const SourceSpec& source, const ChannelSpec& channel,
                      const PowerSplit& split, const SimConfig& config, int threads = 1);

// Dispatches on config.mode.
SimResult run_simulation(const SourceSpec& source, const ChannelSpec& channel,
                         const PowerSplit& split, const SimConfig& config, int threads = 1);

struct EffectiveNoiseStats {
    Moment w11_variance;
    Moment w12_variance;
    Moment cross_correlation;
    double analytic_w11_variance = 0.0;
    double analytic_w12_variance = 0.0;
};

// Empirical second moments of the effective-noise pair (W11, W12), computed
// algebraically with no modulo. Requires alpha1 < 1 (W12 needs gamma > 0).
EffectiveNoiseStats measure_effective_noise(const SourceSpec& source, const ChannelSpec& channel,
                                            const PowerSplit& split, const SimConfig& config,
                                            int threads = 1);

}  // namespace hybridbc
