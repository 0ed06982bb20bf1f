#include "hybridbc/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace hybridbc {

namespace {

double kahan_sum(const std::vector<double>& values) {
    double sum = 0.0, comp = 0.0;
    for (double v : values) {
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

Moment moment_of(const std::vector<double>& block_means) {
    Moment m;
    const size_t n = block_means.size();
    m.mean = kahan_sum(block_means) / static_cast<double>(n);
    if (n >= 2) {
        double ss = 0.0, comp = 0.0;
        for (double v : block_means) {
            const double d = (v - m.mean) * (v - m.mean);
            const double y = d - comp;
            const double t = ss + y;
            comp = (t - ss) - y;
            ss = t;
        }
        m.std_error = std::sqrt(ss / (static_cast<double>(n) * static_cast<double>(n - 1)));
    }
    return m;
}

double block_mean_sq(const std::vector<double>& a) {
    double s = 0.0;
    for (double v : a) s += v * v;
    return s / static_cast<double>(a.size());
}

double block_mean_sq_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return s / static_cast<double>(a.size());
}

double block_mean_prod(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s / static_cast<double>(a.size());
}

// Per-trial block means, stored by trial index so the final reduction is
// independent of which thread ran which trial.
struct TrialStats {
    double d1 = 0.0, d2 = 0.0, power = 0.0;
    double w11sq = 0.0, w12sq = 0.0, w11w12 = 0.0, x1s2 = 0.0;
    double overload = 0.0;
};

void validate_common(const SimConfig& config) {
    if (config.blocklength < 1) throw InvalidParams("SimConfig: blocklength must be >= 1");
    if (config.trials < 1) throw InvalidParams("SimConfig: trials must be >= 1");
    if (!(config.inflation >= 1.0) || !std::isfinite(config.inflation))
        throw InvalidParams("SimConfig: inflation must be a finite value >= 1");
    if (config.lattice_mode == LatticeMode::Ideal && config.inflation != 1.0)
        throw InvalidParams("SimConfig: inflation applies to the physical lattice mode only");
}

template <typename TrialFn>
std::vector<TrialStats> run_trials(const SimConfig& config, int threads, TrialFn&& trial_fn) {
    const long long trials = config.trials;
    std::vector<TrialStats> stats(static_cast<size_t>(trials));
    threads = std::max(1, threads);
    if (threads == 1 || trials == 1) {
        TrialRecord rec;
        for (long long t = 0; t < trials; ++t) stats[static_cast<size_t>(t)] = trial_fn(t, rec);
        return stats;
    }
    const long long nthreads = std::min<long long>(threads, trials);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(nthreads));
    for (long long w = 0; w < nthreads; ++w) {
        const long long lo = trials * w / nthreads;
        const long long hi = trials * (w + 1) / nthreads;
        pool.emplace_back([lo, hi, &stats, &trial_fn]() {
            TrialRecord rec;
            for (long long t = lo; t < hi; ++t) stats[static_cast<size_t>(t)] = trial_fn(t, rec);
        });
    }
    for (auto& th : pool) th.join();
    return stats;
}

void fill_gaussian(RngStream& rng, double stddev, int n, std::vector<double>& out) {
    out.resize(static_cast<size_t>(n));
    for (double& v : out) v = rng.gaussian(stddev);
}

void sample_dither_into(const Lattice& lattice, RngStream& rng, std::vector<double>& out) {
    out.resize(static_cast<size_t>(lattice.dimension()));
    const double s = lattice.scale();
    for (double& u : out) u = s * (rng.uniform01() - 0.5);
}

}  // namespace

TransceiverGains make_transceiver_gains(const SchemeParams& params, const ChannelSpec& channel,
                                        LatticeMode lattice_mode, double inflation) {
    const double n1 = channel.n1();
    const double coded_power = params.alpha1 * channel.power();

    TransceiverGains g;
    g.gamma = params.gamma;
    if (lattice_mode == LatticeMode::Physical && inflation != 1.0) {
        // Inflated cell: second moment kappa*P'. alpha is raised so that the
        // self-noise (delta*alpha - 1)*X1 shrinks by exactly the amount the
        // larger cell would otherwise add, keeping Var(W11) at its analytic
        // value P'*N1/(alpha1*P + N1) for every kappa.
        const double kappa = inflation;
        g.alpha = std::sqrt((coded_power + (1.0 - 1.0 / kappa) * n1) / params.p_prime);
        g.delta = g.alpha * params.p_prime / (coded_power + n1);
        g.lattice_second_moment = kappa * params.p_prime;
    } else {
        g.alpha = params.alpha;
        g.delta = params.delta;
        g.lattice_second_moment = params.p_prime;
    }
    g.beta = -g.delta;
    g.expected_power = g.alpha * g.alpha * g.lattice_second_moment +
                       (1.0 - params.alpha1) * channel.power();
    const double self = g.delta * g.alpha - 1.0;
    g.w11_variance = self * self * g.lattice_second_moment + g.delta * g.delta * n1;
    g.w12_variance =
        g.gamma > 0.0
            ? (g.alpha * g.alpha * g.lattice_second_moment + n1) / (g.gamma * g.gamma)
            : 0.0;
    return g;
}

void gen_sources(const SourceSpec& source, int n, RngStream& rng, std::vector<double>& s1,
                 std::vector<double>& s2, std::vector<double>& v) {
    const double sigma = std::sqrt(source.sigma2());
    const double sigma_v = std::sqrt(source.innovation_variance());
    const double rho = source.rho();
    fill_gaussian(rng, sigma, n, s2);
    fill_gaussian(rng, sigma_v, n, v);
    s1.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) s1[i] = rho * s2[i] + v[i];
}

void encode_hybrid(const TransceiverGains& gains, const Lattice& lattice,
                   std::span<const double> dither, std::span<const double> payload,
                   std::span<const double> s2, std::vector<double>& x1, std::vector<double>& x) {
    const size_t n = payload.size();
    if (dither.size() != n || s2.size() != n)
        throw InvalidParams("encode_hybrid: input dimension mismatch");
    if (n != static_cast<size_t>(lattice.dimension()))
        throw InvalidParams("encode_hybrid: lattice dimension mismatch");
    x1.resize(n);
    x.resize(n);
    const double bg = gains.beta * gains.gamma;
    for (size_t i = 0; i < n; ++i) {
        x1[i] = lattice.mod_coord(payload[i] + bg * s2[i] + dither[i]);
        x[i] = gains.alpha * x1[i] + gains.gamma * s2[i];
    }
}

void decode_receiver2(const TransceiverGains& gains, const SourceSpec& source,
                      const ChannelSpec& channel, std::span<const double> y2,
                      std::vector<double>& shat2) {
    const double k = gains.gamma * source.sigma2() / (channel.power() + channel.n2());
    shat2.resize(y2.size());
    for (size_t i = 0; i < y2.size(); ++i) shat2[i] = k * y2[i];
}

void run_hybrid_trial(const SourceSpec& source, const ChannelSpec& channel,
                      const SchemeParams& params, const TransceiverGains& gains,
                      const Lattice& lattice, LatticeMode lattice_mode, int n, RngStream& rng,
                      TrialRecord& rec) {
    const double p = channel.power();
    const double n1 = channel.n1();
    const bool correlated = source.correlated();

    gen_sources(source, n, rng, rec.s1, rec.s2, rec.v);
    sample_dither_into(lattice, rng, rec.dither);
    const std::vector<double>& payload = correlated ? rec.v : rec.s1;
    encode_hybrid(gains, lattice, rec.dither, payload, rec.s2, rec.x1, rec.x);

    fill_gaussian(rng, std::sqrt(n1), n, rec.z1);
    fill_gaussian(rng, std::sqrt(channel.n2()), n, rec.z2);
    rec.y1.resize(static_cast<size_t>(n));
    rec.y2.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        rec.y1[i] = rec.x[i] + rec.z1[i];
        rec.y2[i] = rec.x[i] + rec.z2[i];
    }

    // Effective-noise terms, algebraic (no modulo). The s2 term vanishes
    // identically with beta = -delta.
    rec.w11.resize(static_cast<size_t>(n));
    rec.w12.resize(static_cast<size_t>(n));
    const double s2_gain = gains.gamma * (gains.delta + gains.beta);
    const double self = gains.delta * gains.alpha - 1.0;
    for (int i = 0; i < n; ++i) {
        rec.w11[i] = s2_gain * rec.s2[i] + self * rec.x1[i] + gains.delta * rec.z1[i];
        rec.w12[i] = (gains.alpha * rec.x1[i] + rec.z1[i]) / gains.gamma;
    }

    // Receiver 1 front end.
    rec.r11.resize(static_cast<size_t>(n));
    rec.overload_count = 0;
    if (lattice_mode == LatticeMode::Physical) {
        for (int i = 0; i < n; ++i) {
            rec.r11[i] = lattice.mod_coord(gains.delta * rec.y1[i] - rec.dither[i]);
            if (lattice.quantize_coord(payload[i] + rec.w11[i]) != 0.0) ++rec.overload_count;
        }
    } else {
        for (int i = 0; i < n; ++i) rec.r11[i] = payload[i] + rec.w11[i];
    }

    // Estimators.
    const double a1p = params.alpha1 * p;
    const double c1 = a1p / (a1p + n1);
    rec.shat1.resize(static_cast<size_t>(n));
    if (correlated) {
        rec.r12.resize(static_cast<size_t>(n));
        const double c2 = source.rho() * (1.0 - params.alpha1) * p / (p + n1);
        for (int i = 0; i < n; ++i) {
            rec.r12[i] = rec.y1[i] / gains.gamma;
            rec.shat1[i] = c1 * rec.r11[i] + c2 * rec.r12[i];
        }
    } else {
        rec.r12.clear();
        for (int i = 0; i < n; ++i) rec.shat1[i] = c1 * rec.r11[i];
    }
    decode_receiver2(gains, source, channel, rec.y2, rec.shat2);
}

void run_uncoded_trial(const SourceSpec& source, const ChannelSpec& channel,
                       const PowerSplit& split, int n, RngStream& rng, TrialRecord& rec) {
    const double p = channel.power();
    const double a1 = split.alpha1();
    const double sigma2 = source.sigma2();

    gen_sources(source, n, rng, rec.s1, rec.s2, rec.v);
    const double g1 = std::sqrt(a1 * p / sigma2);
    const double g2 = std::sqrt((1.0 - a1) * p / sigma2);
    rec.x.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) rec.x[i] = g1 * rec.s1[i] + g2 * rec.s2[i];

    fill_gaussian(rng, std::sqrt(channel.n1()), n, rec.z1);
    fill_gaussian(rng, std::sqrt(channel.n2()), n, rec.z2);
    rec.y1.resize(static_cast<size_t>(n));
    rec.y2.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        rec.y1[i] = rec.x[i] + rec.z1[i];
        rec.y2[i] = rec.x[i] + rec.z2[i];
    }

    const double k1 = std::sqrt(a1 * p * sigma2) / (p + channel.n1());
    const double k2 = std::sqrt((1.0 - a1) * p * sigma2) / (p + channel.n2());
    rec.shat1.resize(static_cast<size_t>(n));
    rec.shat2.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        rec.shat1[i] = k1 * rec.y1[i];
        rec.shat2[i] = k2 * rec.y2[i];
    }
    rec.x1.clear();
    rec.dither.clear();
    rec.w11.clear();
    rec.w12.clear();
    rec.r11.clear();
    rec.r12.clear();
    rec.overload_count = 0;
}

namespace {

SimResult reduce_stats(const std::vector<TrialStats>& stats) {
    const size_t t = stats.size();
    std::vector<double> buf(t);
    auto collect = [&](auto field) -> Moment {
        for (size_t i = 0; i < t; ++i) buf[i] = stats[i].*field;
        return moment_of(buf);
    };
    SimResult r;
    r.d1 = collect(&TrialStats::d1);
    r.d2 = collect(&TrialStats::d2);
    r.power = collect(&TrialStats::power);
    r.w11_variance = collect(&TrialStats::w11sq);
    r.w12_variance = collect(&TrialStats::w12sq);
    r.w_cross_correlation = collect(&TrialStats::w11w12);
    r.x1_s2_cross = collect(&TrialStats::x1s2);
    r.overload_rate = collect(&TrialStats::overload).mean;
    return r;
}

}  // namespace

SimResult run_hybrid(const SourceSpec& source, const ChannelSpec& channel, const PowerSplit& split,
                     const SimConfig& config, int threads) {
    validate_common(config);
    const double a1 = split.alpha1();
    if (a1 == 0.0 || a1 == 1.0)
        throw DegeneratePowerSplit(
            "run_hybrid: transceiver undefined at alpha1 in {0, 1}; use the closed-form "
            "region endpoints instead");

    const bool correlated = source.correlated();
    const SchemeParams params = derive_scheme_params(source, channel, split, correlated);
    const TransceiverGains gains =
        make_transceiver_gains(params, channel, config.lattice_mode, config.inflation);
    const Lattice lattice = scale_for_power(config.blocklength, gains.lattice_second_moment);
    const int n = config.blocklength;

    auto trial_fn = [&](long long t, TrialRecord& rec) {
        RngStream rng = RngStream::for_trial(config.seed, static_cast<std::uint64_t>(t));
        run_hybrid_trial(source, channel, params, gains, lattice, config.lattice_mode, n, rng,
                         rec);
        TrialStats s;
        s.d1 = block_mean_sq_diff(rec.s1, rec.shat1);
        s.d2 = block_mean_sq_diff(rec.s2, rec.shat2);
        s.power = block_mean_sq(rec.x);
        s.w11sq = block_mean_sq(rec.w11);
        s.w12sq = block_mean_sq(rec.w12);
        s.w11w12 = block_mean_prod(rec.w11, rec.w12);
        s.x1s2 = block_mean_prod(rec.x1, rec.s2);
        s.overload = static_cast<double>(rec.overload_count) / static_cast<double>(n);
        return s;
    };

    SimResult result = reduce_stats(run_trials(config, threads, trial_fn));
    result.config = config;
    result.config.mode = SimMode::Hybrid;
    result.alpha1 = a1;
    result.analytic = correlated ? hybrid_correlated_point(source, channel, split)
                                 : hybrid_independent_point(source, channel, split);
    result.expected_power = gains.expected_power;
    result.analytic_w11_variance = gains.w11_variance;
    result.analytic_w12_variance = gains.w12_variance;
    return result;
}

SimResult run_uncoded(const SourceSpec& source, const ChannelSpec& channel,
                      const PowerSplit& split, const SimConfig& config, int threads) {
    validate_common(config);
    if (source.correlated())
        throw InvalidParams("run_uncoded: defined only for independent sources (rho = 0)");

    const int n = config.blocklength;
    auto trial_fn = [&](long long t, TrialRecord& rec) {
        RngStream rng = RngStream::for_trial(config.seed, static_cast<std::uint64_t>(t));
        run_uncoded_trial(source, channel, split, n, rng, rec);
        TrialStats s;
        s.d1 = block_mean_sq_diff(rec.s1, rec.shat1);
        s.d2 = block_mean_sq_diff(rec.s2, rec.shat2);
        s.power = block_mean_sq(rec.x);
        return s;
    };

    SimResult result = reduce_stats(run_trials(config, threads, trial_fn));
    result.config = config;
    result.config.mode = SimMode::Uncoded;
    result.config.lattice_mode = LatticeMode::Ideal;  // no lattice in play
    result.config.inflation = 1.0;
    result.alpha1 = split.alpha1();
    result.analytic = uncoded_point(source, channel, split);
    result.expected_power = channel.power();
    return result;
}

SimResult run_simulation(const SourceSpec& source, const ChannelSpec& channel,
                         const PowerSplit& split, const SimConfig& config, int threads) {
    return config.mode == SimMode::Uncoded ? run_uncoded(source, channel, split, config, threads)
                                           : run_hybrid(source, channel, split, config, threads);
}

EffectiveNoiseStats measure_effective_noise(const SourceSpec& source, const ChannelSpec& channel,
                                            const PowerSplit& split, const SimConfig& config,
                                            int threads) {
    if (split.alpha1() == 1.0)
        throw InvalidParams("measure_effective_noise: W12 undefined at alpha1 = 1 (gamma = 0)");
    SimConfig cfg = config;
    cfg.mode = SimMode::Hybrid;
    const SimResult r = run_hybrid(source, channel, split, cfg, threads);
    EffectiveNoiseStats out;
    out.w11_variance = r.w11_variance;
    out.w12_variance = r.w12_variance;
    out.cross_correlation = r.w_cross_correlation;
    out.analytic_w11_variance = r.analytic_w11_variance;
    out.analytic_w12_variance = r.analytic_w12_variance;
    return out;
}

}  // namespace hybridbc
