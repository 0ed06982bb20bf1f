#include "hybridbc/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hybridbc {

double shared_d2(const SourceSpec& source, const ChannelSpec& channel, double alpha1) {
    const double p = channel.power();
    return source.sigma2() / (1.0 + (1.0 - alpha1) * p / (alpha1 * p + channel.n2()));
}

namespace {

// D1 of the lattice-coded branch: residual MSE on a payload of variance
// `payload_variance` observed through effective noise of variance
// payload_variance * N1 / (alpha1 * P).
double coded_branch_d1(double payload_variance, const ChannelSpec& channel, double alpha1) {
    return payload_variance / (1.0 + alpha1 * channel.power() / channel.n1());
}

// MSE on the rho*S2 component estimated from the uncoded branch as seen by a
// receiver with noise variance `noise`.
double uncoded_branch_d1(const SourceSpec& source, const ChannelSpec& channel, double alpha1,
                         double noise) {
    const double p = channel.power();
    const double rho2 = source.rho() * source.rho();
    return rho2 * source.sigma2() / (1.0 + (1.0 - alpha1) * p / (alpha1 * p + noise));
}

void require_independent(const SourceSpec& source, const char* op) {
    if (source.rho() != 0.0)
        throw InvalidParams(std::string(op) + ": defined only for independent sources (rho = 0)");
}

}  // namespace

DistortionPair outer_bound_point(const SourceSpec& source, const ChannelSpec& channel,
                                 const PowerSplit& split) {
    DistortionPair out;
    out.d1 = coded_branch_d1(source.innovation_variance(), channel, split.alpha1());
    out.d2 = shared_d2(source, channel, split.alpha1());
    out.conditional = source.correlated();
    return out;
}

DistortionPair hybrid_independent_point(const SourceSpec& source, const ChannelSpec& channel,
                                        const PowerSplit& split) {
    require_independent(source, "hybrid_independent_point");
    DistortionPair out;
    out.d1 = coded_branch_d1(source.innovation_variance(), channel, split.alpha1());
    out.d2 = shared_d2(source, channel, split.alpha1());
    return out;
}

DistortionPair uncoded_point(const SourceSpec& source, const ChannelSpec& channel,
                             const PowerSplit& split) {
    require_independent(source, "uncoded_point");
    const double p = channel.power();
    const double a1 = split.alpha1();
    DistortionPair out;
    out.d1 = source.sigma2() / (1.0 + a1 * p / ((1.0 - a1) * p + channel.n1()));
    out.d2 = shared_d2(source, channel, a1);
    return out;
}

DistortionPair hybrid_correlated_point(const SourceSpec& source, const ChannelSpec& channel,
                                       const PowerSplit& split) {
    const double a1 = split.alpha1();
    DistortionPair out;
    out.d1 = coded_branch_d1(source.innovation_variance(), channel, a1) +
             uncoded_branch_d1(source, channel, a1, channel.n1());
    out.d2 = shared_d2(source, channel, a1);
    return out;
}

DistortionPair separation_a_point(const SourceSpec& source, const ChannelSpec& channel,
                                  const PowerSplit& split) {
    DistortionPair out;
    out.d1 = coded_branch_d1(source.sigma2(), channel, split.alpha1());
    out.d2 = shared_d2(source, channel, split.alpha1());
    return out;
}

DistortionPair separation_b_point(const SourceSpec& source, const ChannelSpec& channel,
                                  const PowerSplit& split) {
    const double a1 = split.alpha1();
    DistortionPair out;
    out.d1 = coded_branch_d1(source.innovation_variance(), channel, a1) +
             uncoded_branch_d1(source, channel, a1, channel.n2());
    out.d2 = shared_d2(source, channel, a1);
    return out;
}

DistortionPair distortion_point(Scheme scheme, const SourceSpec& source,
                                const ChannelSpec& channel, const PowerSplit& split) {
    switch (scheme) {
        case Scheme::OuterBound: return outer_bound_point(source, channel, split);
        case Scheme::HybridIndependent: return hybrid_independent_point(source, channel, split);
        case Scheme::Uncoded: return uncoded_point(source, channel, split);
        case Scheme::HybridCorrelated: return hybrid_correlated_point(source, channel, split);
        case Scheme::SeparationA: return separation_a_point(source, channel, split);
        case Scheme::SeparationB: return separation_b_point(source, channel, split);
    }
    throw InvalidParams("distortion_point: unknown scheme");
}

double snr_threshold(const PowerSplit& split) {
    const double a1 = split.alpha1();
    if (a1 == 0.0) return std::numeric_limits<double>::infinity();
    return (1.0 - 2.0 * a1) / (a1 * a1);
}

std::vector<double> uniform_alpha1_grid(int count) {
    if (count < 2) throw InvalidParams("uniform_alpha1_grid: need at least 2 grid points");
    std::vector<double> grid(count);
    for (int i = 0; i < count; ++i)
        grid[i] = static_cast<double>(i) / static_cast<double>(count - 1);
    return grid;
}

namespace {

void validate_grid(const std::vector<double>& grid) {
    if (grid.empty()) throw InvalidParams("alpha1 grid must be non-empty");
    double prev = -1.0;
    for (double a : grid) {
        if (!(a >= 0.0) || !(a <= 1.0))
            throw InvalidParams("alpha1 grid values must lie in [0, 1]");
        if (!(a > prev)) throw InvalidParams("alpha1 grid must be strictly increasing");
        prev = a;
    }
}

}  // namespace

RegionCurve sweep_frontier(Scheme scheme, const SourceSpec& source, const ChannelSpec& channel,
                           const std::vector<double>& grid) {
    validate_grid(grid);
    RegionCurve curve;
    curve.scheme = scheme;
    curve.points.reserve(grid.size());
    for (double a : grid)
        curve.points.push_back({a, distortion_point(scheme, source, channel, PowerSplit(a))});
    return curve;
}

ComparisonReport compare_schemes(const SourceSpec& source, const ChannelSpec& channel,
                                 const std::vector<double>& grid) {
    validate_grid(grid);
    std::vector<Scheme> schemes = {Scheme::OuterBound, Scheme::HybridCorrelated,
                                   Scheme::SeparationA, Scheme::SeparationB};
    if (!source.correlated()) {
        schemes.push_back(Scheme::HybridIndependent);
        schemes.push_back(Scheme::Uncoded);
    }

    ComparisonReport report;
    report.points.reserve(grid.size());
    for (double a : grid) {
        const PowerSplit split(a);
        ComparisonPoint pt;
        pt.alpha1 = a;
        double d2 = shared_d2(source, channel, a);
        for (Scheme s : schemes) {
            DistortionPair d = distortion_point(s, source, channel, split);
            d.d2 = d2;  // shared formula; keep the records bitwise identical
            pt.records.push_back({s, d});
        }

        // Dominance among achievable schemes (the outer bound is excluded).
        double best = std::numeric_limits<double>::infinity();
        double second = best;
        for (const SchemeRecord& rec : pt.records) {
            if (rec.scheme == Scheme::OuterBound) continue;
            if (rec.distortion.d1 < best) {
                second = best;
                best = rec.distortion.d1;
                pt.best_d1 = rec.scheme;
            } else if (rec.distortion.d1 < second) {
                second = rec.distortion.d1;
            }
        }
        pt.best_tie = std::isfinite(second) && (second - best) <= kDominanceTieRel * second;

        const double d1_hybrid = hybrid_correlated_point(source, channel, split).d1;
        const double d1_a = separation_a_point(source, channel, split).d1;
        ThresholdVerdict& v = pt.verdict;
        v.threshold = snr_threshold(split);
        v.p_over_n1 = channel.power() / channel.n1();
        v.predicted_win = v.p_over_n1 < v.threshold;
        const double gap = d1_a - d1_hybrid;
        v.tie = std::abs(gap) <= kDominanceTieRel * std::max(d1_a, d1_hybrid);
        v.observed_win = !v.tie && gap > 0.0;
        v.agree = v.tie || (v.predicted_win == v.observed_win);
        report.points.push_back(std::move(pt));
    }
    return report;
}

}  // namespace hybridbc
