#pragma once

#include <optional>
#include <vector>

#include "hybridbc/types.hpp"

namespace hybridbc {

// Closed-form distortion points, one per scheme, all parameterized by the
// power split alpha1. Every scheme shares the same D2 formula
//   D2 = sigma2 / (1 + (1-alpha1)P / (alpha1*P + N2)),
// computed by shared_d2 and reused verbatim so cross-scheme D2 values are
// bitwise identical.

double shared_d2(const SourceSpec& source, const ChannelSpec& channel, double alpha1);

// Outer bound. d1 is the conditional distortion D1|2 when rho > 0
// (conditional flag set); with rho = 0 it is the plain D1 bound.
DistortionPair outer_bound_point(const SourceSpec& source, const ChannelSpec& channel,
                                 const PowerSplit& split);

// Hybrid scheme, independent sources. Requires rho = 0; attains the outer
// bound at every alpha1.
DistortionPair hybrid_independent_point(const SourceSpec& source, const ChannelSpec& channel,
                                        const PowerSplit& split);

// Linear (uncoded) transmission of both sources. Requires rho = 0.
DistortionPair uncoded_point(const SourceSpec& source, const ChannelSpec& channel,
                             const PowerSplit& split);

// Hybrid scheme, correlated sources. Reduces exactly to
// hybrid_independent_point at rho = 0.
DistortionPair hybrid_correlated_point(const SourceSpec& source, const ChannelSpec& channel,
                                       const PowerSplit& split);

// Source-channel separation treating the two compressed sources as
// independent messages.
DistortionPair separation_a_point(const SourceSpec& source, const ChannelSpec& channel,
                                  const PowerSplit& split);

// Source-channel separation where Receiver 1 mimics Receiver 2's decoding of
// S2 and combines it with the compressed innovation.
DistortionPair separation_b_point(const SourceSpec& source, const ChannelSpec& channel,
                                  const PowerSplit& split);

// Evaluates the point operation selected by `scheme`.
DistortionPair distortion_point(Scheme scheme, const SourceSpec& source,
                                const ChannelSpec& channel, const PowerSplit& split);

// SNR threshold (1 - 2*alpha1) / alpha1^2 below which the correlated hybrid
// scheme's D1 beats separation scheme A's. Returns +infinity at alpha1 = 0;
// zero or negative for alpha1 >= 1/2 (hybrid never wins there).
double snr_threshold(const PowerSplit& split);

// Uniform grid of `count` alpha1 values on [0, 1] including both endpoints.
std::vector<double> uniform_alpha1_grid(int count);

// Evaluates `scheme` on the grid. The grid must be strictly increasing and
// contained in [0, 1].
RegionCurve sweep_frontier(Scheme scheme, const SourceSpec& source, const ChannelSpec& channel,
                           const std::vector<double>& grid);

// Relative d1 differences below this are reported as ties in dominance
// verdicts, avoiding sign flapping at analytic equality points.
inline constexpr double kDominanceTieRel = 1e-9;

struct SchemeRecord {
    Scheme scheme = Scheme::OuterBound;
    DistortionPair distortion;
};

struct ThresholdVerdict {
    double threshold = 0.0;  // (1 - 2*alpha1) / alpha1^2, +inf at alpha1 = 0
    double p_over_n1 = 0.0;
    bool predicted_win = false;  // P/N1 < threshold
    bool observed_win = false;   // d1_hybrid < d1_separation_a outside the tie band
    bool tie = false;            // |d1 difference| within kDominanceTieRel relative
    bool agree = false;          // prediction matches observation (ties agree vacuously)
};

struct ComparisonPoint {
    double alpha1 = 0.0;
    std::vector<SchemeRecord> records;  // achievable schemes plus the outer bound
    Scheme best_d1 = Scheme::OuterBound;  // achievable scheme with smallest d1
    bool best_tie = false;                // runner-up within kDominanceTieRel of the best
    ThresholdVerdict verdict;             // hybrid vs separation A
};

struct ComparisonReport {
    std::vector<ComparisonPoint> points;
};

// Evaluates every applicable scheme on the grid and issues per-point
// dominance and threshold verdicts. With rho = 0, Uncoded and
// HybridIndependent join the comparison; the threshold verdict then reports
// ties everywhere (hybrid and scheme A coincide).
ComparisonReport compare_schemes(const SourceSpec& source, const ChannelSpec& channel,
                                 const std::vector<double>& grid);

}  // namespace hybridbc
