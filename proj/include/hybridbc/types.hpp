#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace hybridbc {

// Thrown when a constructor or operation receives arguments that violate a
// documented invariant. The message names the violated invariant.
struct InvalidParams : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown for power splits at which the modulo-lattice transceiver is
// undefined (alpha1 = 0 makes the lattice power P' infinite; alpha1 in {0,1}
// leaves one branch of the transceiver without a signal).
struct DegeneratePowerSplit : InvalidParams {
    using InvalidParams::InvalidParams;
};

// Bivariate Gaussian source law: zero mean, per-component variance sigma2,
// correlation coefficient rho. Covariance matrix [[s2, r*s2], [r*s2, s2]].
//
// rho = 0 selects the independent-source setting. Negative rho is rejected;
// callers with anti-correlated sources should negate one component first.
class SourceSpec {
  public:
    SourceSpec(double sigma2, double rho) : sigma2_(sigma2), rho_(rho) {
        if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
            throw InvalidParams("SourceSpec: sigma2 must be positive and finite");
        if (!(rho >= 0.0) || !(rho < 1.0))
            throw InvalidParams("SourceSpec: rho must lie in [0, 1)");
    }

    double sigma2() const { return sigma2_; }
    double rho() const { return rho_; }
    bool correlated() const { return rho_ > 0.0; }
    // Variance of the innovation V in S1 = rho*S2 + V.
    double innovation_variance() const { return sigma2_ * (1.0 - rho_ * rho_); }

  private:
    double sigma2_;
    double rho_;
};

// Degraded Gaussian broadcast channel: input power budget P, noise variance
// N1 at Receiver 1 and N2 at Receiver 2, with N2 > N1 (Receiver 2 is the
// weaker, physically degraded receiver).
class ChannelSpec {
  public:
    ChannelSpec(double power, double n1, double n2) : power_(power), n1_(n1), n2_(n2) {
        if (!(power > 0.0) || !std::isfinite(power))
            throw InvalidParams("ChannelSpec: power must be positive and finite");
        if (!(n1 > 0.0) || !std::isfinite(n1))
            throw InvalidParams("ChannelSpec: n1 must be positive and finite");
        if (!(n2 > n1) || !std::isfinite(n2))
            throw InvalidParams("ChannelSpec: n2 must exceed n1 (physically degraded channel)");
    }

    double power() const { return power_; }
    double n1() const { return n1_; }
    double n2() const { return n2_; }

  private:
    double power_;
    double n1_;
    double n2_;
};

// Fraction alpha1 in [0, 1] of the power budget assigned to the coded
// (first-source) branch; 1 - alpha1 goes to the uncoded branch.
class PowerSplit {
  public:
    explicit PowerSplit(double alpha1) : alpha1_(alpha1) {
        if (!(alpha1 >= 0.0) || !(alpha1 <= 1.0))
            throw InvalidParams("PowerSplit: alpha1 must lie in [0, 1]");
    }

    double alpha1() const { return alpha1_; }

  private:
    double alpha1_;
};

// One (D1, D2) mean-squared-error point. `conditional` marks d1 as the
// conditional distortion D1|2 (Receiver 1 given S2 as side information);
// everywhere else d1 is the plain distortion on source 1.
struct DistortionPair {
    double d1 = 0.0;
    double d2 = 0.0;
    bool conditional = false;
};

enum class Scheme {
    OuterBound,
    HybridIndependent,
    Uncoded,
    HybridCorrelated,
    SeparationA,
    SeparationB,
};

const char* scheme_name(Scheme s);
// Parses CLI-style tokens ("outer", "hybrid-independent", ...). Throws
// InvalidParams on unknown tokens.
Scheme scheme_from_token(const std::string& token);

struct CurvePoint {
    double alpha1 = 0.0;
    DistortionPair distortion;
};

// A scheme's distortion frontier sampled on an increasing alpha1 grid.
struct RegionCurve {
    Scheme scheme = Scheme::OuterBound;
    std::vector<CurvePoint> points;
};

}  // namespace hybridbc
