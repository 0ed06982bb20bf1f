#pragma once

#include "hybridbc/types.hpp"

namespace hybridbc {

// Transmitter/receiver constants of the dithered modulo-lattice scheme.
//
// Produced by derive_scheme_params; the fields satisfy
//   alpha^2 * p_prime               = alpha1 * P
//   gamma^2 * sigma2                = (1 - alpha1) * P
//   delta = alpha * p_prime / (alpha^2 * p_prime + n1),   beta = -delta
//   p_prime = target_variance * (alpha1*P + n1) / (alpha1*P)
// so the transmit power alpha^2 p_prime + gamma^2 sigma2 equals P and the
// lattice power p_prime equals target_variance plus the effective-noise
// variance (the correct-decoding condition met with equality).
struct SchemeParams {
    double alpha1 = 0.0;           // power fraction of the coded branch
    double p_prime = 0.0;          // lattice second moment P'
    double alpha = 0.0;            // coded-branch scaling
    double gamma = 0.0;            // uncoded-branch scaling
    double delta = 0.0;            // receiver front-end scaling
    double beta = 0.0;             // transmitter pre-subtraction coefficient
    double target_variance = 0.0;  // variance of the lattice-coded payload
};

// Derives every scheme constant for the given source/channel/split.
//
// The coded payload is S1 itself in independent mode (correlated_mode =
// false, target variance sigma2) and the innovation V = S1 - rho*S2 in
// correlated mode (target variance sigma2*(1-rho^2)). With rho = 0 both
// modes return identical values.
//
// Throws DegeneratePowerSplit at alpha1 = 0, where P' diverges; callers
// needing that endpoint should use the closed-form region limits instead.
SchemeParams derive_scheme_params(const SourceSpec& source, const ChannelSpec& channel,
                                  const PowerSplit& split, bool correlated_mode);

// Variance of the effective noise W after the receiver front end:
// P'*N1 / (alpha^2*P' + N1). With P' from derive_scheme_params this equals
// target_variance * N1 / (alpha1*P).
double effective_noise_variance(const SchemeParams& params, const ChannelSpec& channel);

}  // namespace hybridbc
