#include "hybridbc/params.hpp"

#include <cmath>

namespace hybridbc {

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::OuterBound: return "outer_bound";
        case Scheme::HybridIndependent: return "hybrid_independent";
        case Scheme::Uncoded: return "uncoded";
        case Scheme::HybridCorrelated: return "hybrid_correlated";
        case Scheme::SeparationA: return "separation_a";
        case Scheme::SeparationB: return "separation_b";
    }
    return "unknown";
}

Scheme scheme_from_token(const std::string& token) {
    if (token == "outer" || token == "outer-bound" || token == "outer_bound")
        return Scheme::OuterBound;
    if (token == "hybrid-independent" || token == "hybrid_independent")
        return Scheme::HybridIndependent;
    if (token == "uncoded") return Scheme::Uncoded;
    if (token == "hybrid-correlated" || token == "hybrid_correlated")
        return Scheme::HybridCorrelated;
    if (token == "separation-a" || token == "separation_a") return Scheme::SeparationA;
    if (token == "separation-b" || token == "separation_b") return Scheme::SeparationB;
    throw InvalidParams("unknown scheme token: " + token);
}

SchemeParams derive_scheme_params(const SourceSpec& source, const ChannelSpec& channel,
                                  const PowerSplit& split, bool correlated_mode) {
    const double a1 = split.alpha1();
    if (a1 == 0.0)
        throw DegeneratePowerSplit(
            "derive_scheme_params: alpha1 = 0 makes the lattice power P' undefined");

    const double p = channel.power();
    const double n1 = channel.n1();
    const double coded_power = a1 * p;

    SchemeParams out;
    out.alpha1 = a1;
    out.target_variance =
        correlated_mode ? source.sigma2() * (1.0 - source.rho() * source.rho()) : source.sigma2();
    out.p_prime = out.target_variance * (coded_power + n1) / coded_power;
    out.alpha = std::sqrt(coded_power / out.p_prime);
    out.gamma = std::sqrt((1.0 - a1) * p / source.sigma2());
    out.delta = out.alpha * out.p_prime / (out.alpha * out.alpha * out.p_prime + n1);
    out.beta = -out.delta;
    return out;
}

double effective_noise_variance(const SchemeParams& params, const ChannelSpec& channel) {
    const double n1 = channel.n1();
    return params.p_prime * n1 / (params.alpha * params.alpha * params.p_prime + n1);
}

}  // namespace hybridbc
