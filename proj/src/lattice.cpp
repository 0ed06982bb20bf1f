#include "hybridbc/lattice.hpp"

#include <cmath>

#include "hybridbc/rng.hpp"

namespace hybridbc {

// std::remainder(x, s) is x - n*s with n the nearest integer to x/s, ties to
// even, computed exactly per IEEE 754. Deriving both operations from it keeps
// quantize and mod consistent (mod(x) == x - quantize(x)) with no division
// rounding.
double Lattice::mod_coord(double x) const { return std::remainder(x, scale_); }

double Lattice::quantize_coord(double x) const { return x - std::remainder(x, scale_); }

std::vector<double> Lattice::quantize(std::span<const double> x) const {
    check_dimension(x.size());
    std::vector<double> out(x.size());
    for (size_t i = 0; i < x.size(); ++i) out[i] = quantize_coord(x[i]);
    return out;
}

std::vector<double> Lattice::mod(std::span<const double> x) const {
    check_dimension(x.size());
    std::vector<double> out(x.size());
    for (size_t i = 0; i < x.size(); ++i) out[i] = mod_coord(x[i]);
    return out;
}

void Lattice::mod_inplace(std::span<double> x) const {
    check_dimension(x.size());
    for (double& v : x) v = mod_coord(v);
}

std::vector<double> sample_dither(const Lattice& lattice, RngStream& rng) {
    std::vector<double> dither(lattice.dimension());
    const double s = lattice.scale();
    for (double& u : dither) u = s * (rng.uniform01() - 0.5);
    return dither;
}

Lattice scale_for_power(int dimension, double p_prime) {
    if (!(p_prime > 0.0) || !std::isfinite(p_prime))
        throw InvalidParams("scale_for_power: p_prime must be positive and finite");
    return Lattice(dimension, std::sqrt(12.0 * p_prime));
}

}  // namespace hybridbc
