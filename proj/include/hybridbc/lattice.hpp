#pragma once

#include <span>
#include <vector>

#include "hybridbc/types.hpp"

namespace hybridbc {

class RngStream;

// Scaled integer lattice s * Z^n. The nearest-point quantizer and the
// per-dimension second moment s^2/12 are exact for this family, which is
// what makes the modulo-lattice transceiver testable; the shaping gap versus
// asymptotically good lattices is measured by the physical simulation mode
// rather than closed.
//
// Quantization rounds each coordinate of x/s to the nearest integer with
// ties to even, so the residual x - quantize(x) lies in [-s/2, s/2] with the
// +s/2 endpoint reachable only on exact half-cell ties (a measure-zero set;
// every other input lands in the half-open cell [-s/2, s/2)).
class Lattice {
  public:
    Lattice(int dimension, double scale) : dimension_(dimension), scale_(scale) {
        if (dimension < 1) throw InvalidParams("Lattice: dimension must be >= 1");
        if (!(scale > 0.0) || !std::isfinite(scale))
            throw InvalidParams("Lattice: scale must be positive and finite");
    }

    int dimension() const { return dimension_; }
    double scale() const { return scale_; }
    double second_moment() const { return scale_ * scale_ / 12.0; }

    // Nearest lattice point, coordinate-wise s * round(x/s), half-to-even.
    double quantize_coord(double x) const;
    std::vector<double> quantize(std::span<const double> x) const;

    // x - quantize(x), the representative of x in the fundamental cell.
    // Idempotent; invariant under shifts by lattice points.
    double mod_coord(double x) const;
    std::vector<double> mod(std::span<const double> x) const;
    void mod_inplace(std::span<double> x) const;

  private:
    void check_dimension(size_t n) const {
        if (n != static_cast<size_t>(dimension_))
            throw InvalidParams("Lattice: input dimension mismatch");
    }

    int dimension_;
    double scale_;
};

// Dither vector: each coordinate i.i.d. uniform on [-s/2, s/2), drawn from
// the caller's stream. Transmitter and receiver share it by construction.
std::vector<double> sample_dither(const Lattice& lattice, RngStream& rng);

// Lattice whose per-dimension second moment equals p_prime: s = sqrt(12 p').
Lattice scale_for_power(int dimension, double p_prime);

}  // namespace hybridbc
