#pragma once

#include <limits>

#include "nslab/dyadic.hpp"
#include "nslab/transform.hpp"

namespace nslab {

struct BesovIndex {
    double alpha = 0.0;
    double p = std::numeric_limits<double>::infinity();
    double q = std::numeric_limits<double>::infinity();

    static BesovIndex hoelder(double alpha) { return {alpha}; }
};

// ||u||_{B^alpha_{p,q}} summed over components.  L^p block norms are taken on
// a grid of size >= 2(2N+1): exact point values of the block polynomial, so
// p = infinity is exact up to grid resolution; finite p is quadrature except
// p = 2 which is evaluated spectrally (Parseval).
double besov_norm(const SpectralField& u, const BesovIndex& idx, const DyadicPartition& dp);

// C^alpha = B^alpha_{inf,inf} shorthand.
double hoelder_norm(const SpectralField& u, double alpha, const DyadicPartition& dp);

struct BonyDecomposition {
    SpectralField lo_hi;      // pi_<(f,g)
    SpectralField resonant;   // pi_0(f,g)
    SpectralField hi_lo;      // pi_>(f,g)
};

// Bony decomposition of the dealiased product of two scalar fields.
// lo_hi + resonant + hi_lo equals dealiased_product(f,g) to machine precision.
BonyDecomposition bony(const SpectralField& f, const SpectralField& g, const DyadicPartition& dp);

// Resonant part only (cheaper when the other two are not needed).
SpectralField pi0(const SpectralField& f, const SpectralField& g, const DyadicPartition& dp);
SpectralField pi_less(const SpectralField& f, const SpectralField& g, const DyadicPartition& dp);

// C(f,g,h) = pi_0(pi_<(f,g),h) - f pi_0(g,h).
SpectralField commutator_C(const SpectralField& f, const SpectralField& g, const SpectralField& h,
                           const DyadicPartition& dp);

// Scalar Leray symbol P^{kl} as a Fourier multiplier on a scalar field.
SpectralField apply_leray_entry(const SpectralField& u, int row, int col);

// P^{kl} pi_<(u,v) - pi_<(u, P^{kl} v).
SpectralField leray_commutator(const SpectralField& u, const SpectralField& v, int row, int col,
                               const DyadicPartition& dp);

}  // namespace nslab
