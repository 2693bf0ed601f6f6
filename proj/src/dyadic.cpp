#include "nslab/dyadic.hpp"

#include <cmath>
#include <stdexcept>

namespace nslab {

namespace {
// Smooth monotone switch on [0,1] from the standard e^{-1/x} bump.
double bump_switch(double x, double gamma) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double p = std::exp(-gamma / x);
    const double q = std::exp(-gamma / (1.0 - x));
    return p / (p + q);
}
}  // namespace

double DyadicPartition::rho(double r) const {
    if (r <= 1.0) return 1.0;
    if (r >= 2.0) return 0.0;
    return 1.0 - bump_switch(r - 1.0, sharpness_);
}

double DyadicPartition::block_weight(int j, double r) const {
    if (j < -1 || j > j_max_) return 0.0;
    if (j == -1) return chi(r);
    return theta(std::ldexp(r, -j));
}

double DyadicPartition::resonant_weight(double r) const {
    double s = 0.0;
    for (int i = -1; i <= j_max_; ++i) {
        const double mi = block_weight(i, r);
        if (mi == 0.0) continue;
        for (int j = std::max(-1, i - 1); j <= std::min(j_max_, i + 1); ++j)
            s += mi * block_weight(j, r);
    }
    return s;
}

DyadicPartition::DyadicPartition(double sharpness, int j_max, double lattice_extent) {
    if (sharpness <= 0.0) throw std::invalid_argument("DyadicPartition: sharpness must be > 0");
    if (j_max < 0) throw std::invalid_argument("DyadicPartition: j_max must be >= 0");
    sharpness_ = sharpness;
    j_max_ = j_max;

    // Verify the three invariants on every lattice radius up to the extent.
    // Radii are |k| for k in Z^3, but checking a dense r-grid plus the exact
    // telescoping identity covers them all.
    if (std::ldexp(1.0, j_max_) < lattice_extent)
        throw std::invalid_argument("DyadicPartition: j_max too small for requested extent");
    const int steps = 4096;
    for (int s = 0; s <= steps; ++s) {
        const double r = lattice_extent * s / steps;
        double sum = chi(r);
        for (int j = 0; j <= j_max_; ++j) sum += theta(std::ldexp(r, -j));
        if (std::abs(sum - 1.0) > 1e-12)
            throw std::runtime_error("DyadicPartition: partition-of-unity defect on the lattice");
        if (r >= 1.0 && std::abs(resonant_weight(r) - 1.0) > 1e-12)
            throw std::runtime_error("DyadicPartition: resonant weight is not 1 on the lattice");
        // Disjointness beyond neighbours.
        for (int i = -1; i <= j_max_; ++i)
            for (int j = i + 2; j <= j_max_; ++j)
                if (block_weight(i, r) * block_weight(j, r) != 0.0)
                    throw std::runtime_error("DyadicPartition: blocks overlap beyond neighbours");
    }
}

DyadicPartition DyadicPartition::for_truncation(int N, double sharpness) {
    const double extent = std::sqrt(3.0) * std::max(N, 1);
    int j_max = 0;
    while (std::ldexp(1.0, j_max) < extent) ++j_max;
    return DyadicPartition(sharpness, j_max, extent);
}

SpectralField lp_block(const SpectralField& u, int j, const DyadicPartition& dp) {
    if (j < -1) throw std::invalid_argument("lp_block: j must be >= -1");
    SpectralField out = u;
    u.box().for_each([&](const Wavevector& k) {
        const double w = dp.block_weight(j, k.norm());
        for (int c = 0; c < u.components(); ++c) out.at(c, k) = w * u.at(c, k);
    });
    return out;
}

}  // namespace nslab
