#pragma once

#include <vector>

#include "nslab/field.hpp"

namespace nslab {

// Dyadic partition of unity (chi, theta) built from a smooth radial profile
// rho: 1 on r <= 1, 0 on r >= 2, monotone in between.
//   chi(xi)   = rho(2|xi|)            support |xi| <= 1
//   theta(xi) = rho(|xi|) - rho(2|xi|) support 1/2 <= |xi| <= 2
// so supp theta(2^-j .) is the annulus {2^(j-1) <= |xi| <= 2^(j+1)} and
// theta(2^-i .) theta(2^-j .) = 0 for |i-j| > 1.
class DyadicPartition {
  public:
    // Throws if any of the three partition invariants fails on the lattice
    // points it will be used on (|k| <= lattice_extent).
    DyadicPartition(double sharpness, int j_max, double lattice_extent);

    // Partition sized for truncation N: j_max = ceil(log2(sqrt(3) N)).
    static DyadicPartition for_truncation(int N, double sharpness = 1.0);

    int j_max() const { return j_max_; }

    double rho(double r) const;
    double chi(double r) const { return rho(2.0 * r); }
    double theta(double r) const { return rho(r) - rho(2.0 * r); }

    // Block multiplier m_j(|xi|): j = -1 is chi, j >= 0 is theta(2^-j |xi|).
    double block_weight(int j, double r) const;

    // sum_{|i-j|<=1} m_i(r) m_j(r): the resonant-pair weight.  Equals 1 at
    // every nonzero lattice radius (checked at construction).
    double resonant_weight(double r) const;

  private:
    double sharpness_ = 1.0;
    int j_max_ = 0;
};

// Littlewood-Paley block Delta_j u (j = -1 uses chi).
SpectralField lp_block(const SpectralField& u, int j, const DyadicPartition& dp);

}  // namespace nslab
