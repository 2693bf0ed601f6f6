#pragma once

// Slow reference implementations used only by tests: direct DFT sums,
// naive convolution, and an independently coded paraproduct.  They must
// stay free of the library's transform path.

#include <cmath>
#include <complex>
#include <vector>

#include "nslab/dyadic.hpp"
#include "nslab/field.hpp"

namespace oracles {

using nslab::cplx;
using nslab::SpectralField;
using nslab::Wavevector;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Pointwise evaluation of sum_k u_hat(k) e_k(x) by the direct sum.
inline double eval_direct(const SpectralField& u, int comp, double x1, double x2, double x3) {
    cplx s = 0.0;
    u.box().for_each([&](const Wavevector& k) {
        const cplx v = u.at(comp, k);
        if (v == cplx(0.0, 0.0)) return;
        const double phase = k.k1 * x1 + k.k2 * x2 + k.k3 * x3;
        s += v * std::polar(1.0, phase);
    });
    return (s * std::pow(kTwoPi, -1.5)).real();
}

// Coefficients of the product u*v by the naive convolution sum
// w(k) = (2pi)^{-3/2} sum_{k1+k2=k} u(k1) v(k2), truncated to N.
inline SpectralField convolve_naive(const SpectralField& u, const SpectralField& v) {
    const int N = u.N();
    SpectralField w = SpectralField::scalar(N);
    const double norm = std::pow(kTwoPi, -1.5);
    u.box().for_each([&](const Wavevector& k1) {
        const cplx a = u.at(k1);
        if (a == cplx(0.0, 0.0)) return;
        v.box().for_each([&](const Wavevector& k2) {
            const cplx b = v.at(k2);
            if (b == cplx(0.0, 0.0)) return;
            const Wavevector k{k1.k1 + k2.k1, k1.k2 + k2.k2, k1.k3 + k2.k3};
            if (!w.box().contains(k)) return;
            w.at(k) += norm * a * b;
        });
    });
    return w;
}

// Independently coded resonant paraproduct: work directly on coefficients,
// pairing blocks by explicit double convolution.
inline SpectralField pi0_naive(const SpectralField& f, const SpectralField& g,
                               const nslab::DyadicPartition& dp) {
    const int N = f.N();
    SpectralField out = SpectralField::scalar(N);
    for (int i = -1; i <= dp.j_max(); ++i)
        for (int j = std::max(-1, i - 1); j <= std::min(dp.j_max(), i + 1); ++j) {
            SpectralField fi = lp_block(f, i, dp);
            SpectralField gj = lp_block(g, j, dp);
            out += convolve_naive(fi, gj);
        }
    return out;
}

inline SpectralField pi_less_naive(const SpectralField& f, const SpectralField& g,
                                   const nslab::DyadicPartition& dp) {
    const int N = f.N();
    SpectralField out = SpectralField::scalar(N);
    for (int j = 1; j <= dp.j_max(); ++j) {
        SpectralField low = SpectralField::scalar(N);
        for (int i = -1; i <= j - 2; ++i) low += lp_block(f, i, dp);
        out += convolve_naive(low, lp_block(g, j, dp));
    }
    return out;
}

inline double max_diff(const SpectralField& a, const SpectralField& b) {
    double m = 0.0;
    a.box().for_each([&](const Wavevector& k) {
        for (int c = 0; c < a.components(); ++c)
            m = std::max(m, std::abs(a.at(c, k) - b.at(c, k)));
    });
    return m;
}

}  // namespace oracles
