#pragma once

#include "nslab/field.hpp"

namespace nslab {

// Smallest {2,3,5,7}-smooth integer >= n (FFT-friendly grid size).
int smooth_grid_size(int n);

// Grid large enough for exact quadratic products at truncation N.
inline int product_grid_size(int N) { return smooth_grid_size(2 * (2 * N + 1)); }

// Samples of the trigonometric polynomial sum_k u_hat(k) e_k on the M^3 grid.
// Exact for any M >= 2N+1.  Throws if M is too small.
GridField to_physical(const SpectralField& u, int M);

// Truncated Fourier coefficients of a real grid field.  Exact inverse of
// to_physical when g came from a polynomial of degree <= N.  The lattice mean
// is discarded (flows are mean-zero); *discarded_mean reports it when asked.
SpectralField to_spectral(const GridField& g, int N, FieldRole role, double* discarded_mean = nullptr);

// Same, but the zero mode is kept.  Products of velocity fields carry means
// (that is where the Wick constants act), so the product path uses this one.
SpectralField to_spectral_keep_mean(const GridField& g, int N, FieldRole role);

}  // namespace nslab
