#pragma once

#include "nslab/field.hpp"
#include "nslab/transform.hpp"

namespace nslab {

// Per mode u(k) <- P(k) u(k); the zero mode is left untouched.
SpectralField leray_project(const SpectralField& u);

// div u as a scalar field: i * sum_l k^l u^l(k).
SpectralField divergence(const SpectralField& u);

// Pointwise product of two scalar fields, exact for all retained modes via a
// zero-padded grid of size >= 2(2N+1), truncated back to N.  The zero mode of
// the product is kept (this is where Wick subtractions act).
SpectralField dealiased_product(const SpectralField& u, const SpectralField& v);

// max_k |coeff| of div u, for divergence-free asserts.
double divergence_max(const SpectralField& u);

// Grid evaluations of every component on the dealiasing grid, for callers
// that form many pairwise products from the same fields.
std::vector<GridField> component_grids(const SpectralField& u, int M);

// Product of two already-evaluated grids, truncated back to N (zero mode kept).
SpectralField grid_product_to_spectral(const GridField& a, const GridField& b, int N);

}  // namespace nslab
