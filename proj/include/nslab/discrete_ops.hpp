#pragma once

#include <limits>

#include "nslab/field.hpp"
#include "nslab/multipliers.hpp"

namespace nslab {

// Decay rate of the approximated heat semigroup at mode k: |k|^2 f(eps k).
// Blocked modes report +infinity.
inline double heat_rate(const Wavevector& k, double eps, const MultiplierSet& ms) {
    const BlockedValue f = ms.f_at(k, eps);
    if (f.blocked) return std::numeric_limits<double>::infinity();
    return k.norm2() * f.value;
}

// P_t^eps: multiply each mode by e^{-t |k|^2 f(eps k)}.  Blocked modes go to
// zero for t > 0 and are untouched at t = 0 (P_0 is the identity).
SpectralField apply_semigroup(const SpectralField& u, double t, double eps, const MultiplierSet& ms);

// D_j^eps: multiplier k^j g(eps k^j); the continuum preset gives i k^j.
SpectralField apply_Deps(const SpectralField& u, int axis, double eps, const MultiplierSet& ms);

// H_eps: multiplier h(eps k).
SpectralField apply_Heps(const SpectralField& u, double eps, const MultiplierSet& ms);

// u(. + a eps e_j) - u(. - b eps e_j), the physical-space form of
// (a+b) eps D_j^eps.
SpectralField apply_stencil_shift(const SpectralField& u, int axis, double eps, const MultiplierSet& ms);

}  // namespace nslab
