#include "nslab/discrete_ops.hpp"

#include <cmath>

namespace nslab {

SpectralField apply_semigroup(const SpectralField& u, double t, double eps, const MultiplierSet& ms) {
    if (t < 0.0) throw std::invalid_argument("apply_semigroup: t must be >= 0");
    if (t == 0.0) return u;
    SpectralField out = u;
    u.box().for_each([&](const Wavevector& k) {
        const double lam = heat_rate(k, eps, ms);
        const double m = std::isinf(lam) ? 0.0 : std::exp(-t * lam);
        for (int c = 0; c < u.components(); ++c) out.at(c, k) = m * u.at(c, k);
    });
    return out;
}

SpectralField apply_Deps(const SpectralField& u, int axis, double eps, const MultiplierSet& ms) {
    if (axis < 0 || axis > 2) throw std::invalid_argument("apply_Deps: axis must be 0, 1 or 2");
    SpectralField out = u;
    u.box().for_each([&](const Wavevector& k) {
        const double kj = k[axis];
        const cplx m = kj * ms.eval_g(eps * kj);
        for (int c = 0; c < u.components(); ++c) out.at(c, k) = m * u.at(c, k);
    });
    return out;
}

SpectralField apply_Heps(const SpectralField& u, double eps, const MultiplierSet& ms) {
    SpectralField out = u;
    u.box().for_each([&](const Wavevector& k) {
        const double m = ms.h_at(k, eps);
        for (int c = 0; c < u.components(); ++c) out.at(c, k) = m * u.at(c, k);
    });
    return out;
}

SpectralField apply_stencil_shift(const SpectralField& u, int axis, double eps, const MultiplierSet& ms) {
    SpectralField out = u;
    u.box().for_each([&](const Wavevector& k) {
        const double y = eps * k[axis];
        const cplx m = std::polar(1.0, ms.a * y) - std::polar(1.0, -ms.b * y);
        for (int c = 0; c < u.components(); ++c) out.at(c, k) = m * u.at(c, k);
    });
    return out;
}

}  // namespace nslab
