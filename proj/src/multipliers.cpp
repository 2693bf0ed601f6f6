#include "nslab/multipliers.hpp"

#include <cmath>
#include <stdexcept>

namespace nslab {

Preset preset_from_string(const std::string& name) {
    if (name == "finite_difference") return Preset::finite_difference;
    if (name == "galerkin") return Preset::galerkin;
    if (name == "continuum") return Preset::continuum;
    throw std::invalid_argument("unknown preset: " + name);
}

std::string to_string(Preset p) {
    switch (p) {
        case Preset::finite_difference: return "finite_difference";
        case Preset::galerkin: return "galerkin";
        case Preset::continuum: return "continuum";
    }
    return "?";
}

MultiplierSet MultiplierSet::make(Preset p, double a, double b, double L0) {
    if (a < 0.0 || b < 0.0 || a + b <= 0.0) throw std::invalid_argument("stencil offsets need a,b >= 0, a+b > 0");
    if (L0 <= 0.0) throw std::invalid_argument("L0 must be positive");
    MultiplierSet ms;
    ms.preset = p;
    ms.a = a;
    ms.b = b;
    ms.L0 = L0;
    // Documented lower bound of f_tilde: 4/pi^2 per-axis for the finite
    // difference symbol, 1 otherwise.
    ms.c_f = (p == Preset::finite_difference) ? 4.0 / (M_PI * M_PI) : 1.0;
    return ms;
}

BlockedValue MultiplierSet::eval_f(const std::array<double, 3>& x) const {
    if (preset == Preset::continuum) return BlockedValue::finite(1.0);
    for (double xl : x)
        if (std::abs(xl) > L0) return BlockedValue::infinite();
    if (preset == Preset::galerkin && !f_tilde_override) return BlockedValue::finite(1.0);
    if (f_tilde_override) return BlockedValue::finite(f_tilde_override(x));
    const double n2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    if (n2 == 0.0) return BlockedValue::finite(1.0);
    const double s1 = std::sin(x[0] / 2.0), s2 = std::sin(x[1] / 2.0), s3 = std::sin(x[2] / 2.0);
    return BlockedValue::finite(4.0 / n2 * (s1 * s1 + s2 * s2 + s3 * s3));
}

std::complex<double> MultiplierSet::eval_g(double y) const {
    if (preset == Preset::continuum) return {0.0, 1.0};
    if (y == 0.0) return {0.0, 1.0};
    const double apb = a + b;
    // (e^{iay} - e^{-iby}) / ((a+b) y)
    const double re = (std::cos(a * y) - std::cos(b * y)) / (apb * y);
    const double im = (std::sin(a * y) + std::sin(b * y)) / (apb * y);
    return {re, im};
}

double MultiplierSet::eval_h(const std::array<double, 3>& x) const {
    if (preset == Preset::continuum) return 1.0;
    const double n2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    const double r = h_radius();
    return n2 <= r * r ? 1.0 : 0.0;  // closed ball
}

}  // namespace nslab
