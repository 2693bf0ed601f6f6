#pragma once

#include <array>
#include <complex>
#include <functional>
#include <string>

#include "nslab/lattice.hpp"

namespace nslab {

enum class Preset { finite_difference, galerkin, continuum };

Preset preset_from_string(const std::string& name);
std::string to_string(Preset p);

// f(x) = f_tilde(x) inside the box {|x_l| <= L0}, +infinity outside.
struct BlockedValue {
    bool blocked = false;
    double value = 0.0;

    static BlockedValue finite(double v) { return {false, v}; }
    static BlockedValue infinite() { return {true, 0.0}; }
};

// The discretization triple (f, g, h) plus the stencil offsets (a, b).
//
// Shipped presets:
//   finite_difference  f_tilde(x) = (4/|x|^2) sum_l sin^2(x_l/2),  h = 1_{|x| <= L0/2}
//   galerkin           f_tilde = 1,                                h = 1_{|x| <= L0/2}
//   continuum          f = 1 and h = 1 everywhere, g = i (exact operators)
// A user-supplied f_tilde may replace the preset one; its derivative bounds
// are the caller's responsibility.
struct MultiplierSet {
    Preset preset = Preset::galerkin;
    double a = 1.0;
    double b = 0.0;
    double L0 = 2.0;
    double c_f = 1.0;
    std::function<double(const std::array<double, 3>&)> f_tilde_override;

    static MultiplierSet make(Preset p, double a = 1.0, double b = 0.0, double L0 = 2.0);

    double h_radius() const { return L0 / 2.0; }

    BlockedValue eval_f(const std::array<double, 3>& x) const;
    std::complex<double> eval_g(double y) const;
    double eval_h(const std::array<double, 3>& x) const;

    // cos(a y) - cos(b y); the even part of (a+b) y g(y).  Identically zero
    // for a = b, which is the symmetry that kills the first-order constants,
    // and for the continuum preset, whose g is exactly i.
    double cos_difference(double y) const {
        if (preset == Preset::continuum) return 0.0;
        return std::cos(a * y) - std::cos(b * y);
    }

    // Convenience forms at lattice frequency k for a given epsilon.
    BlockedValue f_at(const Wavevector& k, double eps) const {
        return eval_f({eps * k.k1, eps * k.k2, eps * k.k3});
    }
    double h_at(const Wavevector& k, double eps) const {
        return eval_h({eps * k.k1, eps * k.k2, eps * k.k3});
    }
    bool mode_retained(const Wavevector& k, double eps) const {
        return !k.is_zero() && h_at(k, eps) != 0.0;
    }
};

}  // namespace nslab
