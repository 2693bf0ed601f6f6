#pragma once

#include <complex>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "nslab/lattice.hpp"

namespace nslab {

using cplx = std::complex<double>;

enum class FieldRole { scalar, vector3 };

// Fourier coefficients on the truncated lattice [-N,N]^3 in the basis
// e_k(x) = (2*pi)^{-3/2} exp(i k.x).  All real-space fields are real, so
// coeff(-k) = conj(coeff(k)) is maintained by every operation.  Velocity
// fields additionally keep coeff(0) = 0 (mean-zero flow); product fields
// may carry a zero mode.
class SpectralField {
  public:
    SpectralField() = default;
    SpectralField(FieldRole role, int N)
        : role_(role), box_(N), coeffs_(components() * box_.volume(), cplx(0.0, 0.0)) {}

    static SpectralField scalar(int N) { return SpectralField(FieldRole::scalar, N); }
    static SpectralField vector(int N) { return SpectralField(FieldRole::vector3, N); }

    FieldRole role() const { return role_; }
    int N() const { return box_.N; }
    const ModeBox& box() const { return box_; }
    int components() const { return role_ == FieldRole::scalar ? 1 : 3; }

    cplx& at(int comp, const Wavevector& k) { return coeffs_[comp * box_.volume() + box_.index(k)]; }
    const cplx& at(int comp, const Wavevector& k) const {
        return coeffs_[comp * box_.volume() + box_.index(k)];
    }
    cplx& at(const Wavevector& k) { return at(0, k); }
    const cplx& at(const Wavevector& k) const { return at(0, k); }

    cplx* data(int comp) { return coeffs_.data() + comp * box_.volume(); }
    const cplx* data(int comp) const { return coeffs_.data() + comp * box_.volume(); }

    void clear() { std::fill(coeffs_.begin(), coeffs_.end(), cplx(0.0, 0.0)); }

    SpectralField component(int comp) const {
        SpectralField out = scalar(N());
        std::copy(data(comp), data(comp) + box_.volume(), out.data(0));
        return out;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
        return m;
    }

    double hermitian_defect() const {
        double worst = 0.0;
        for (int comp = 0; comp < components(); ++comp) {
            box_.for_each([&](const Wavevector& k) {
                const cplx d = at(comp, k) - std::conj(at(comp, k.negated()));
                worst = std::max(worst, std::abs(d));
            });
        }
        return worst;
    }

    void enforce_hermitian() {
        for (int comp = 0; comp < components(); ++comp) {
            box_.for_each([&](const Wavevector& k) {
                if (!k.is_canonical()) return;
                const cplx avg = 0.5 * (at(comp, k) + std::conj(at(comp, k.negated())));
                at(comp, k) = avg;
                at(comp, k.negated()) = std::conj(avg);
            });
            at(comp, {0, 0, 0}) = cplx(at(comp, {0, 0, 0}).real(), 0.0);
        }
    }

    void clamp_zero_mode() {
        for (int comp = 0; comp < components(); ++comp) at(comp, {0, 0, 0}) = 0.0;
    }

    SpectralField& operator+=(const SpectralField& o) { return axpy(1.0, o); }
    SpectralField& operator-=(const SpectralField& o) { return axpy(-1.0, o); }
    SpectralField& operator*=(double s) {
        for (auto& c : coeffs_) c *= s;
        return *this;
    }
    SpectralField& axpy(double a, const SpectralField& o) {
        if (o.coeffs_.size() != coeffs_.size()) throw std::invalid_argument("field size mismatch");
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += a * o.coeffs_[i];
        return *this;
    }

    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
    friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

  private:
    FieldRole role_ = FieldRole::scalar;
    ModeBox box_{0};
    std::vector<cplx> coeffs_;
};

// Real samples on the uniform M^3 grid x_m = 2*pi*m/M.
struct GridField {
    FieldRole role = FieldRole::scalar;
    int M = 0;
    std::vector<double> values;  // component-major, size components * M^3

    GridField() = default;
    GridField(FieldRole r, int M_) : role(r), M(M_), values(std::size_t(r == FieldRole::scalar ? 1 : 3) * M_ * M_ * M_, 0.0) {}

    int components() const { return role == FieldRole::scalar ? 1 : 3; }
    std::size_t points() const { return std::size_t(M) * M * M; }
    double* data(int comp) { return values.data() + comp * points(); }
    const double* data(int comp) const { return values.data() + comp * points(); }

    double max_abs() const {
        double m = 0.0;
        for (double v : values) m = std::max(m, std::abs(v));
        return m;
    }
};

}  // namespace nslab
