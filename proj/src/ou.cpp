#include "nslab/ou.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "nslab/spectral_ops.hpp"

namespace nslab {

cplx covariance_oracle(const Wavevector& k, double t, double s, int i, int j, CovarianceKind kind,
                       double eps, const MultiplierSet& ms) {
    if (k.is_zero()) throw std::invalid_argument("covariance_oracle: k = 0 carries no noise");
    const double h = ms.h_at(k, eps);
    if (h == 0.0) return 0.0;
    const BlockedValue f = ms.f_at(k, eps);
    if (f.blocked) return 0.0;
    const double n2 = k.norm2();
    const double lam = n2 * f.value;
    const double lam_bar = n2;
    const double pij = Projector::at(k)(i, j);
    switch (kind) {
        case CovarianceKind::approx_approx:
            return std::exp(-lam * std::abs(t - s)) * h * h / (2.0 * lam) * pij;
        case CovarianceKind::exact_exact:
            return std::exp(-lam_bar * std::abs(t - s)) * h * h / (2.0 * lam_bar) * pij;
        case CovarianceKind::cross: {
            const double rate = (t <= s) ? lam_bar : lam;
            return std::exp(-rate * std::abs(t - s)) * h * h / (lam + lam_bar) * pij;
        }
    }
    return 0.0;
}

OUState::OUState(int N, double eps, const MultiplierSet& ms, std::uint64_t seed,
                 std::uint64_t stream_class)
    : N_(N), eps_(eps), ms_(ms), seed_(seed),
      x_(SpectralField::vector(N)), xbar_(SpectralField::vector(N)) {
    if (eps <= 0.0) throw std::invalid_argument("OUState: eps must be > 0");
    ModeBox box(N);
    box.for_each([&](const Wavevector& k) {
        if (!k.is_canonical()) return;
        if (!ms_.mode_retained(k, eps_)) return;
        NoiseMode m;
        m.k = k;
        const BlockedValue f = ms_.f_at(k, eps_);
        if (f.blocked) throw std::logic_error("OUState: retained mode inside blocked region");
        m.lambda = k.norm2() * f.value;
        m.lambda_bar = k.norm2();
        const double h = ms_.h_at(k, eps_);
        m.h2 = h * h;
        m.proj = Projector::at(k);
        m.rng.seed(mode_stream_key(seed_, k, stream_class));
        modes_.push_back(std::move(m));
    });
}

void OUState::set_mode(SpectralField& f, const Wavevector& k, const std::array<cplx, 3>& v) {
    for (int c = 0; c < 3; ++c) {
        f.at(c, k) = v[c];
        f.at(c, k.negated()) = std::conj(v[c]);
    }
}

void OUState::add_mode(SpectralField& f, const Wavevector& k, const std::array<cplx, 3>& v, double decay) {
    for (int c = 0; c < 3; ++c) {
        const cplx nv = decay * f.at(c, k) + v[c];
        f.at(c, k) = nv;
        f.at(c, k.negated()) = std::conj(nv);
    }
}

namespace {
inline std::array<cplx, 3> project(const Projector& p, const std::array<cplx, 3>& z) {
    std::array<cplx, 3> out;
    for (int i = 0; i < 3; ++i)
        out[i] = p(i, 0) * z[0] + p(i, 1) * z[1] + p(i, 2) * z[2];
    return out;
}
inline std::array<cplx, 3> combine(double a, const std::array<cplx, 3>& x, double b,
                                   const std::array<cplx, 3>& y) {
    std::array<cplx, 3> out;
    for (int i = 0; i < 3; ++i) out[i] = a * x[i] + b * y[i];
    return out;
}
}  // namespace

void OUState::init_stationary() {
    t_ = 0.0;
    x_.clear();
    xbar_.clear();
    for (auto& m : modes_) {
        const auto z1 = project(m.proj, m.draw_std_complex3());
        const auto z2 = project(m.proj, m.draw_std_complex3());
        const double v1 = m.h2 / (2.0 * m.lambda);
        const double v2 = m.h2 / (2.0 * m.lambda_bar);
        const double c = m.h2 / (m.lambda + m.lambda_bar);
        const double s1 = std::sqrt(v1);
        std::array<cplx, 3> xv = combine(s1, z1, 0.0, z2);
        std::array<cplx, 3> xbv;
        if (m.lambda == m.lambda_bar) {
            xbv = xv;
        } else {
            const double w1 = c / s1;
            const double w2 = std::sqrt(std::max(0.0, v2 - c * c / v1));
            xbv = combine(w1, z1, w2, z2);
        }
        set_mode(x_, m.k, xv);
        set_mode(xbar_, m.k, xbv);
    }
}

void OUState::draw_increments(double dt, SpectralField& xi, SpectralField& xi_bar) {
    if (dt <= 0.0) throw std::invalid_argument("OUState: dt must be > 0");
    xi.clear();
    xi_bar.clear();
    for (auto& m : modes_) {
        const auto z1 = project(m.proj, m.draw_std_complex3());
        const auto z2 = project(m.proj, m.draw_std_complex3());
        const double e1 = std::exp(-m.lambda * dt);
        const double e2 = std::exp(-m.lambda_bar * dt);
        const double v1 = m.h2 * (1.0 - e1 * e1) / (2.0 * m.lambda);
        const double v2 = m.h2 * (1.0 - e2 * e2) / (2.0 * m.lambda_bar);
        const double c = m.h2 * (1.0 - e1 * e2) / (m.lambda + m.lambda_bar);
        const double s1 = std::sqrt(v1);
        std::array<cplx, 3> xv = combine(s1, z1, 0.0, z2);
        std::array<cplx, 3> xbv;
        if (m.lambda == m.lambda_bar) {
            xbv = xv;
        } else {
            const double w1 = c / s1;
            const double w2 = std::sqrt(std::max(0.0, v2 - c * c / v1));
            xbv = combine(w1, z1, w2, z2);
        }
        set_mode(xi, m.k, xv);
        set_mode(xi_bar, m.k, xbv);
    }
}

namespace {

// Gram integrals of the increment kernels over one step: I0 = int e^{-a u},
// I1 = int u e^{-a u}, I2 = int u^2 e^{-a u} on [0, dt], written to avoid the
// small-(a dt) cancellations.
struct KernelGram {
    double i0, i1, i2;
};
KernelGram kernel_gram(double a, double dt) {
    const double x = a * dt;
    const double ex = std::exp(-x);
    KernelGram g;
    g.i0 = -std::expm1(-x) / a;
    g.i1 = (-std::expm1(-x) - x * ex) / (a * a);
    g.i2 = (2.0 * (-std::expm1(-x)) - ex * (2.0 * x + x * x)) / (a * a * a);
    return g;
}

// Lower-triangular Cholesky factor of a symmetric positive (semi)definite
// n x n matrix; tiny pivots are clamped to zero rows.
template <int n>
void cholesky(const double (&m)[n][n], double (&L)[n][n]) {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) L[i][j] = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = m[i][j];
            for (int k = 0; k < j; ++k) s -= L[i][k] * L[j][k];
            if (i == j) {
                L[i][i] = s > 0.0 ? std::sqrt(s) : 0.0;
            } else {
                L[i][j] = L[j][j] > 0.0 ? s / L[j][j] : 0.0;
            }
        }
    }
}

}  // namespace

void OUState::advance_joint(double dt, SpectralField* K, SpectralField* K_bar) {
    if (dt <= 0.0) throw std::invalid_argument("OUState: dt must be > 0");
    for (auto& m : modes_) {
        const auto z1 = m.draw_std_complex3();
        const auto z2 = m.draw_std_complex3();
        const auto z3 = m.draw_std_complex3();
        const auto z4 = m.draw_std_complex3();
        const double lam = m.lambda, lamb = m.lambda_bar;
        const double e1 = std::exp(-lam * dt);
        const double e2 = std::exp(-lamb * dt);

        std::array<cplx, 3> xi, xib, nn, nnb;
        if (lam == lamb) {
            // degenerate (galerkin) branch: identical processes, 2x2 factor
            const KernelGram g = kernel_gram(2.0 * lam, dt);
            double M[2][2] = {{m.h2 * g.i0, m.h2 * g.i1}, {m.h2 * g.i1, m.h2 * g.i2}};
            double L[2][2];
            cholesky(M, L);
            for (int c = 0; c < 3; ++c) {
                xi[c] = L[0][0] * z1[c];
                nn[c] = L[1][0] * z1[c] + L[1][1] * z3[c];
            }
            xib = xi;
            nnb = nn;
        } else {
            const KernelGram ga = kernel_gram(2.0 * lam, dt);
            const KernelGram gb = kernel_gram(2.0 * lamb, dt);
            const KernelGram gx = kernel_gram(lam + lamb, dt);
            double M[4][4] = {
                {m.h2 * ga.i0, m.h2 * gx.i0, m.h2 * ga.i1, m.h2 * gx.i1},
                {m.h2 * gx.i0, m.h2 * gb.i0, m.h2 * gx.i1, m.h2 * gb.i1},
                {m.h2 * ga.i1, m.h2 * gx.i1, m.h2 * ga.i2, m.h2 * gx.i2},
                {m.h2 * gx.i1, m.h2 * gb.i1, m.h2 * gx.i2, m.h2 * gb.i2},
            };
            double L[4][4];
            cholesky(M, L);
            for (int c = 0; c < 3; ++c) {
                xi[c] = L[0][0] * z1[c];
                xib[c] = L[1][0] * z1[c] + L[1][1] * z2[c];
                nn[c] = L[2][0] * z1[c] + L[2][1] * z2[c] + L[2][2] * z3[c];
                nnb[c] = L[3][0] * z1[c] + L[3][1] * z2[c] + L[3][2] * z3[c] + L[3][3] * z4[c];
            }
        }
        xi = project(m.proj, xi);
        xib = project(m.proj, xib);
        nn = project(m.proj, nn);
        nnb = project(m.proj, nnb);

        std::array<cplx, 3> xold, xbold;
        for (int c = 0; c < 3; ++c) {
            xold[c] = x_.at(c, m.k);
            xbold[c] = xbar_.at(c, m.k);
        }
        std::array<cplx, 3> xnew, xbnew, knew{}, kbnew{};
        for (int c = 0; c < 3; ++c) {
            xnew[c] = e1 * xold[c] + xi[c];
            xbnew[c] = e2 * xbold[c] + xib[c];
            if (K) knew[c] = e1 * (K->at(c, m.k) + dt * xold[c]) + nn[c];
            if (K_bar) kbnew[c] = e2 * (K_bar->at(c, m.k) + dt * xbold[c]) + nnb[c];
        }
        set_mode(x_, m.k, xnew);
        set_mode(xbar_, m.k, xbnew);
        if (K) set_mode(*K, m.k, knew);
        if (K_bar) set_mode(*K_bar, m.k, kbnew);
    }
    t_ += dt;
}

void OUState::advance(double dt) {
    if (dt <= 0.0) throw std::invalid_argument("OUState: dt must be > 0");
    SpectralField xi = SpectralField::vector(N_);
    SpectralField xib = SpectralField::vector(N_);
    draw_increments(dt, xi, xib);
    for (auto& m : modes_) {
        const double e1 = std::exp(-m.lambda * dt);
        const double e2 = std::exp(-m.lambda_bar * dt);
        std::array<cplx, 3> vi, vb;
        for (int c = 0; c < 3; ++c) {
            vi[c] = xi.at(c, m.k);
            vb[c] = xib.at(c, m.k);
        }
        add_mode(x_, m.k, vi, e1);
        add_mode(xbar_, m.k, vb, e2);
    }
    t_ += dt;
}

void OUState::check_invariants(double tol) const {
    for (const SpectralField* f : {&x_, &xbar_}) {
        if (f->hermitian_defect() > tol) throw std::runtime_error("OUState: field is not real");
        for (int c = 0; c < 3; ++c)
            if (std::abs(f->at(c, {0, 0, 0})) != 0.0) throw std::runtime_error("OUState: zero mode nonzero");
        const double div = divergence_max(*f);
        if (div > tol * std::max(1.0, f->max_abs()))
            throw std::runtime_error("OUState: field is not divergence-free");
    }
}

void OUState::dump_csv(std::ostream& os) const {
    os << "k1,k2,k3,comp,re,im,process\n";
    char buf[160];
    for (const auto& m : modes_) {
        for (int c = 0; c < 3; ++c) {
            const cplx a = x_.at(c, m.k);
            std::snprintf(buf, sizeof(buf), "%d,%d,%d,%d,%.17g,%.17g,approx\n", m.k.k1, m.k.k2, m.k.k3,
                          c + 1, a.real(), a.imag());
            os << buf;
            const cplx b = xbar_.at(c, m.k);
            std::snprintf(buf, sizeof(buf), "%d,%d,%d,%d,%.17g,%.17g,exact\n", m.k.k1, m.k.k2, m.k.k3,
                          c + 1, b.real(), b.imag());
            os << buf;
        }
    }
}

}  // namespace nslab
