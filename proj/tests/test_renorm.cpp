#include <doctest.h>

#include <complex>

#include "nslab/renorm.hpp"

using namespace nslab;

namespace {

// Time-integral form of C as a complex lattice sum with the full g multiplier
// (the imaginary part must cancel by k <-> -k symmetry).
std::array<std::array<std::array<std::complex<double>, 3>, 3>, 3> c_oracle_complex(
    double eps, double t, const MultiplierSet& ms) {
    std::array<std::array<std::array<std::complex<double>, 3>, 3>, 3> acc{};
    const double pref = std::pow(2.0 * M_PI, -3.0) / 2.0;
    for (const Wavevector& k : retained_modes(eps, ms)) {
        const double f = ms.f_at(k, eps).value;
        const double h2 = ms.h_at(k, eps) * ms.h_at(k, eps);
        const double lam = k.norm2() * f;
        const double timefac = (-std::expm1(-2.0 * lam * t)) / (2.0 * lam);
        const Projector p = Projector::at(k);
        for (int i = 0; i < 3; ++i)
            for (int i1 = 0; i1 < 3; ++i1)
                for (int j = 0; j < 3; ++j) {
                    std::complex<double> inner = 0.0;
                    for (int i2 = 0; i2 < 3; ++i2)
                        for (int i3 = 0; i3 < 3; ++i3)
                            inner += double(k[i2]) * ms.eval_g(eps * k[i2]) * p(i2, i3) * p(j, i3);
                    acc[i][i1][j] += pref * timefac * h2 / (2.0 * k.norm2() * f) * p(i, i1) * inner;
                }
    }
    return acc;
}

}  // namespace

TEST_CASE("projector trace is the projector itself") {
    for (const Wavevector k : {Wavevector{1, 0, 0}, {1, 2, -1}, {3, 3, 3}}) {
        const Tensor33 t = projector_trace(k);
        const Projector p = Projector::at(k);
        double trace = 0.0;
        for (int i = 0; i < 3; ++i) {
            trace += t[i][i];
            for (int j = 0; j < 3; ++j) {
                CHECK(std::abs(t[i][j] - p(i, j)) < 1e-14);
                // idempotent: (P P)^{ij} = P^{ij}
                double pp = 0.0;
                for (int m = 0; m < 3; ++m) pp += p(i, m) * p(m, j);
                CHECK(std::abs(pp - p(i, j)) < 1e-14);
            }
        }
        CHECK(trace == doctest::Approx(2.0).epsilon(1e-13));
    }
    CHECK(projector_trace({1, 0, 0})[0][0] == doctest::Approx(0.0));
    CHECK(projector_trace({1, 0, 0})[1][1] == doctest::Approx(1.0));
}

TEST_CASE("C0: six-mode hand sum, galerkin degeneracy, parity zeros") {
    auto gal = MultiplierSet::make(Preset::galerkin);
    // eps = 0.8: |eps k| <= 1 keeps exactly the six |k| = 1 modes
    auto [c0, c0b] = compute_C0(0.8, gal);
    const double expect = 2.0 * std::pow(2.0 * M_PI, -3.0);
    CHECK(c0[0][0] == doctest::Approx(expect).epsilon(1e-12));
    CHECK(c0[1][1] == doctest::Approx(expect).epsilon(1e-12));
    CHECK(c0[2][2] == doctest::Approx(expect).epsilon(1e-12));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            CHECK(std::abs(c0[i][j] - c0b[i][j]) == 0.0);  // f = 1 exactly
            if (i != j) CHECK(std::abs(c0[i][j]) < 1e-16);
        }
    auto fd = MultiplierSet::make(Preset::finite_difference);
    auto [f0, f0b] = compute_C0(0.25, fd);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) CHECK(std::abs(f0[i][j]) < 1e-15);
    CHECK(f0[0][0] > f0b[0][0]);  // f_tilde < 1 inflates the variance sum
}

TEST_CASE("C matches the complex time-integral oracle; symmetry kills it for a=b") {
    auto ms = MultiplierSet::make(Preset::galerkin, 1.0, 0.0);
    const double eps = 0.2, t = 1.0;
    auto [c, ct] = compute_C(eps, t, ms);
    auto oracle = c_oracle_complex(eps, t, ms);
    double imag_worst = 0.0, diff_worst = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int i1 = 0; i1 < 3; ++i1)
            for (int j = 0; j < 3; ++j) {
                imag_worst = std::max(imag_worst, std::abs(oracle[i][i1][j].imag()));
                diff_worst = std::max(diff_worst, std::abs(oracle[i][i1][j].real() - c[i][i1][j]));
            }
    CHECK(imag_worst < 1e-10);
    CHECK(diff_worst < 1e-10);
    CHECK(max_abs(c) > 0.0);

    auto sym = MultiplierSet::make(Preset::galerkin, 1.0, 1.0);
    auto [cs, cts] = compute_C(eps, t, sym);
    CHECK(max_abs(cs) < 1e-15);
    CHECK(max_abs(cts) < 1e-15);

    auto [c0t, ct0t] = compute_C(eps, 0.0, ms);
    CHECK(max_abs(c0t) == 0.0);
    CHECK(max_abs(ct0t) == 0.0);
}

TEST_CASE("exact-semigroup first-order constants vanish by parity") {
    // C_bar has the purely imaginary i k^{i2} kernel: the complex lattice sum
    // must cancel to zero.
    auto ms = MultiplierSet::make(Preset::continuum, 1.0, 0.0);
    // emulate with galerkin f=1 shape: use the oracle with g replaced by i
    auto gal = MultiplierSet::make(Preset::galerkin, 1.0, 0.0);
    const double eps = 0.25, t = 0.7;
    std::complex<double> worst = 0.0;
    const double pref = std::pow(2.0 * M_PI, -3.0);
    for (const Wavevector& k : retained_modes(eps, gal)) {
        const double lam = k.norm2();
        const double timefac = (-std::expm1(-2.0 * lam * t)) / (2.0 * lam);
        const Projector p = Projector::at(k);
        std::complex<double> inner = 0.0;
        for (int i2 = 0; i2 < 3; ++i2)
            for (int i3 = 0; i3 < 3; ++i3)
                inner += std::complex<double>(0.0, double(k[i2])) * p(i2, i3) * p(1, i3);
        worst += pref * timefac / (2.0 * lam) * p(0, 0) * inner;
    }
    CHECK(std::abs(worst) < 1e-12);
}

TEST_CASE("C3 identities and degenerate cases") {
    auto ms = MultiplierSet::make(Preset::finite_difference, 1.0, 0.0);
    for (double eps : {0.2, 0.1}) {
        const int kmax = int(std::ceil(ms.h_radius() / eps));
        const DyadicPartition dp = DyadicPartition::for_truncation(kmax);
        for (double t : {0.1, 1.0}) {
            auto [c, ct] = compute_C(eps, t, ms);
            auto [c3, c3t] = compute_C3(eps, t, ms, dp);
            CHECK(c3_identity_defect(c3, c) < 1e-10);
            CHECK(c3_tilde_identity_defect(c3t, ct) < 1e-10);
            CHECK(max_abs(c3) > 0.0);
        }
        const DyadicPartition dp2 = dp;
        auto [z3, z3t] = compute_C3(eps, 0.0, ms, dp2);
        CHECK(max_abs(z3) == 0.0);
        CHECK(max_abs(z3t) == 0.0);
    }
    auto sym = MultiplierSet::make(Preset::finite_difference, 1.0, 1.0);
    const DyadicPartition dp = DyadicPartition::for_truncation(10);
    auto [s3, s3t] = compute_C3(0.2, 1.0, sym, dp);
    CHECK(max_abs(s3) < 1e-15);
    CHECK(max_abs(s3t) < 1e-15);
}

TEST_CASE("Lambda quadrature: symmetry zeros and the lattice-sum limit") {
    auto sym = MultiplierSet::make(Preset::galerkin, 1.0, 1.0);
    auto rsym = compute_Lambda(sym, LambdaKind::Lambda, 1e-8);
    CHECK(rsym.converged);
    CHECK(max_abs(rsym.value) < 1e-12);

    auto ms = MultiplierSet::make(Preset::galerkin, 1.0, 0.0);
    auto lam = compute_Lambda(ms, LambdaKind::Lambda, 1e-8);
    auto lam1 = compute_Lambda(ms, LambdaKind::Lambda1, 1e-8);
    REQUIRE(lam.converged);
    REQUIRE(lam1.converged);
    CHECK(max_abs(lam.value) > 1e-5);

    // parity: all-distinct index triples vanish (every term in the projector
    // contraction is odd in some axis); paired-index entries survive because
    // two odd projector factors combine to an even integrand
    CHECK(std::abs(lam.value[0][1][2]) < 1e-9);
    CHECK(std::abs(lam.value[1][2][0]) < 1e-9);
    CHECK(std::abs(lam1.value[0][1][2]) < 1e-9);
    CHECK(std::abs(lam.value[0][1][0]) > 1e-6);
    CHECK(std::abs(lam.value[0][0][0]) > 1e-5);

    // lattice sums approach the quadrature limit monotonically
    const double T = 5.0;
    std::array<double, 3> dist{};
    const std::array<double, 3> ladder{0.2, 0.1, 0.05};
    for (int e = 0; e < 3; ++e) {
        auto [c, ct] = compute_C(ladder[e], T, ms);
        double d = 0.0, d1 = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int i1 = 0; i1 < 3; ++i1)
                for (int j = 0; j < 3; ++j) {
                    d = std::max(d, std::abs(c[i][i1][j] - lam.value[i][i1][j]));
                    d1 = std::max(d1, std::abs(ct[i][i1][j] - lam1.value[i][i1][j]));
                }
        dist[e] = std::max(d, d1);
    }
    CHECK(dist[1] < dist[0]);
    CHECK(dist[2] < dist[1]);
}

TEST_CASE("second-order table: symmetry, realness, residual decay") {
    auto ms = MultiplierSet::make(Preset::finite_difference, 1.0, 0.0);
    const double eps = 1.0 / 3.0;
    const DyadicPartition dp = DyadicPartition::for_truncation(4);
    SecondOrderTable so = compute_second_order(eps, 1.0, ms, dp);
    CHECK(so.imag_defect < 1e-10);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            CHECK(std::abs(so.C2[i][j] - so.C2[j][i]) < 1e-10);
            CHECK(std::abs(so.C2_bar[i][j] - so.C2_bar[j][i]) < 1e-10);
        }
    CHECK(so.C2[0][0] > 0.0);
    CHECK(so.C2_bar[0][0] > 0.0);

    // envelope decay of the phi residuals: t^rho |phi(t)| maximal at small t
    const double rho = 0.1;
    double prev2 = -1.0, prev11 = -1.0;
    bool first = true;
    for (double t : {0.1, 0.25, 0.5, 1.0}) {
        SecondOrderTable s = compute_second_order(eps, t, ms, dp);
        const double e2 = std::pow(t, rho) * max_abs(s.phi2_residual);
        const double e11 = std::pow(t, rho) * max_abs(s.phi11_residual);
        if (!first) {
            CHECK(e2 <= prev2 * 1.0000001);
            CHECK(e11 <= prev11 * 1.0000001);
        }
        prev2 = e2;
        prev11 = e11;
        first = false;
    }
}

TEST_CASE("renorm table assembles everything") {
    auto ms = MultiplierSet::make(Preset::galerkin, 1.0, 0.0);
    const DyadicPartition dp = DyadicPartition::for_truncation(6);
    RenormTable tbl = compute_renorm_table(0.4, 0.5, ms, dp, true, 1e-6, true);
    CHECK(tbl.has_lambda);
    CHECK(tbl.has_second);
    CHECK(max_abs(tbl.C0) > 0.0);
    CHECK(max_abs(tbl.C) > 0.0);
    CHECK(c3_identity_defect(tbl.C3, tbl.C) < 1e-10);
}
