#include <doctest.h>

#include "nslab/schauder.hpp"
#include "nslab/spectral_ops.hpp"
#include "oracles.hpp"

using namespace nslab;

namespace {
const double kC = std::pow(2.0 * M_PI, -1.5);
}

TEST_CASE("to_physical of a single mode is the plane-wave sample") {
    SpectralField u = SpectralField::scalar(4);
    u.at({1, 0, 0}) = 1.0;
    u.at({-1, 0, 0}) = 1.0;  // conj for a real field
    const int M = 16;
    GridField g = to_physical(u, M);
    for (int m = 0; m < M; ++m) {
        const double x = 2.0 * M_PI * m / M;
        const double expect = 2.0 * kC * std::cos(x);
        CHECK(std::abs(g.values[std::size_t(m) * M * M] - expect) < 1e-13);
    }
    SpectralField back = to_spectral(g, 4, FieldRole::scalar);
    CHECK(oracles::max_diff(back, u) < 1e-12);
}

TEST_CASE("zero field and zero-mean handling") {
    SpectralField u = SpectralField::scalar(3);
    GridField g = to_physical(u, 8);
    CHECK(g.max_abs() == 0.0);

    GridField ones(FieldRole::scalar, 8);
    std::fill(ones.values.begin(), ones.values.end(), 1.0);
    double discarded = 0.0;
    SpectralField s = to_spectral(ones, 3, FieldRole::scalar, &discarded);
    CHECK(s.max_abs() == 0.0);
    CHECK(discarded > 0.1);  // the constant carried a nonzero mean
}

TEST_CASE("round trip matches the direct DFT oracle at N=8") {
    SpectralField u = random_field(8, 42, 1.0);
    GridField g = to_physical(u, product_grid_size(8));
    SpectralField back = to_spectral(g, 8, FieldRole::scalar);
    CHECK(oracles::max_diff(back, u) < 1e-12);

    // spot-check grid values against the direct evaluation
    const int M = g.M;
    for (int probe = 0; probe < 5; ++probe) {
        const int m1 = (7 * probe) % M, m2 = (11 * probe) % M, m3 = (13 * probe) % M;
        const double x1 = 2.0 * M_PI * m1 / M, x2 = 2.0 * M_PI * m2 / M, x3 = 2.0 * M_PI * m3 / M;
        const double direct = oracles::eval_direct(u, 0, x1, x2, x3);
        const double fast = g.values[(std::size_t(m1) * M + m2) * M + m3];
        CHECK(std::abs(direct - fast) < 1e-12);
    }
}

TEST_CASE("to_spectral of a grid delta equals the naive DFT sum") {
    const int N = 2, M = 12;
    GridField g(FieldRole::scalar, M);
    g.values[(std::size_t(3) * M + 5) * M + 7] = 1.0;
    SpectralField u = to_spectral_keep_mean(g, N, FieldRole::scalar);
    const double x1 = 2.0 * M_PI * 3 / M, x2 = 2.0 * M_PI * 5 / M, x3 = 2.0 * M_PI * 7 / M;
    u.box().for_each([&](const Wavevector& k) {
        const cplx expect = std::pow(2.0 * M_PI, 1.5) / (double(M) * M * M) *
                            std::polar(1.0, -(k.k1 * x1 + k.k2 * x2 + k.k3 * x3));
        CHECK(std::abs(u.at(k) - expect) < 1e-12);
    });
}

TEST_CASE("to_physical rejects undersized grids") {
    SpectralField u = SpectralField::scalar(4);
    CHECK_THROWS(to_physical(u, 8));
}

TEST_CASE("leray projection: hand values") {
    SpectralField u = SpectralField::vector(2);
    auto set = [&](Wavevector k, cplx a, cplx b, cplx c) {
        u.at(0, k) = a; u.at(1, k) = b; u.at(2, k) = c;
        u.at(0, k.negated()) = std::conj(a);
        u.at(1, k.negated()) = std::conj(b);
        u.at(2, k.negated()) = std::conj(c);
    };
    set({1, 0, 0}, 1.0, 0.0, 0.0);   // gradient direction: annihilated
    set({0, 1, 0}, 1.0, 0.0, 0.0);   // transverse to k: untouched
    set({1, 1, 0}, 1.0, 0.0, 0.0);
    SpectralField p = leray_project(u);
    CHECK(std::abs(p.at(0, {1, 0, 0})) < 1e-15);
    CHECK(std::abs(p.at(0, {0, 1, 0}) - 1.0) < 1e-15);
    CHECK(std::abs(p.at(0, {1, 1, 0}) - 0.5) < 1e-15);
    CHECK(std::abs(p.at(1, {1, 1, 0}) + 0.5) < 1e-15);
    CHECK(std::abs(p.at(2, {1, 1, 0})) < 1e-15);
}

TEST_CASE("leray projection is idempotent and kills divergence") {
    SpectralField u = random_field(6, 7, 1.0, FieldRole::vector3);
    SpectralField p = leray_project(u);
    SpectralField pp = leray_project(p);
    pp -= p;
    CHECK(pp.max_abs() <= 1e-13 * std::max(1.0, p.max_abs()));
    CHECK(divergence_max(p) <= 1e-12 * u.max_abs());
}

TEST_CASE("divergence of an explicit mode") {
    SpectralField u = SpectralField::vector(3);
    const Wavevector k{1, 2, 0};
    u.at(0, k) = 1.0; u.at(1, k) = 2.0; u.at(2, k) = 3.0;
    u.at(0, k.negated()) = 1.0; u.at(1, k.negated()) = 2.0; u.at(2, k.negated()) = 3.0;
    SpectralField d = divergence(u);
    CHECK(std::abs(d.at(k) - cplx(0.0, 5.0)) < 1e-14);  // i (1*1 + 2*2 + 0*3)
    CHECK(std::abs(divergence(SpectralField::vector(3)).max_abs()) == 0.0);
}

TEST_CASE("dealiased product: plane waves convolve exactly") {
    SpectralField u = SpectralField::scalar(4);
    SpectralField v = SpectralField::scalar(4);
    auto set = [](SpectralField& f, Wavevector k, cplx val) {
        f.at(k) = val;
        f.at(k.negated()) = std::conj(val);
    };
    set(u, {1, 0, 0}, cplx(0.5, 0.25));
    set(v, {0, 2, 0}, cplx(-0.75, 1.0));
    SpectralField w = dealiased_product(u, v);
    SpectralField expect = oracles::convolve_naive(u, v);
    CHECK(oracles::max_diff(w, expect) < 1e-13);

    SpectralField zero = SpectralField::scalar(4);
    CHECK(dealiased_product(u, zero).max_abs() == 0.0);
}

TEST_CASE("dealiased product agrees with the naive convolution oracle at N=4") {
    for (int trial = 0; trial < 3; ++trial) {
        SpectralField u = random_field(4, 100 + trial, 0.8);
        SpectralField v = random_field(4, 200 + trial, 1.2);
        SpectralField fast = dealiased_product(u, v);
        SpectralField slow = oracles::convolve_naive(u, v);
        CHECK(oracles::max_diff(fast, slow) < 1e-12);
        CHECK(fast.hermitian_defect() < 1e-13);
    }
}
