#include <doctest.h>

#include "nslab/schauder.hpp"
#include "nslab/trees.hpp"

using namespace nslab;

namespace {
const double kZConv = std::pow(2.0 * M_PI, 1.5);  // constant c <-> coeff(0) = (2pi)^{3/2} c

struct Stats {
    double sum = 0.0, sum2 = 0.0;
    int n = 0;
    void add(double v) { sum += v; sum2 += v * v; ++n; }
    double mean() const { return sum / n; }
    double se() const { return std::sqrt(std::max(0.0, sum2 / n - mean() * mean()) / n); }
};
}  // namespace

TEST_CASE("wick pair: zero input gives minus the constant; D_j kills it") {
    auto ms = MultiplierSet::make(Preset::finite_difference, 1.0, 0.0);
    const double eps = 1.0 / 3.0;
    const int N = 3;
    auto [c0, c0b] = compute_C0(eps, ms);
    SpectralField zero = SpectralField::vector(N);
    auto W = wick_pair(zero, c0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            CHECK(W[i][j].at({0, 0, 0}).real() == doctest::Approx(-kZConv * c0[i][j]).epsilon(1e-13));
            SpectralField d = apply_Deps(W[i][j], 0, eps, ms);
            CHECK(d.max_abs() == 0.0);  // derivative of a constant
        }
}

TEST_CASE("wick pair is centered: MC mean of u1<>u1 within 3 sigma of zero") {
    auto ms = MultiplierSet::make(Preset::finite_difference, 1.0, 0.0);
    const double eps = 1.0 / 3.0;
    const int N = 3;
    auto [c0, c0b] = compute_C0(eps, ms);
    OUState st(N, eps, ms, 314);
    Stats s00, s12, smode;
    const int nsamples = 2500;
    for (int s = 0; s < nsamples; ++s) {
        st.init_stationary();
        auto W = wick_pair(st.x(), c0);
        s00.add(W[0][0].at({0, 0, 0}).real());
        s12.add(W[1][2].at({0, 0, 0}).real());
        smode.add(W[0][0].at({1, 1, 0}).real());
    }
    CHECK(std::abs(s00.mean()) < 3.0 * s00.se());
    CHECK(std::abs(s12.mean()) < 3.0 * s12.se());
    CHECK(std::abs(smode.mean()) < 3.0 * smode.se());
}

TEST_CASE("solve_K: exact single-mode Duhamel, zero start, linearity") {
    auto ms = MultiplierSet::make(Preset::finite_difference, 1.0, 0.0);
    const double eps = 0.25;
    const int N = 4;
    const Wavevector k0{1, 1, 0};
    SpectralField u1 = SpectralField::vector(N);
    u1.at(2, k0) = cplx(0.4, -0.3);
    u1.at(2, k0.negated()) = std::conj(u1.at(2, k0));
    u1 = leray_project(u1);

    const double dt = 1e-3, T = 0.2;
    SpectralField K = SpectralField::vector(N);
    CHECK(K.max_abs() == 0.0);
    for (int n = 0; n < int(T / dt + 0.5); ++n) etd1_step(K, u1, dt, eps, ms, false);
    const double lam = heat_rate(k0, eps, ms);
    const cplx expect = (-std::expm1(-lam * T)) / lam * u1.at(2, k0);  // frozen source: exact
    CHECK(std::abs(K.at(2, k0) - expect) < 1e-12);

    SpectralField K2 = SpectralField::vector(N);
    SpectralField u2x = u1;
    u2x *= 2.5;
    for (int n = 0; n < int(T / dt + 0.5); ++n) etd1_step(K2, u2x, dt, eps, ms, false);
    SpectralField lin = K;
    lin *= 2.5;
    lin -= K2;
    CHECK(lin.max_abs() < 1e-12);
}

TEST_CASE("solve_u2: zero noise stays zero; frozen-pair Duhamel oracle") {
    auto ms = MultiplierSet::make(Preset::galerkin, 1.0, 0.0);
    const double eps = 0.3;
    const int N = 4;
    auto [c0, c0b] = compute_C0(eps, ms);

    // zero noise
    SpectralField zero = SpectralField::vector(N);
    auto Wz = wick_pair(zero, Tensor33{});
    SpectralField d = tree_drift(Wz, false, eps, ms, false);
    CHECK(d.max_abs() == 0.0);

    // frozen single-mode field: quadratic source sits at 0 and +-2 k0,
    // compare against the hand-assembled Duhamel value at 2 k0
    const Wavevector k0{1, 0, 0};
    const Wavevector k2{2, 0, 0};
    SpectralField u1 = SpectralField::vector(N);
    u1.at(1, k0) = cplx(0.35, 0.15);
    u1.at(2, k0) = cplx(-0.2, 0.45);
    for (int c = 0; c < 3; ++c) u1.at(c, k0.negated()) = std::conj(u1.at(c, k0));

    const double dt = 1e-3, T = 0.1;
    SpectralField u2 = SpectralField::vector(N);
    auto W = wick_pair(u1, c0);
    SpectralField drift = tree_drift(W, false, eps, ms, false);
    for (int n = 0; n < int(T / dt + 0.5); ++n) etd1_step(u2, drift, dt, eps, ms, false);

    const double lam = heat_rate(k2, eps, ms);
    const Projector p = Projector::at(k2);
    const double norm = std::pow(2.0 * M_PI, -1.5);
    for (int i = 0; i < 3; ++i) {
        cplx v = 0.0;
        for (int i1 = 0; i1 < 3; ++i1)
            for (int j = 0; j < 3; ++j) {
                const cplx w = norm * u1.at(i1, k0) * u1.at(j, k0);  // convolution at 2 k0
                const cplx dj = double(k2[j]) * ms.eval_g(eps * k2[j]);
                v += -0.5 * p(i, i1) * dj * w;
            }
        const cplx expect = v * (-std::expm1(-lam * T)) / lam;
        CHECK(std::abs(u2.at(i, k2) - expect) < 1e-8);
    }
}

TEST_CASE("dt refinement is first order (Richardson ratio)") {
    auto ms = MultiplierSet::make(Preset::galerkin, 1.0, 0.0);
    const double eps = 0.3;
    const int N = 3;
    // deterministic, smoothly time-varying u1 path so the three resolutions
    // see the same forcing
    SpectralField base = SpectralField::vector(N);
    base.at(1, {1, 0, 0}) = cplx(0.5, 0.2);
    base.at(1, {-1, 0, 0}) = std::conj(base.at(1, {1, 0, 0}));
    base.at(0, {0, 1, 1}) = cplx(-0.3, 0.4);
    base.at(0, {0, -1, -1}) = std::conj(base.at(0, {0, 1, 1}));
    base = leray_project(base);

    const double T = 0.1;
    auto solve = [&](double dt) {
        SpectralField u2 = SpectralField::vector(N);
        double t = 0.0;
        for (int n = 0; n < int(T / dt + 0.5); ++n) {
            SpectralField u1 = base;
            u1 *= std::cos(7.0 * t);
            auto W = wick_pair(u1, Tensor33{});
            SpectralField drift = tree_drift(W, false, eps, ms, false);
            etd1_step(u2, drift, dt, eps, ms, false);
            t += dt;
        }
        return u2;
    };
    SpectralField a = solve(2e-3), b = solve(1e-3), c = solve(5e-4);
    SpectralField e1 = a; e1 -= b;
    SpectralField e2 = b; e2 -= c;
    const double ratio = e1.max_abs() / e2.max_abs();
    CHECK(ratio >= 1.7);
    CHECK(ratio <= 2.3);
}

TEST_CASE("wick u1u2 counterterm wiring") {
    auto sym = MultiplierSet::make(Preset::galerkin, 1.0, 1.0);
    const double eps = 0.3;
    const int N = 3;
    // a = b: the counterterm tensor is identically zero, plain product
    auto [c, ct] = compute_C(eps, 0.7, sym);
    Tensor333 S{};
    for (int i = 0; i < 3; ++i)
        for (int m = 0; m < 3; ++m)
            for (int j = 0; j < 3; ++j) S[i][m][j] = c[i][m][j] + ct[i][m][j];
    CHECK(max_abs(c) < 1e-15);
    CHECK(max_abs(ct) < 1e-15);

    SpectralField u1 = random_field(N, 5, 1.0, FieldRole::vector3);
    SpectralField u2 = random_field(N, 6, 1.0, FieldRole::vector3);
    auto W = wick_u1u2(u1, u2, S);
    SpectralField plain = dealiased_product(u2.component(1), u1.component(2));
    SpectralField diff = W[1][2];
    diff -= plain;
    CHECK(diff.max_abs() == 0.0);
}

TEST_CASE("continuum preset: approximate and exact trees coincide") {
    auto cont = MultiplierSet::make(Preset::continuum, 1.0, 0.0);
    OUState noise(3, 0.3, cont, 2024);
    noise.init_stationary();
    TreeEvolution approx(&noise, /*exact_side=*/false);
    TreeEvolution exact(&noise, /*exact_side=*/true);
    for (int n = 0; n < 20; ++n) advance_trees(noise, 5e-3, &approx, &exact);
    SpectralField d2 = approx.u2();
    d2 -= exact.u2();
    SpectralField d3 = approx.u3();
    d3 -= exact.u3();
    SpectralField dK = approx.K();
    dK -= exact.K();
    CHECK(d2.max_abs() < 1e-10);
    CHECK(d3.max_abs() < 1e-10);
    CHECK(dK.max_abs() < 1e-10);
}

TEST_CASE("pi0_diamond for P D K: centered within MC error, exact side plain") {
    auto ms = MultiplierSet::make(Preset::finite_difference, 1.0, 0.0);
    const double eps = 1.0 / 3.0;
    const int N = 3;
    const DyadicPartition dp = DyadicPartition::for_truncation(N);
    const double dt = 5e-3, T = 0.25;
    auto [c3, c3t] = compute_C3(eps, T, ms, dp);

    const int i = 0, i1 = 0, j = 1, j1 = 1;
    OUState st(N, eps, ms, 808);
    Stats centered;
    const int nsamples = 1200;
    for (int s = 0; s < nsamples; ++s) {
        st.init_stationary();
        SpectralField K = SpectralField::vector(N);
        for (int n = 0; n < int(T / dt + 0.5); ++n) st.advance_joint(dt, &K, nullptr);
        SpectralField f = pi0_diamond_pdk(K, st.x(), i, i1, j, j1, c3[i][i1][j1][j], eps, ms, dp, false);
        centered.add(f.at({0, 0, 0}).real() / kZConv);
    }
    CHECK(c3[i][i1][j1][j] != 0.0);
    CHECK(std::abs(centered.mean()) < 3.0 * centered.se());
    // without the subtraction the mean is visibly the constant
    CHECK(std::abs(centered.mean() + c3[i][i1][j1][j]) > 3.0 * centered.se());

    // u1 = 0: only the constant remains
    SpectralField K0 = SpectralField::vector(N);
    SpectralField zero = SpectralField::vector(N);
    SpectralField only_const = pi0_diamond_pdk(K0, zero, i, i1, j, j1, 0.5, eps, ms, dp, false);
    CHECK(only_const.at({0, 0, 0}).real() == doctest::Approx(-kZConv * 0.5));
}

TEST_CASE("pi0_diamond for u3 requires the partial-counterterm opt-in") {
    auto ms = MultiplierSet::make(Preset::finite_difference, 1.0, 0.0);
    const int N = 3;
    const DyadicPartition dp = DyadicPartition::for_truncation(N);
    SecondOrderTable so = compute_second_order(1.0 / 3.0, 0.5, ms, dp);
    SpectralField u3 = random_field(N, 11, 1.0, FieldRole::vector3);
    SpectralField u1 = random_field(N, 12, 1.0, FieldRole::vector3);
    SpectralField u2 = random_field(N, 13, 1.0, FieldRole::vector3);
    Tensor333 S{};
    CHECK_THROWS(pi0_diamond_u3(u3, u1, u2, 0, 0, S, so, dp, false, false));
    auto res = pi0_diamond_u3(u3, u1, u2, 0, 0, S, so, dp, false, true);
    CHECK(res.partial_counterterm);
    auto exact = pi0_diamond_u3(u3, u1, u2, 0, 0, S, so, dp, true, false);
    CHECK(!exact.partial_counterterm);
}
