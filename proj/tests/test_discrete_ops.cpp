#include <doctest.h>

#include "nslab/discrete_ops.hpp"
#include "nslab/schauder.hpp"
#include "nslab/transform.hpp"
#include "oracles.hpp"

using namespace nslab;

TEST_CASE("multiplier f: presets and the box") {
    auto fd = MultiplierSet::make(Preset::finite_difference);
    auto gal = MultiplierSet::make(Preset::galerkin);
    auto cont = MultiplierSet::make(Preset::continuum);

    // closed form at (pi, 0, 0); box widened so the point is inside
    auto wide = MultiplierSet::make(Preset::finite_difference, 1.0, 0.0, 4.0);
    auto v = wide.eval_f({M_PI, 0.0, 0.0});
    CHECK(!v.blocked);
    CHECK(v.value == doctest::Approx(4.0 / (M_PI * M_PI)).epsilon(1e-12));

    for (const auto& ms : {fd, gal, cont}) {
        auto near0 = ms.eval_f({1e-8, 1e-8, 0.0});
        CHECK(!near0.blocked);
        CHECK(near0.value == doctest::Approx(1.0).epsilon(1e-9));
    }
    CHECK(fd.eval_f({fd.L0 + 1.0, 0.0, 0.0}).blocked);
    CHECK(!cont.eval_f({fd.L0 + 1.0, 0.0, 0.0}).blocked);
}

TEST_CASE("multiplier g: limits and closed forms") {
    auto ms = MultiplierSet::make(Preset::galerkin, 1.0, 0.0);
    CHECK(std::abs(ms.eval_g(0.0) - cplx(0.0, 1.0)) < 1e-15);
    CHECK(std::abs(ms.eval_g(1e-9) - cplx(0.0, 1.0)) < 1e-8);

    // a = b: purely imaginary sinc
    auto sym = MultiplierSet::make(Preset::galerkin, 1.5, 1.5);
    for (double y : {0.3, 1.0, 2.0}) {
        const cplx g = sym.eval_g(y);
        CHECK(std::abs(g.real()) < 1e-15);
        CHECK(g.imag() == doctest::Approx(std::sin(1.5 * y) / (1.5 * y)).epsilon(1e-12));
    }

    // a=1, b=0 at y=pi: (e^{i pi} - 1)/pi = -2/pi
    const cplx g = ms.eval_g(M_PI);
    CHECK(g.real() == doctest::Approx(-2.0 / M_PI).epsilon(1e-12));
    CHECK(std::abs(g.imag()) < 1e-15);
}

TEST_CASE("multiplier h: closed-ball indicator") {
    auto ms = MultiplierSet::make(Preset::galerkin);
    CHECK(ms.eval_h({0.0, 0.0, 0.0}) == 1.0);
    CHECK(ms.eval_h({ms.L0, 0.0, 0.0}) == 0.0);
    CHECK(ms.eval_h({ms.L0 / 2.0, 0.0, 0.0}) == 1.0);  // boundary included
}

TEST_CASE("semigroup: identity at t=0, continuum symbol, blocked modes") {
    auto gal = MultiplierSet::make(Preset::galerkin);
    auto cont = MultiplierSet::make(Preset::continuum);
    SpectralField u = random_field(6, 3, 1.0);

    SpectralField same = apply_semigroup(u, 0.0, 0.5, gal);
    CHECK(oracles::max_diff(same, u) == 0.0);

    const double t = 0.37;
    SpectralField pc = apply_semigroup(u, t, 0.5, cont);
    u.box().for_each([&](const Wavevector& k) {
        const cplx expect = std::exp(-t * k.norm2()) * u.at(k);
        CHECK(std::abs(pc.at(k) - expect) < 1e-13);
    });

    // galerkin with eps = 1: modes with any |k_l| > L0 = 2 are blocked,
    // inside the box the symbol is the exact heat kernel
    SpectralField pg = apply_semigroup(u, t, 1.0, gal);
    u.box().for_each([&](const Wavevector& k) {
        const bool blocked = std::abs(k.k1) > 2 || std::abs(k.k2) > 2 || std::abs(k.k3) > 2;
        const cplx expect = blocked ? cplx(0.0, 0.0) : std::exp(-t * k.norm2()) * u.at(k);
        CHECK(std::abs(pg.at(k) - expect) < 1e-13);
    });
}

TEST_CASE("semigroup property P_s P_t = P_{s+t}") {
    auto fd = MultiplierSet::make(Preset::finite_difference);
    SpectralField u = random_field(6, 5, 1.0);
    SpectralField two = apply_semigroup(apply_semigroup(u, 0.2, 0.4, fd), 0.5, 0.4, fd);
    SpectralField one = apply_semigroup(u, 0.7, 0.4, fd);
    CHECK(oracles::max_diff(two, one) < 1e-12);
    CHECK_THROWS(apply_semigroup(u, -1.0, 0.4, fd));
}

TEST_CASE("D_j^eps equals the physical difference quotient") {
    auto ms = MultiplierSet::make(Preset::galerkin, 1.0, 0.0);
    const double eps = 0.3;
    const int N = 5;
    SpectralField u = random_field(N, 9, 1.0);
    for (int axis : {0, 1, 2}) {
        SpectralField d = apply_Deps(u, axis, eps, ms);
        // difference quotient from direct evaluation: (u(x + a eps e) - u(x - b eps e)) / ((a+b) eps)
        for (int probe = 0; probe < 4; ++probe) {
            double x[3] = {0.3 + 0.7 * probe, 1.1, 2.0 - 0.25 * probe};
            double xp[3] = {x[0], x[1], x[2]};
            double xm[3] = {x[0], x[1], x[2]};
            xp[axis] += ms.a * eps;
            xm[axis] -= ms.b * eps;
            const double quo = (oracles::eval_direct(u, 0, xp[0], xp[1], xp[2]) -
                                oracles::eval_direct(u, 0, xm[0], xm[1], xm[2])) /
                               ((ms.a + ms.b) * eps);
            const double spectral = oracles::eval_direct(d, 0, x[0], x[1], x[2]);
            CHECK(spectral == doctest::Approx(quo).epsilon(1e-11));
        }
    }
    // eps -> 0 recovers i k^j on a single mode
    SpectralField e = SpectralField::scalar(N);
    e.at({2, 0, 0}) = 1.0;
    e.at({-2, 0, 0}) = 1.0;
    SpectralField d0 = apply_Deps(e, 0, 1e-9, ms);
    CHECK(std::abs(d0.at({2, 0, 0}) - cplx(0.0, 2.0)) < 1e-7);
    CHECK(apply_Deps(SpectralField::scalar(N), 0, eps, ms).max_abs() == 0.0);
}

TEST_CASE("H_eps: cutoff and idempotence") {
    auto ms = MultiplierSet::make(Preset::galerkin);
    SpectralField u = random_field(6, 13, 1.0);
    // eps small: every retained |eps k| <= L0/2, identity on the truncation
    SpectralField same = apply_Heps(u, 0.05, ms);
    CHECK(oracles::max_diff(same, u) == 0.0);

    const double eps = 0.4;  // cutoff |k| <= 2.5
    SpectralField cut = apply_Heps(u, eps, ms);
    u.box().for_each([&](const Wavevector& k) {
        if (eps * eps * k.norm2() > ms.h_radius() * ms.h_radius())
            CHECK(std::abs(cut.at(k)) == 0.0);
    });
    SpectralField twice = apply_Heps(cut, eps, ms);
    CHECK(oracles::max_diff(twice, cut) == 0.0);
}

TEST_CASE("single-mode semigroup amplitude (schauder probe closed form)") {
    auto fd = MultiplierSet::make(Preset::finite_difference);
    const double eps = 0.25, t = 0.8;
    SpectralField e = SpectralField::scalar(4);
    e.at({3, 0, 0}) = 1.0;
    e.at({-3, 0, 0}) = 1.0;
    SpectralField pt = apply_semigroup(e, t, eps, fd);
    const double f = fd.f_at({3, 0, 0}, eps).value;
    CHECK(std::abs(pt.at({3, 0, 0})) == doctest::Approx(std::exp(-t * 9.0 * f)).epsilon(1e-12));
}

TEST_CASE("schauder ratios stay bounded across the eps ladder") {
    auto fd = MultiplierSet::make(Preset::finite_difference);
    ProbeParams p;
    p.trials = 4;
    p.N = 8;
    const DyadicPartition dp = DyadicPartition::for_truncation(p.N);
    auto reports = schauder_probe(fd, {0.2, 0.1}, p, dp);
    REQUIRE(reports.size() == 10);
    for (const auto& r : reports) {
        CHECK(std::isfinite(r.sup_ratio));
        CHECK(r.sup_ratio > 0.0);
    }
    // contraction case: delta = 0, kappa = 0, continuum preset => ratio <= 1
    auto cont = MultiplierSet::make(Preset::continuum);
    ProbeParams pc;
    pc.delta = 0.0;
    pc.kappa = 0.0;
    pc.trials = 3;
    pc.N = 8;
    auto cr = schauder_probe(cont, {0.1}, pc, dp);
    for (const auto& r : cr)
        if (r.name == "heat_smoothing") CHECK(r.sup_ratio <= 1.0 + 1e-12);
}
