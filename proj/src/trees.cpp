#include "nslab/trees.hpp"

#include <cmath>

namespace nslab {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
const double kConstToZeroMode = std::pow(kTwoPi, 1.5);  // subtracting c means coeff(0) -= (2pi)^{3/2} c

inline double phi1(double z) {
    if (z < 1e-8) return 1.0 - 0.5 * z;
    return -std::expm1(-z) / z;
}
}  // namespace

void etd1_step(SpectralField& v, const SpectralField& drift, double dt, double eps,
               const MultiplierSet& ms, bool continuum_heat) {
    v.box().for_each([&](const Wavevector& k) {
        double lam;
        if (continuum_heat) {
            lam = k.norm2();
        } else {
            lam = heat_rate(k, eps, ms);
        }
        if (std::isinf(lam)) {
            for (int c = 0; c < v.components(); ++c) v.at(c, k) = 0.0;
            return;
        }
        const double decay = std::exp(-lam * dt);
        const double w = dt * phi1(lam * dt);
        for (int c = 0; c < v.components(); ++c) v.at(c, k) = decay * v.at(c, k) + w * drift.at(c, k);
    });
}

std::array<std::array<SpectralField, 3>, 3> wick_pair(const SpectralField& u1, const Tensor33& c0) {
    const int N = u1.N();
    const int M = product_grid_size(N);
    const auto g = component_grids(u1, M);
    std::array<std::array<SpectralField, 3>, 3> W;
    for (int i = 0; i < 3; ++i) {
        for (int j = i; j < 3; ++j) {
            SpectralField p = grid_product_to_spectral(g[i], g[j], N);
            p.at({0, 0, 0}) -= kConstToZeroMode * c0[i][j];
            W[i][j] = p;
            if (j != i) W[j][i] = W[i][j];
        }
    }
    return W;
}

std::array<std::array<SpectralField, 3>, 3> wick_u1u2(const SpectralField& u1, const SpectralField& u2,
                                                      const Tensor333& S) {
    const int N = u1.N();
    const int M = product_grid_size(N);
    const auto g1 = component_grids(u1, M);
    const auto g2 = component_grids(u2, M);
    std::array<std::array<SpectralField, 3>, 3> W;
    for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) {
            SpectralField f = grid_product_to_spectral(g2[p], g1[q], N);
            for (int m = 0; m < 3; ++m) {
                const double s = S[p][m][q];
                if (s != 0.0) f.axpy(s, u1.component(m));
            }
            W[p][q] = f;
        }
    return W;
}

SpectralField tree_drift(const std::array<std::array<SpectralField, 3>, 3>& W, bool symmetrize,
                         double eps, const MultiplierSet& ms, bool continuum_D) {
    const int N = W[0][0].N();
    SpectralField out = SpectralField::vector(N);
    const MultiplierSet cont = MultiplierSet::make(Preset::continuum, ms.a, ms.b, ms.L0);
    const MultiplierSet& dms = continuum_D ? cont : ms;
    out.box().for_each([&](const Wavevector& k) {
        if (k.is_zero()) return;
        cplx d[3];
        for (int m = 0; m < 3; ++m) d[m] = double(k[m]) * dms.eval_g(eps * k[m]);
        cplx v[3];
        for (int i1 = 0; i1 < 3; ++i1) {
            cplx s = 0.0;
            for (int j = 0; j < 3; ++j) {
                cplx entry = W[i1][j].at(k);
                if (symmetrize) entry += W[j][i1].at(k);
                s += d[j] * entry;
            }
            v[i1] = s;
        }
        const Projector p = Projector::at(k);
        for (int i = 0; i < 3; ++i) {
            cplx s = 0.0;
            for (int i1 = 0; i1 < 3; ++i1) s += p(i, i1) * v[i1];
            out.at(i, k) = -0.5 * s;
        }
    });
    return out;
}

TreeEvolution::TreeEvolution(OUState* noise, bool exact_side, bool evolve_u3)
    : noise_(noise), exact_side_(exact_side), evolve_u3_(evolve_u3),
      u2_(SpectralField::vector(noise->x().N())),
      u3_(SpectralField::vector(noise->x().N())),
      K_(SpectralField::vector(noise->x().N())) {
    const auto c0 = compute_C0(noise_->eps(), noise_->multipliers());
    c0_ = exact_side_ ? c0.second : c0.first;
}

const SpectralField& TreeEvolution::u1() const { return exact_side_ ? noise_->x_bar() : noise_->x(); }

void TreeEvolution::step_trees(double dt) {
    const double eps = noise_->eps();
    const MultiplierSet& ms = noise_->multipliers();
    const SpectralField& x = u1();

    // u2 source: -1/2 sum P D_j (u1^{i1} <> u1^{j})
    auto Wpair = wick_pair(x, c0_);
    SpectralField drift2 = tree_drift(Wpair, /*symmetrize=*/false, eps, ms, exact_side_);

    if (evolve_u3_) {
        // u3 source: -1/2 sum P D_j (u1^{i1} <> u2^{j} + u2^{i1} <> u1^{j})
        Tensor333 S{};
        if (!exact_side_) {
            auto [c, ct] = compute_C(eps, t_, ms);
            for (int i = 0; i < 3; ++i)
                for (int m = 0; m < 3; ++m)
                    for (int j = 0; j < 3; ++j) S[i][m][j] = c[i][m][j] + ct[i][m][j];
        }
        auto Wmix = wick_u1u2(x, u2_, S);
        SpectralField drift3 = tree_drift(Wmix, /*symmetrize=*/true, eps, ms, exact_side_);
        etd1_step(u3_, drift3, dt, eps, ms, exact_side_);
    }

    etd1_step(u2_, drift2, dt, eps, ms, exact_side_);
    t_ += dt;
}

void advance_trees(OUState& noise, double dt, TreeEvolution* approx, TreeEvolution* exact) {
    if (approx) approx->step_trees(dt);
    if (exact) exact->step_trees(dt);
    noise.advance_joint(dt, approx ? &approx->K_mut() : nullptr, exact ? &exact->K_mut() : nullptr);
}

SpectralField pi0_diamond_pdk(const SpectralField& K, const SpectralField& u1, int i, int i1, int j,
                              int j1, double c3, double eps, const MultiplierSet& ms,
                              const DyadicPartition& dp, bool continuum_D) {
    const MultiplierSet cont = MultiplierSet::make(Preset::continuum, ms.a, ms.b, ms.L0);
    SpectralField dk = apply_Deps(K.component(j), j, eps, continuum_D ? cont : ms);
    SpectralField a = apply_leray_entry(dk, i, i1);
    SpectralField out = pi0(a, u1.component(j1), dp);
    out.at({0, 0, 0}) -= kConstToZeroMode * c3;
    return out;
}

Pi0DiamondResult pi0_diamond_u3(const SpectralField& u3, const SpectralField& u1,
                                const SpectralField& u2, int i, int j, const Tensor333& S,
                                const SecondOrderTable& so, const DyadicPartition& dp,
                                bool exact_side, bool allow_partial) {
    Pi0DiamondResult res{pi0(u3.component(i), u1.component(j), dp), false};
    if (exact_side) return res;  // no subtraction on the exact-semigroup side here
    if (!allow_partial)
        throw std::runtime_error(
            "pi0_diamond_u3: counterterm C1 = C11 + C12 has no closed form for C12; "
            "pass allow_partial to subtract the C11 family only");
    // C11 half of phi1 + C1: the exact zeroth chaos of the u31 pairing.  The
    // u3 - u31 half (the C12 family) stays unsubtracted.
    const double c1_partial = so.mean_pi0_u31[i][j];
    res.field.at({0, 0, 0}) -= kConstToZeroMode * c1_partial;
    for (int m = 0; m < 3; ++m)
        if (S[i][m][j] != 0.0) res.field.axpy(S[i][m][j], u2.component(m));
    res.partial_counterterm = true;
    return res;
}

}  // namespace nslab
