#include "nslab/solver.hpp"

#include <cmath>

#include "nslab/spectral_ops.hpp"
#include "nslab/trees.hpp"

namespace nslab {

namespace {

Tensor333 counterterm_tensor(double eps, double t, const MultiplierSet& ms) {
    auto [c, ct] = compute_C(eps, t, ms);
    Tensor333 S{};
    for (int i = 0; i < 3; ++i)
        for (int i1 = 0; i1 < 3; ++i1)
            for (int j = 0; j < 3; ++j)
                S[i][i1][j] = c[i][i1][j] + ct[i][i1][j] + c[j][i1][i] + ct[j][i1][i];
    return S;
}

inline double phi1(double z) {
    if (z < 1e-8) return 1.0 - 0.5 * z;
    return -std::expm1(-z) / z;
}

bool norm_is_bad(double x) { return !std::isfinite(x); }

}  // namespace

SpectralField nonlinear_drift(const SpectralField& u, const Tensor333& S, double eps,
                              const MultiplierSet& ms, bool continuum_ops) {
    const int N = u.N();
    const int M = product_grid_size(N);
    const auto g = component_grids(u, M);
    std::array<std::array<SpectralField, 3>, 3> prod;
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            prod[i][j] = grid_product_to_spectral(g[i], g[j], N);
            if (j != i) prod[j][i] = prod[i][j];
        }

    const MultiplierSet cont = MultiplierSet::make(Preset::continuum, ms.a, ms.b, ms.L0);
    const MultiplierSet& dms = continuum_ops ? cont : ms;
    SpectralField out = SpectralField::vector(N);
    out.box().for_each([&](const Wavevector& k) {
        if (k.is_zero()) return;
        cplx d[3];
        for (int m = 0; m < 3; ++m) d[m] = double(k[m]) * dms.eval_g(eps * k[m]);
        cplx v[3];
        for (int i = 0; i < 3; ++i) {
            cplx s = 0.0;
            for (int j = 0; j < 3; ++j) {
                cplx entry = prod[i][j].at(k);
                for (int i1 = 0; i1 < 3; ++i1) {
                    const double w = S[i][i1][j];
                    if (w != 0.0) entry += w * u.at(i1, k);
                }
                s += d[j] * entry;
            }
            v[i] = s;
        }
        const Projector p = Projector::at(k);
        for (int i0 = 0; i0 < 3; ++i0) {
            cplx s = 0.0;
            for (int i = 0; i < 3; ++i) s += p(i0, i) * v[i];
            out.at(i0, k) = -0.5 * s;
        }
    });
    return out;
}

SpectralField default_initial_field(int N, double z, const DyadicPartition& dp) {
    SpectralField u0 = SpectralField::vector(N);
    // A fixed low-mode swirl; projected and scaled to unit C^{-z} norm.
    auto set = [&](Wavevector k, int comp, cplx v) {
        u0.at(comp, k) = v;
        u0.at(comp, k.negated()) = std::conj(v);
    };
    set({1, 0, 0}, 1, cplx(0.7, 0.2));
    set({1, 0, 0}, 2, cplx(-0.3, 0.4));
    set({0, 1, 0}, 0, cplx(0.5, -0.6));
    set({0, 1, 0}, 2, cplx(0.2, 0.1));
    set({0, 0, 1}, 0, cplx(-0.4, 0.3));
    set({0, 0, 1}, 1, cplx(0.6, 0.5));
    set({1, 1, 0}, 2, cplx(0.25, -0.35));
    set({1, 0, 1}, 1, cplx(-0.15, 0.45));
    u0 = leray_project(u0);
    u0.clamp_zero_mode();
    const double n = hoelder_norm(u0, -z, dp);
    u0 *= 1.0 / n;
    return u0;
}

CoupledSolver::CoupledSolver(const SimConfig& cfg, const SpectralField& u0, const DyadicPartition& dp)
    : cfg_(cfg), ms_(cfg.multipliers()), dp_(&dp),
      noise_(cfg.N, cfg.eps, ms_, cfg.seed),
      u_(u0), ubar_(u0),
      xi_(SpectralField::vector(cfg.N)), xib_(SpectralField::vector(cfg.N)) {
    noise_.init_stationary();
}

void CoupledSolver::step() {
    const double dt = cfg_.dt;
    static const Tensor333 kZero{};
    SpectralField drift_u = SpectralField::vector(cfg_.N);
    SpectralField drift_b = SpectralField::vector(cfg_.N);
    if (cfg_.nonlinearity) {
        const Tensor333 S = cfg_.counterterms ? counterterm_tensor(cfg_.eps, t_, ms_) : Tensor333{};
        drift_u = nonlinear_drift(u_, S, cfg_.eps, ms_, /*continuum_ops=*/false);
        drift_b = nonlinear_drift(ubar_, kZero, cfg_.eps, ms_, /*continuum_ops=*/true);
    }
    noise_.draw_increments(dt, xi_, xib_);
    u_.box().for_each([&](const Wavevector& k) {
        const double lam = heat_rate(k, cfg_.eps, ms_);
        const double lamb = k.norm2();
        if (std::isinf(lam)) {
            for (int c = 0; c < 3; ++c) u_.at(c, k) = 0.0;
        } else {
            const double e1 = std::exp(-lam * dt);
            const double w1 = dt * phi1(lam * dt);
            for (int c = 0; c < 3; ++c) u_.at(c, k) = e1 * u_.at(c, k) + w1 * drift_u.at(c, k) + xi_.at(c, k);
        }
        const double e2 = std::exp(-lamb * dt);
        const double w2 = dt * phi1(lamb * dt);
        for (int c = 0; c < 3; ++c)
            ubar_.at(c, k) = e2 * ubar_.at(c, k) + w2 * drift_b.at(c, k) + xib_.at(c, k);
    });
    t_ += dt;
}

namespace {

// C^{-z} norms of u, u - u_ref and (optionally) u_ref from one pass over the
// block grids (the difference grids come free once both evaluations exist).
struct NormTriple {
    double u = 0.0, uref = 0.0, diff = 0.0;
};

NormTriple fused_norms(const SpectralField& u, const SpectralField& ub, double z,
                       const DyadicPartition& dp, bool want_ref_norm) {
    const int M = product_grid_size(u.N());
    double acc_u[3] = {0, 0, 0}, acc_b[3] = {0, 0, 0}, acc_d[3] = {0, 0, 0};
    for (int j = -1; j <= dp.j_max(); ++j) {
        const double w = std::pow(2.0, -z * j);
        SpectralField bu = lp_block(u, j, dp);
        SpectralField bd = lp_block(ub, j, dp);
        bd -= bu;  // block of u_ref - u; its sup is the diff block sup
        for (int comp = 0; comp < 3; ++comp) {
            GridField gu = to_physical(bu.component(comp), M);
            GridField gd = to_physical(bd.component(comp), M);
            double mu = 0.0, mb = 0.0, md = 0.0;
            for (std::size_t i = 0; i < gu.points(); ++i) {
                mu = std::max(mu, std::abs(gu.values[i]));
                md = std::max(md, std::abs(gd.values[i]));
                if (want_ref_norm) mb = std::max(mb, std::abs(gu.values[i] + gd.values[i]));
            }
            acc_u[comp] = std::max(acc_u[comp], w * mu);
            acc_b[comp] = std::max(acc_b[comp], w * mb);
            acc_d[comp] = std::max(acc_d[comp], w * md);
        }
    }
    NormTriple out;
    for (int c = 0; c < 3; ++c) {
        out.u += acc_u[c];
        out.uref += acc_b[c];
        out.diff += acc_d[c];
    }
    return out;
}

// Evolve the coupled pair, record norms every dt, stop at the horizon or when
// the tracked field's C^{-z} norm reaches L (tau_L is capped at L too).
CoupledResult drive(const SimConfig& cfg, bool track_reference) {
    DyadicPartition dp = DyadicPartition::for_truncation(cfg.N);
    SpectralField u0 = default_initial_field(cfg.N, cfg.z, dp);
    CoupledSolver solver(cfg, u0, dp);

    CoupledResult res;
    auto record = [&](double t) {
        const NormTriple n = fused_norms(solver.u(), solver.u_ref(), cfg.z, dp, track_reference);
        res.approx.times.push_back(t);
        res.approx.norms.push_back(n.u);
        res.reference.times.push_back(t);
        res.reference.norms.push_back(n.uref);
        res.diff_norms.push_back(n.diff);
        return track_reference ? n.uref : n.u;
    };

    double tracked = record(0.0);
    const int steps = int(std::round(cfg.T / cfg.dt));
    res.approx.stop = StopReason::horizon;
    res.reference.stop = StopReason::horizon;
    res.approx.tau = std::min(cfg.T, cfg.L);
    res.reference.tau = res.approx.tau;
    for (int n = 1; n <= steps && solver.time() < cfg.L; ++n) {
        solver.step();
        tracked = record(solver.time());
        if (norm_is_bad(tracked) || tracked >= cfg.L) {
            Trajectory& tr = track_reference ? res.reference : res.approx;
            tr.stop = StopReason::blowup;
            tr.tau = std::min(solver.time(), cfg.L);
            break;
        }
    }
    for (double d : res.diff_norms) res.sup_diff = std::max(res.sup_diff, d);
    res.terminal_diff = res.diff_norms.back();
    return res;
}

}  // namespace

CoupledResult run_coupled(const SimConfig& cfg) { return drive(cfg, /*track_reference=*/false); }

Trajectory run(const SimConfig& cfg) { return drive(cfg, false).approx; }

Trajectory run_reference(const SimConfig& cfg) { return drive(cfg, true).reference; }

}  // namespace nslab
