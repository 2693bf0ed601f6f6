#include "nslab/schauder.hpp"

#include <cmath>
#include <random>

#include "nslab/discrete_ops.hpp"

namespace nslab {

SpectralField random_field(int N, std::uint64_t seed, double slope, FieldRole role) {
    SpectralField u(role, N);
    std::mt19937_64 rng(splitmix64(seed ^ 0xabcdef1234567890ULL));
    std::normal_distribution<double> normal(0.0, 1.0);
    u.box().for_each([&](const Wavevector& k) {
        if (!k.is_canonical()) return;
        const double amp = std::pow(k.norm2(), -slope / 2.0);
        for (int c = 0; c < u.components(); ++c) {
            const cplx v = amp * cplx(normal(rng), normal(rng)) * M_SQRT1_2;
            u.at(c, k) = v;
            u.at(c, k.negated()) = std::conj(v);
        }
    });
    return u;
}

std::vector<RatioReport> schauder_probe(const MultiplierSet& ms, const std::vector<double>& eps_list,
                                        const ProbeParams& p, const DyadicPartition& dp) {
    std::vector<RatioReport> out;
    const MultiplierSet cont = MultiplierSet::make(Preset::continuum, ms.a, ms.b, ms.L0);

    for (double eps : eps_list) {
        RatioReport smoothing{"heat_smoothing", eps, 0.0, 0};
        RatioReport time_holder{"heat_time_holder", eps, 0.0, 0};
        RatioReport deriv{"discrete_derivative", eps, 0.0, 0};
        RatioReport deriv_err{"derivative_error", eps, 0.0, 0};
        RatioReport shift{"stencil_shift", eps, 0.0, 0};

        for (int trial = 0; trial < p.trials; ++trial) {
            const double slope = (trial % 2 == 0) ? 1.0 : 2.0;
            SpectralField u = random_field(p.N, p.seed + 101 * trial, slope);

            const double n_alpha = hoelder_norm(u, p.alpha, dp);
            const double n_ad = hoelder_norm(u, p.alpha + p.delta, dp);
            const double n_a1 = hoelder_norm(u, p.alpha + 1.0, dp);
            const double n_a1e = hoelder_norm(u, p.alpha + 1.0 + p.eta, dp);

            for (double t : p.t_grid) {
                SpectralField pt = apply_semigroup(u, t, eps, ms);
                const double r = std::pow(t, p.delta / 2.0) *
                                 hoelder_norm(pt, p.alpha + p.delta - p.kappa, dp) / n_alpha;
                smoothing.sup_ratio = std::max(smoothing.sup_ratio, r);
                ++smoothing.samples;
            }
            for (std::size_t a = 0; a + 1 < p.t_grid.size(); ++a)
                for (std::size_t b = a + 1; b < p.t_grid.size(); ++b) {
                    const double s = p.t_grid[a], t = p.t_grid[b];
                    SpectralField d = apply_semigroup(u, t, eps, ms);
                    d -= apply_semigroup(u, s, eps, ms);
                    const double r = hoelder_norm(d, p.alpha - p.kappa, dp) /
                                     (std::pow(t - s, p.delta / 2.0) * n_ad);
                    time_holder.sup_ratio = std::max(time_holder.sup_ratio, r);
                    ++time_holder.samples;
                }
            {
                SpectralField d = apply_Deps(u, 0, eps, ms);
                const double r = hoelder_norm(d, p.alpha - p.kappa, dp) / n_a1;
                deriv.sup_ratio = std::max(deriv.sup_ratio, r);
                ++deriv.samples;
            }
            {
                SpectralField d = apply_Deps(u, 0, eps, ms);
                d -= apply_Deps(u, 0, eps, cont);
                const double r = hoelder_norm(d, p.alpha - p.kappa, dp) /
                                 (std::pow(eps, p.eta) * n_a1e);
                deriv_err.sup_ratio = std::max(deriv_err.sup_ratio, r);
                ++deriv_err.samples;
            }
            {
                SpectralField d = apply_stencil_shift(u, 0, eps, ms);
                const double r = hoelder_norm(d, p.alpha + 1.0 - p.beta0 - p.kappa, dp) /
                                 (std::pow(eps, p.beta0) * n_a1);
                shift.sup_ratio = std::max(shift.sup_ratio, r);
                ++shift.samples;
            }
        }
        out.push_back(smoothing);
        out.push_back(time_holder);
        out.push_back(deriv);
        out.push_back(deriv_err);
        out.push_back(shift);
    }
    return out;
}

}  // namespace nslab
