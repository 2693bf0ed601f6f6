#include "nslab/besov.hpp"

#include <cmath>

#include "nslab/spectral_ops.hpp"

namespace nslab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double block_lp(const SpectralField& blk, int comp, double p, int M) {
    if (std::isinf(p)) {
        return to_physical(blk.component(comp), M).max_abs();
    }
    if (p == 2.0) {
        double s = 0.0;
        blk.box().for_each([&](const Wavevector& k) { s += std::norm(blk.at(comp, k)); });
        return std::sqrt(s);
    }
    GridField g = to_physical(blk.component(comp), M);
    const double cell = std::pow(kTwoPi / M, 3.0);
    double s = 0.0;
    for (double v : g.values) s += cell * std::pow(std::abs(v), p);
    return std::pow(s, 1.0 / p);
}

}  // namespace

double besov_norm(const SpectralField& u, const BesovIndex& idx, const DyadicPartition& dp) {
    if (idx.p < 1.0 || idx.q < 1.0) throw std::invalid_argument("besov_norm: p,q must be in [1,inf]");
    const int M = product_grid_size(u.N());
    std::vector<double> acc(u.components(), 0.0);
    for (int j = -1; j <= dp.j_max(); ++j) {
        SpectralField blk = lp_block(u, j, dp);
        for (int comp = 0; comp < u.components(); ++comp) {
            const double lp = block_lp(blk, comp, idx.p, M);
            const double term = std::pow(2.0, j * idx.alpha) * lp;
            if (std::isinf(idx.q))
                acc[comp] = std::max(acc[comp], term);
            else
                acc[comp] += std::pow(term, idx.q);
        }
    }
    double total = 0.0;
    for (double a : acc) total += std::isinf(idx.q) ? a : std::pow(a, 1.0 / idx.q);
    return total;
}

double hoelder_norm(const SpectralField& u, double alpha, const DyadicPartition& dp) {
    return besov_norm(u, BesovIndex::hoelder(alpha), dp);
}

BonyDecomposition bony(const SpectralField& f, const SpectralField& g, const DyadicPartition& dp) {
    if (f.role() != FieldRole::scalar || g.role() != FieldRole::scalar)
        throw std::invalid_argument("bony: scalar fields required");
    if (f.N() != g.N()) throw std::invalid_argument("bony: truncation mismatch");
    const int N = f.N();
    const int M = product_grid_size(N);
    const int B = dp.j_max() + 2;  // blocks -1 .. j_max

    std::vector<GridField> fb(B), gb(B);
    for (int j = -1; j <= dp.j_max(); ++j) {
        fb[j + 1] = to_physical(lp_block(f, j, dp), M);
        gb[j + 1] = to_physical(lp_block(g, j, dp), M);
    }

    const std::size_t n = fb[0].points();
    GridField lo_hi(FieldRole::scalar, M), res(FieldRole::scalar, M), hi_lo(FieldRole::scalar, M);
    std::vector<double> fsum(n, 0.0), gsum(n, 0.0);  // S_{j-1} partial sums

    for (int j = -1; j <= dp.j_max(); ++j) {
        const double* fj = fb[j + 1].values.data();
        const double* gj = gb[j + 1].values.data();
        // Bring the partial sums up to S_{j-1} = sum of blocks <= j-2.
        if (j - 2 >= -1) {
            const double* fprev = fb[j - 1].values.data();
            const double* gprev = gb[j - 1].values.data();
            for (std::size_t i = 0; i < n; ++i) {
                fsum[i] += fprev[i];
                gsum[i] += gprev[i];
            }
        }
        // pi_<: low part of f (blocks <= j-2) against Delta_j g, mirrored for pi_>.
        for (std::size_t i = 0; i < n; ++i) {
            lo_hi.values[i] += fsum[i] * gj[i];
            hi_lo.values[i] += gsum[i] * fj[i];
        }
        // pi_0: neighbour pairs.
        for (int i = std::max(-1, j - 1); i <= std::min(dp.j_max(), j + 1); ++i) {
            const double* fi = fb[i + 1].values.data();
            for (std::size_t m = 0; m < n; ++m) res.values[m] += fi[m] * gj[m];
        }
    }

    BonyDecomposition out{
        to_spectral_keep_mean(lo_hi, N, FieldRole::scalar),
        to_spectral_keep_mean(res, N, FieldRole::scalar),
        to_spectral_keep_mean(hi_lo, N, FieldRole::scalar),
    };
    return out;
}

SpectralField pi0(const SpectralField& f, const SpectralField& g, const DyadicPartition& dp) {
    return bony(f, g, dp).resonant;
}

SpectralField pi_less(const SpectralField& f, const SpectralField& g, const DyadicPartition& dp) {
    return bony(f, g, dp).lo_hi;
}

SpectralField commutator_C(const SpectralField& f, const SpectralField& g, const SpectralField& h,
                           const DyadicPartition& dp) {
    SpectralField first = pi0(pi_less(f, g, dp), h, dp);
    SpectralField second = dealiased_product(f, pi0(g, h, dp));
    return first - second;
}

SpectralField apply_leray_entry(const SpectralField& u, int row, int col) {
    SpectralField out = u;
    u.box().for_each([&](const Wavevector& k) {
        if (k.is_zero()) return;
        const double m = (row == col ? 1.0 : 0.0) - double(k[row]) * double(k[col]) / k.norm2();
        for (int c = 0; c < u.components(); ++c) out.at(c, k) = m * u.at(c, k);
    });
    return out;
}

SpectralField leray_commutator(const SpectralField& u, const SpectralField& v, int row, int col,
                               const DyadicPartition& dp) {
    SpectralField a = apply_leray_entry(pi_less(u, v, dp), row, col);
    SpectralField b = pi_less(u, apply_leray_entry(v, row, col), dp);
    return a - b;
}

}  // namespace nslab
