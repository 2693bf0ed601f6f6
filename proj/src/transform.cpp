#include "nslab/transform.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace nslab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
const double kBasisNorm = std::pow(kTwoPi, -1.5);  // (2*pi)^{-3/2}

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

// Per-thread FFTW workspace for one grid size: c2r (spectral -> grid) and
// r2c (grid -> spectral) plans with their half-complex buffer.
struct PlanSet {
    int M = 0;
    fftw_complex* half = nullptr;  // M*M*(M/2+1)
    double* real = nullptr;        // M^3
    fftw_plan c2r = nullptr;
    fftw_plan r2c = nullptr;

    explicit PlanSet(int M_) : M(M_) {
        const std::size_t nh = std::size_t(M) * M * (M / 2 + 1);
        const std::size_t nr = std::size_t(M) * M * M;
        half = fftw_alloc_complex(nh);
        real = fftw_alloc_real(nr);
        // Measured plans pay off on the large product grids; small grids are
        // fine with the estimator and keep test startup snappy.
        const unsigned flags = M >= 48 ? FFTW_MEASURE : FFTW_ESTIMATE;
        std::lock_guard<std::mutex> lock(planner_mutex());
        c2r = fftw_plan_dft_c2r_3d(M, M, M, half, real, flags);
        r2c = fftw_plan_dft_r2c_3d(M, M, M, real, half, flags);
    }
    ~PlanSet() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(c2r);
        fftw_destroy_plan(r2c);
        fftw_free(half);
        fftw_free(real);
    }
    PlanSet(const PlanSet&) = delete;
    PlanSet& operator=(const PlanSet&) = delete;
};

PlanSet& plans_for(int M) {
    thread_local std::map<int, std::unique_ptr<PlanSet>> cache;
    auto& slot = cache[M];
    if (!slot) slot = std::make_unique<PlanSet>(M);
    return *slot;
}

inline int wrap(int k, int M) { return k >= 0 ? k : k + M; }

// Scatter the Hermitian coefficients of one component into the r2c layout
// (only k3 >= 0 is stored; the k3 = 0 plane is Hermitian by field invariant).
void scatter_half(const SpectralField& u, int comp, PlanSet& p) {
    const int M = p.M;
    const int H = M / 2 + 1;
    const std::size_t nh = std::size_t(M) * M * H;
    for (std::size_t i = 0; i < nh; ++i) {
        p.half[i][0] = 0.0;
        p.half[i][1] = 0.0;
    }
    const int N = u.N();
    for (int a = -N; a <= N; ++a)
        for (int b = -N; b <= N; ++b)
            for (int c = 0; c <= N; ++c) {
                const cplx v = u.at(comp, {a, b, c});
                const std::size_t idx = (std::size_t(wrap(a, M)) * M + wrap(b, M)) * H + c;
                p.half[idx][0] = v.real();
                p.half[idx][1] = v.imag();
            }
}

}  // namespace

int smooth_grid_size(int n) {
    auto smooth = [](int m) {
        for (int f : {2, 3, 5, 7, 11, 13})
            while (m % f == 0) m /= f;
        return m == 1;
    };
    int m = std::max(n, 1);
    while (!smooth(m)) ++m;
    return m;
}

GridField to_physical(const SpectralField& u, int M) {
    if (M < 2 * u.N() + 1) throw std::invalid_argument("to_physical: grid size M < 2N+1");
    PlanSet& p = plans_for(M);
    GridField g(u.role(), M);
    const std::size_t nr = g.points();
    for (int comp = 0; comp < u.components(); ++comp) {
        scatter_half(u, comp, p);
        fftw_execute(p.c2r);
        double* out = g.data(comp);
        for (std::size_t i = 0; i < nr; ++i) out[i] = kBasisNorm * p.real[i];
    }
    return g;
}

static SpectralField from_grid(const GridField& g, int N, FieldRole role, bool keep_mean,
                               double* discarded_mean) {
    if (g.M < 2 * N + 1) throw std::invalid_argument("to_spectral: grid size M < 2N+1");
    if ((role == FieldRole::vector3) != (g.role == FieldRole::vector3))
        throw std::invalid_argument("to_spectral: role mismatch");
    PlanSet& p = plans_for(g.M);
    const int M = g.M;
    const int H = M / 2 + 1;
    SpectralField u(role, N);
    const double scale = 1.0 / (kBasisNorm * g.points());
    double mean_worst = 0.0;
    for (int comp = 0; comp < u.components(); ++comp) {
        const double* in = g.data(comp);
        std::copy(in, in + g.points(), p.real);
        fftw_execute(p.r2c);
        for (int a = -N; a <= N; ++a)
            for (int b = -N; b <= N; ++b)
                for (int c = -N; c <= N; ++c) {
                    cplx v;
                    if (c >= 0) {
                        const std::size_t idx = (std::size_t(wrap(a, M)) * M + wrap(b, M)) * H + c;
                        v = cplx(p.half[idx][0], p.half[idx][1]);
                    } else {
                        const std::size_t idx = (std::size_t(wrap(-a, M)) * M + wrap(-b, M)) * H - c;
                        v = std::conj(cplx(p.half[idx][0], p.half[idx][1]));
                    }
                    u.at(comp, {a, b, c}) = scale * v;
                }
        mean_worst = std::max(mean_worst, std::abs(u.at(comp, {0, 0, 0})));
    }
    if (!keep_mean) {
        if (discarded_mean) *discarded_mean = mean_worst;
        u.clamp_zero_mode();
    }
    return u;
}

SpectralField to_spectral(const GridField& g, int N, FieldRole role, double* discarded_mean) {
    return from_grid(g, N, role, /*keep_mean=*/false, discarded_mean);
}

SpectralField to_spectral_keep_mean(const GridField& g, int N, FieldRole role) {
    return from_grid(g, N, role, /*keep_mean=*/true, nullptr);
}

}  // namespace nslab
